// Copyright 2026 The PRVO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRVO_RNG_H_
#define PRVO_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace prvo {

using Engine = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the substream addressed by `keys` under `seed`. Streams for
// different key tuples are independent and do not depend on the order in
// which they are requested, so parallel consumers see the same numbers as
// serial ones.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline Engine make_engine(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  return Engine(substream_seed(seed, keys));
}

// Purposes used as the last key of simulator substreams.
enum class StreamPurpose : std::uint64_t {
  kCandidates = 1,
  kPerceptionPosition = 2,
  kPerceptionVelocity = 3,
  kActuation = 4,
  kValidation = 5,
};

}  // namespace prvo

#endif  // PRVO_RNG_H_
