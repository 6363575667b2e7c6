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

#ifndef PRVO_MONTECARLO_H_
#define PRVO_MONTECARLO_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prvo/geometry.h"
#include "prvo/moments.h"

namespace prvo {

// Kernels below come in a serial reference form and an OpenMP form. Both
// split the draws into fixed blocks with one RNG substream per block and
// reduce in block order, so they return bit-identical results.
enum class Execution { kSerial, kParallel };

inline constexpr std::size_t kSampleBlock = 1024;

// n draws mean + S z with S the symmetric square root of cov.
std::vector<Vec2> sample_gaussian2(const Gaussian2& g, std::uint64_t seed, std::size_t n,
                                   Execution exec = Execution::kParallel);

struct JointDraw {
  Vec2 pi;
  Vec2 pj;
  Vec2 vi;
  Vec2 vj;
  Vec2 actuation;  // eps, executed = commanded + eps
};

struct SampleBatch {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::vector<JointDraw> draws;
};

SampleBatch draw_batch(const UncertainPair& u, std::size_t n, std::uint64_t seed,
                       Execution exec = Execution::kParallel);

struct EtaEstimate {
  double eta = 0.0;
  std::size_t satisfied = 0;
  std::size_t n = 0;
  // Draws with |w| <= 1e-9, where the rational RVO form is undefined.
  std::size_t degenerate = 0;

  // Binomial standard error of `eta`.
  double standard_error() const;
};

// Fraction of joint draws with F > 0 (F == 0 counts as a violation).
EtaEstimate empirical_eta(const UncertainPair& u, const Vec2& commanded, std::size_t n,
                          std::uint64_t seed, Execution exec = Execution::kParallel);

struct McMoments {
  double mean = 0.0;
  double var = 0.0;
  double stderr_mean = 0.0;
  // From the fourth central moment: Var(s^2) = (m4 - s^4 (n-3)/(n-1)) / n.
  double stderr_var = 0.0;
};

// Sample moments of F; n >= 100.
McMoments mc_moments(const UncertainPair& u, const Vec2& commanded, std::size_t n,
                     std::uint64_t seed, Execution exec = Execution::kParallel);

}  // namespace prvo

#endif  // PRVO_MONTECARLO_H_
