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

#include "prvo/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "prvo/error.h"
#include "prvo/rng.h"
#include "prvo/rvo.h"

namespace prvo {
namespace {

std::size_t block_count(std::size_t n) { return (n + kSampleBlock - 1) / kSampleBlock; }

// Runs body(block, begin, end, engine) over every block of [0, n).
template <typename Body>
void for_each_block(std::size_t n, std::uint64_t seed, Execution exec, Body&& body) {
  const auto blocks = static_cast<std::int64_t>(block_count(n));
  auto run = [&](std::int64_t b) {
    Engine engine = make_engine(seed, {static_cast<std::uint64_t>(b)});
    const std::size_t begin = static_cast<std::size_t>(b) * kSampleBlock;
    const std::size_t end = std::min(n, begin + kSampleBlock);
    body(static_cast<std::size_t>(b), begin, end, engine);
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) run(b);
  } else {
    for (std::int64_t b = 0; b < blocks; ++b) run(b);
  }
}

struct Sampler {
  explicit Sampler(const Gaussian2& g) : mean(g.mean), root(sqrt_psd(g.cov)) {}
  Vec2 operator()(Engine& engine, std::normal_distribution<double>& normal) const {
    const double z0 = normal(engine);
    const double z1 = normal(engine);
    return mean + root.apply({z0, z1});
  }
  Vec2 mean;
  Cov2 root;
};

struct JointSampler {
  explicit JointSampler(const UncertainPair& u)
      : pi(u.pi), pj(u.pj), vi(u.vi), vj(u.vj), act(Gaussian2{{}, u.actuation_cov}) {}
  JointDraw operator()(Engine& engine, std::normal_distribution<double>& normal) const {
    JointDraw d;
    d.pi = pi(engine, normal);
    d.pj = pj(engine, normal);
    d.vi = vi(engine, normal);
    d.vj = vj(engine, normal);
    d.actuation = act(engine, normal);
    return d;
  }
  Sampler pi, pj, vi, vj, act;
};

double F_of_draw(const JointDraw& d, const Vec2& commanded, double R) {
  const Vec2 w = reciprocal_velocity(commanded + d.actuation, d.vi, d.vj);
  return F_rvo_poly(d.pj - d.pi, w, R);
}

}  // namespace

std::vector<Vec2> sample_gaussian2(const Gaussian2& g, std::uint64_t seed, std::size_t n,
                                   Execution exec) {
  std::vector<Vec2> out(n);
  const Sampler sampler(g);
  for_each_block(n, seed, exec, [&](std::size_t, std::size_t begin, std::size_t end, Engine& e) {
    std::normal_distribution<double> normal;
    for (std::size_t i = begin; i < end; ++i) out[i] = sampler(e, normal);
  });
  return out;
}

SampleBatch draw_batch(const UncertainPair& u, std::size_t n, std::uint64_t seed, Execution exec) {
  SampleBatch batch{seed, n, std::vector<JointDraw>(n)};
  const JointSampler sampler(u);
  for_each_block(n, seed, exec, [&](std::size_t, std::size_t begin, std::size_t end, Engine& e) {
    std::normal_distribution<double> normal;
    for (std::size_t i = begin; i < end; ++i) batch.draws[i] = sampler(e, normal);
  });
  return batch;
}

double EtaEstimate::standard_error() const {
  if (n == 0) return 0.0;
  return std::sqrt(eta * (1.0 - eta) / static_cast<double>(n));
}

EtaEstimate empirical_eta(const UncertainPair& u, const Vec2& commanded, std::size_t n,
                          std::uint64_t seed, Execution exec) {
  if (n == 0) throw Error("empirical_eta needs at least one sample");
  std::vector<std::size_t> satisfied(block_count(n), 0);
  std::vector<std::size_t> degenerate(block_count(n), 0);
  const JointSampler sampler(u);
  for_each_block(n, seed, exec, [&](std::size_t b, std::size_t begin, std::size_t end, Engine& e) {
    std::normal_distribution<double> normal;
    for (std::size_t i = begin; i < end; ++i) {
      const JointDraw d = sampler(e, normal);
      const Vec2 w = reciprocal_velocity(commanded + d.actuation, d.vi, d.vj);
      if (norm(w) <= 1e-9) ++degenerate[b];
      if (F_rvo_poly(d.pj - d.pi, w, u.R) > 0.0) ++satisfied[b];
    }
  });
  EtaEstimate out;
  out.n = n;
  for (std::size_t b = 0; b < satisfied.size(); ++b) {
    out.satisfied += satisfied[b];
    out.degenerate += degenerate[b];
  }
  out.eta = static_cast<double>(out.satisfied) / static_cast<double>(n);
  return out;
}

McMoments mc_moments(const UncertainPair& u, const Vec2& commanded, std::size_t n,
                     std::uint64_t seed, Execution exec) {
  if (n < 100) throw Error("mc_moments needs at least 100 samples");
  std::vector<double> values(n);
  const JointSampler sampler(u);
  for_each_block(n, seed, exec, [&](std::size_t, std::size_t begin, std::size_t end, Engine& e) {
    std::normal_distribution<double> normal;
    for (std::size_t i = begin; i < end; ++i) values[i] = F_of_draw(sampler(e, normal), commanded, u.R);
  });

  // Shift by the first value so constant data gives exactly zero spread.
  const double shift = values.front();
  const double count = static_cast<double>(n);
  double sum = 0.0;
  for (double v : values) sum += v - shift;
  const double mean_shifted = sum / count;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : values) {
    const double d = (v - shift) - mean_shifted;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  McMoments out;
  out.mean = shift + mean_shifted;
  out.var = m2 / (count - 1.0);
  out.stderr_mean = std::sqrt(out.var / count);
  const double fourth = m4 / count;
  const double var_of_var = (fourth - out.var * out.var * (count - 3.0) / (count - 1.0)) / count;
  out.stderr_var = std::sqrt(std::max(0.0, var_of_var));
  return out;
}

}  // namespace prvo
