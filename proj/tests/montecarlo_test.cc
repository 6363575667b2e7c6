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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "prvo/error.h"
#include "prvo/moments.h"
#include "prvo/montecarlo.h"
#include "prvo/rvo.h"
#include "random_instances.h"

namespace prvo {
namespace {

UncertainPair crossing() {
  UncertainPair u;
  u.pi = {{0, 0}, Cov2::iso(0.05)};
  u.pj = {{6, 1}, {0.04, 0.01, 0.02}};
  u.vi = {{1, 0}, Cov2::iso(0.01)};
  u.vj = {{-0.5, 0.2}, Cov2::iso(0.02)};
  u.actuation_cov = Cov2::iso(0.03);
  u.R = 1.0;
  return u;
}

TEST(SampleGaussian2, ZeroCovarianceRepeatsMean) {
  for (const Vec2& d : sample_gaussian2(Gaussian2::point({1.5, -2}), 1, 100)) {
    EXPECT_EQ(d, (Vec2{1.5, -2}));
  }
}

TEST(SampleGaussian2, MatchesMomentsAndCorrelation) {
  const std::size_t n = 100000;
  const std::vector<Vec2> diag = sample_gaussian2({{1, 2}, Cov2::diag(1, 4)}, 2, n);
  double mx = 0, my = 0;
  for (const Vec2& d : diag) {
    mx += d.x;
    my += d.y;
  }
  mx /= n;
  my /= n;
  double vx = 0, vy = 0;
  for (const Vec2& d : diag) {
    vx += (d.x - mx) * (d.x - mx);
    vy += (d.y - my) * (d.y - my);
  }
  vx /= n - 1;
  vy /= n - 1;
  EXPECT_NEAR(mx, 1.0, 4.0 * 2.0 / std::sqrt(n));
  EXPECT_NEAR(my, 2.0, 4.0 * 2.0 / std::sqrt(n));
  EXPECT_NEAR(vx, 1.0, 0.05);
  EXPECT_NEAR(vy, 4.0, 0.2);

  const std::vector<Vec2> corr = sample_gaussian2({{0, 0}, {1, 0.5, 1}}, 3, n);
  double sxy = 0, sxx = 0, syy = 0;
  for (const Vec2& d : corr) {
    sxy += d.x * d.y;
    sxx += d.x * d.x;
    syy += d.y * d.y;
  }
  EXPECT_NEAR(sxy / std::sqrt(sxx * syy), 0.5, 0.02);
}

TEST(SampleGaussian2, SerialAndParallelAreBitIdentical) {
  const Gaussian2 g{{0.3, -1}, {0.5, 0.2, 0.7}};
  for (std::size_t n : {1u, 1023u, 1024u, 5000u}) {
    EXPECT_EQ(sample_gaussian2(g, 77, n, Execution::kSerial),
              sample_gaussian2(g, 77, n, Execution::kParallel));
  }
}

TEST(DrawBatch, ReproducibleAndSeedSensitive) {
  const UncertainPair u = crossing();
  const SampleBatch a = draw_batch(u, 3000, 5);
  const SampleBatch b = draw_batch(u, 3000, 5, Execution::kSerial);
  const SampleBatch c = draw_batch(u, 3000, 6);
  ASSERT_EQ(a.draws.size(), 3000u);
  bool same = true;
  bool differs = false;
  for (std::size_t i = 0; i < a.draws.size(); ++i) {
    same &= a.draws[i].pi == b.draws[i].pi && a.draws[i].actuation == b.draws[i].actuation;
    differs |= !(a.draws[i].pi == c.draws[i].pi);
  }
  EXPECT_TRUE(same);
  EXPECT_TRUE(differs);
}

TEST(EmpiricalEta, DeterministicExtremes) {
  const UncertainPair u = testing::deterministic(crossing());
  // Straight down: perpendicular escape.
  EXPECT_EQ(empirical_eta(u, {0, -1}, 1000, 1).eta, 1.0);
  // Aim at j so the relative motion passes through its center.
  const Vec2 r = u.pj.mean - u.pi.mean;
  const Vec2 cmd = (r * 0.2 + u.vi.mean + u.vj.mean) * 0.5;
  EXPECT_EQ(empirical_eta(u, cmd, 1000, 1).eta, 0.0);
}

TEST(EmpiricalEta, SerialAndParallelAgree) {
  const UncertainPair u = crossing();
  const EtaEstimate s = empirical_eta(u, {0.8, 0.3}, 50000, 8, Execution::kSerial);
  const EtaEstimate p = empirical_eta(u, {0.8, 0.3}, 50000, 8, Execution::kParallel);
  EXPECT_EQ(s.satisfied, p.satisfied);
  EXPECT_EQ(s.eta, p.eta);
  EXPECT_LE(s.standard_error(), 0.5 / std::sqrt(50000.0));
  EXPECT_THROW(empirical_eta(u, {1, 0}, 0, 1), Error);
}

TEST(McMoments, ZeroUncertainty) {
  const UncertainPair u = testing::deterministic(crossing());
  const McMoments m = mc_moments(u, {1, 0.5}, 1000, 3);
  const PairGeometry g{u.pj.mean - u.pi.mean, u.R, u.vi.mean, u.vj.mean, {1, 0.5}};
  EXPECT_NEAR(m.mean, F_rvo_poly(g), 1e-9 * (1 + std::abs(m.mean)));
  EXPECT_EQ(m.var, 0.0);
  EXPECT_EQ(m.stderr_mean, 0.0);
  EXPECT_EQ(m.stderr_var, 0.0);
  EXPECT_THROW(mc_moments(u, {1, 0}, 99, 1), Error);
}

TEST(McMoments, ReproducesHandExpandedMean) {
  UncertainPair u;
  u.pi = Gaussian2::point({0, 0});
  u.pj = {{10, 0}, Cov2::iso(0.1)};
  u.vi = Gaussian2::point({1, 0});
  u.vj = Gaussian2::point({-1, 0});
  u.R = 1.0;
  const McMoments m = mc_moments(u, {1, 0}, 100000, 4);
  EXPECT_LE(std::abs(m.mean - (-3.6)), 3 * m.stderr_mean);
}

TEST(McMoments, StandardErrorShrinksWithN) {
  const UncertainPair u = crossing();
  const McMoments a = mc_moments(u, {0.5, 0.5}, 50000, 10);
  const McMoments b = mc_moments(u, {0.5, 0.5}, 100000, 11);
  EXPECT_NEAR(b.stderr_mean / a.stderr_mean, 1.0 / std::sqrt(2.0), 0.1 / std::sqrt(2.0));
}

TEST(McMoments, SerialAndParallelAreBitIdentical) {
  const UncertainPair u = crossing();
  const McMoments s = mc_moments(u, {0.5, 0.1}, 20000, 12, Execution::kSerial);
  const McMoments p = mc_moments(u, {0.5, 0.1}, 20000, 12, Execution::kParallel);
  EXPECT_EQ(s.mean, p.mean);
  EXPECT_EQ(s.var, p.var);
  EXPECT_EQ(s.stderr_mean, p.stderr_mean);
  EXPECT_EQ(s.stderr_var, p.stderr_var);
}

}  // namespace
}  // namespace prvo
