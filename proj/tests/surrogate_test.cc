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
#include <vector>

#include <gtest/gtest.h>

#include "prvo/error.h"
#include "prvo/moments.h"
#include "prvo/montecarlo.h"
#include "prvo/poly.h"
#include "prvo/surrogate.h"
#include "random_instances.h"

namespace prvo {
namespace {

using testing::random_pair;
using testing::random_unit;
using testing::uniform;

ScaledPolys polys(Poly mu, Poly var) { return {std::move(mu), std::move(var)}; }

struct RandomProblem {
  UncertainPair pair;
  Vec2 dir;
  SurrogateProblem problem;
};

RandomProblem random_problem(std::mt19937_64& rng, double k) {
  const UncertainPair u = random_pair(rng);
  const Vec2 dir = random_unit(rng) * uniform(rng, 0.5, 1.5);
  return {u, dir, make_problem(scaled_polys(u, dir), k, {0.0, 2.0})};
}

bool near_endpoint(const IntervalSet& set, double s, double tol) {
  for (const Interval& in : set) {
    if (std::abs(in.lo - s) < tol || std::abs(in.hi - s) < tol) return true;
  }
  return false;
}

TEST(Cantelli, Examples) {
  EXPECT_EQ(cantelli_eta(1.0), 0.5);
  EXPECT_EQ(cantelli_eta(0.0), 0.0);
  EXPECT_NEAR(cantelli_eta(1.5), 2.25 / 3.25, 1e-15);
  EXPECT_EQ(cantelli_k(0.5), 1.0);
  EXPECT_EQ(cantelli_k(0.0), 0.0);
  EXPECT_NEAR(cantelli_k(0.8), 2.0, 1e-15);
  EXPECT_THROW(cantelli_k(1.0), Error);
  EXPECT_THROW(cantelli_eta(-1.0), Error);
}

TEST(Cantelli, RoundTrips) {
  for (double eta = 0.0; eta < 0.999; eta += 0.001) {
    EXPECT_NEAR(cantelli_eta(cantelli_k(eta)), eta, 1e-12);
  }
}

TEST(ChooseSStar, Examples) {
  EXPECT_DOUBLE_EQ(choose_s_star(polys({1, 0, -1}, {}), {0, 5}), 0.5);
  EXPECT_DOUBLE_EQ(choose_s_star(polys({0, 0, -4}, {}), {0, 5}), 0.0);
  EXPECT_NEAR(choose_s_star(polys(Poly{-2, 3, -1}, {}), {0, 5}), 1.5, 1e-12);
  // Unbounded feasible interval: lo + 1.
  EXPECT_NEAR(choose_s_star(polys(Poly{-1, 0, 1}, {}), {0, kInf}), 2.0, 1e-12);
  // Infeasible with an interior maximum.
  EXPECT_NEAR(choose_s_star(polys(Poly{-5, 4, -1}, {}), {0, 5}), 2.0, 1e-12);
}

TEST(SolveTaylor, DeterministicReducesToMean) {
  SurrogateProblem p{polys({1, 0, -1}, {}), 7.0, {0, 5}, 0.0};
  p.s_star = choose_s_star(p.polys, p.domain);
  EXPECT_EQ(solve_taylor(p), (IntervalSet{{0, 1}}));
  EXPECT_EQ(solve_taylor_fixed(p), (IntervalSet{{0, 1}}));
  EXPECT_EQ(solve_exact(p), (IntervalSet{{0, 1}}));
}

TEST(SolveTaylor, ZeroKIsMeanConstraint) {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 100; ++trial) {
    const SurrogateProblem p = random_problem(rng, 0.0).problem;
    const IntervalSet mean_only = poly_geq_zero(p.polys.mu, p.domain);
    EXPECT_EQ(solve_taylor(p), mean_only);
    EXPECT_EQ(solve_taylor_fixed(p), mean_only);
  }
}

TEST(SolveTaylor, ExpansionMatchesSigmaAtSStar) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const SurrogateProblem p = random_problem(rng, uniform(rng, 0.1, 3.0)).problem;
    const TaylorQuadratic q = taylor_quadratic(p);
    const double s = q.s_star;
    const double want = p.polys.mean(s) - p.k * p.polys.sigma(s);
    EXPECT_NEAR(q(s), want, 1e-9 * (1 + std::abs(want)));
  }
}

TEST(SolveTaylor, VanishingVarianceShiftsThenThrows) {
  // var = s^2 vanishes at s* = 0 only; one shift recovers.
  SurrogateProblem p{polys({1}, {0, 0, 1}), 1.0, {0, 5}, 0.0};
  EXPECT_NEAR(taylor_quadratic(p).s_star, 0.1, 1e-12);
  // var = (s - 5)^4 is ~0 on a 1 wide window around 5; the shifts run out.
  const Poly v = Poly{-5, 1} * Poly{-5, 1} * Poly{-5, 1} * Poly{-5, 1} * 1e-30;
  SurrogateProblem stuck{polys({1}, v), 1.0, {0, 10}, 4.5};
  EXPECT_THROW(solve_taylor_fixed(stuck), Error);
}

TEST(SolveTaylor, FixedExpansionIsMonotoneInK) {
  // The Taylor model of sigma can dip below zero far from s*, where a larger
  // k loosens the constraint; inclusion is checked where the model is >= 0.
  std::mt19937_64 rng(32);
  const double ks[] = {0.0, 0.5, 1.0, 1.5, 2.0};
  for (int trial = 0; trial < 200; ++trial) {
    SurrogateProblem p = random_problem(rng, 1.0).problem;
    p.k = 1.0;
    const TaylorQuadratic unit = taylor_quadratic(p);  // mu - 1 * model
    IntervalSet prev;
    for (int i = 0; i < 5; ++i) {
      p.k = ks[i];
      p.s_star = unit.s_star;
      const IntervalSet cur = solve_taylor_fixed(p);
      if (i > 0) {
        for (int g = 0; g <= 400; ++g) {
          const double s = 2.0 * g / 400;
          const double model = p.polys.mean(s) - unit(s);
          if (model < 0 || near_endpoint(cur, s, 1e-9) || near_endpoint(prev, s, 1e-9)) continue;
          if (cur.contains(s)) {
            EXPECT_TRUE(prev.contains(s)) << "k=" << ks[i] << " s=" << s;
          }
        }
      }
      prev = cur;
    }
  }
}

TEST(SolveExact, ConstantCase) {
  const SurrogateProblem ok{polys({2}, {1}), 2.0, {0, 3}, 1.5};
  EXPECT_EQ(solve_exact(ok), (IntervalSet{{0, 3}}));
  const SurrogateProblem bad{polys({2}, {1}), 2.5, {0, 3}, 1.5};
  EXPECT_TRUE(solve_exact(bad).empty());
}

TEST(SolveExact, AgreesWithGrid) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const SurrogateProblem p = random_problem(rng, uniform(rng, 0.2, 2.5)).problem;
    const IntervalSet set = solve_exact(p);
    const int n = 100000;
    for (int i = 0; i <= n; ++i) {
      const double s = p.domain.lo + p.domain.width() * i / n;
      if (near_endpoint(set, s, 1e-5)) continue;
      const bool want = p.polys.mean(s) - p.k * p.polys.sigma(s) >= 0;
      ASSERT_EQ(set.contains(s), want) << "trial " << trial << " s=" << s;
    }
  }
}

TEST(SolveExact, NestedInK) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    SurrogateProblem p = random_problem(rng, 0.0).problem;
    IntervalSet prev = solve_exact(p);
    for (double k : {0.5, 1.0, 1.5, 2.0}) {
      p.k = k;
      const IntervalSet cur = solve_exact(p);
      EXPECT_TRUE(cur.is_subset_of(prev)) << cur << " vs " << prev;
      prev = cur;
    }
  }
}

TEST(SolveTaylor, PiecewiseTracksExact) {
  std::mt19937_64 rng(35);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const SurrogateProblem p = random_problem(rng, uniform(rng, 0.5, 2.0)).problem;
    const IntervalSet exact = solve_exact(p);
    const IntervalSet taylor = solve_taylor(p);
    if (exact.without_slivers(0.1).size() != exact.size()) continue;
    ASSERT_EQ(taylor.size(), exact.size()) << taylor << " vs " << exact;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      worst = std::max(worst, std::abs(taylor[i].lo - exact[i].lo));
      worst = std::max(worst, std::abs(taylor[i].hi - exact[i].hi));
    }
  }
  EXPECT_LT(worst, 5e-3);
}

TEST(SolveTaylor, DeterministicLimitMatchesExact) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const UncertainPair u = testing::deterministic(random_pair(rng));
    const Vec2 dir = random_unit(rng);
    const SurrogateProblem p = make_problem(scaled_polys(u, dir), uniform(rng, 0, 3), {0, 2});
    EXPECT_EQ(solve_taylor(p), solve_exact(p));
  }
}

TEST(FeasibleScales, IntersectsPairs) {
  SurrogateProblem p1{polys(Poly{0, 2, -1}, {}), 1.0, {0, 3}, 1.0};  // [0, 2]
  SurrogateProblem p2{polys(Poly{-3, 4, -1}, {}), 1.0, {0, 3}, 2.0};  // [1, 3]
  const std::vector<SurrogateProblem> one{p1};
  EXPECT_EQ(feasible_scales(one), solve_taylor(p1));
  const std::vector<SurrogateProblem> two{p1, p2};
  const IntervalSet both = feasible_scales(two);
  ASSERT_EQ(both.size(), 1u);
  EXPECT_NEAR(both[0].lo, 1.0, 1e-12);
  EXPECT_NEAR(both[0].hi, 2.0, 1e-12);
  EXPECT_THROW(feasible_scales(std::span<const SurrogateProblem>{}), Error);
}

TEST(SolveExact, CantelliSoundness) {
  std::mt19937_64 rng(37);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 40; ++trial) {
    const double k = uniform(rng, 0.5, 2.0);
    const RandomProblem rp = random_problem(rng, k);
    const IntervalSet set = solve_exact(rp.problem);
    if (set.empty()) continue;
    const Interval& in = set[std::uniform_int_distribution<std::size_t>(0, set.size() - 1)(rng)];
    const double s = std::min(in.lo + uniform(rng, 0, 1) * in.width(), rp.problem.domain.hi);
    const EtaEstimate est = empirical_eta(rp.pair, rp.dir * s, 10000, 500 + trial);
    EXPECT_GE(est.eta, cantelli_eta(k) - 0.02) << "k=" << k << " s=" << s;
    ++checked;
  }
  EXPECT_GE(checked, 40);
}

}  // namespace
}  // namespace prvo
