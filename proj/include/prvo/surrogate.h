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

#ifndef PRVO_SURROGATE_H_
#define PRVO_SURROGATE_H_

#include <span>

#include "prvo/interval_set.h"
#include "prvo/moments.h"

namespace prvo {

// mu(s) - k sigma(s) >= 0 along one candidate path, for one neighbor.
struct SurrogateProblem {
  ScaledPolys polys;
  double k = 0.0;
  Interval domain{0.0, 2.0};
  // Expansion point of the second-order Taylor model of sigma.
  double s_star = 0.0;
};

// Lower bound k^2 / (1 + k^2) on P(F >= 0) whenever mu - k sigma >= 0
// (one-sided Chebyshev inequality).
double cantelli_eta(double k);
// Inverse of cantelli_eta. Throws prvo::Error("unreachable confidence") for
// eta >= 1.
double cantelli_k(double eta);

// Midpoint of the widest interval of {s in domain : mu(s) >= 0}; unbounded
// intervals use lo + 1. Falls back to argmax of mu over the domain when
// mu >= 0 has no solution.
double choose_s_star(const ScaledPolys& polys, const Interval& domain);

// Builds a problem with s_star chosen by choose_s_star.
SurrogateProblem make_problem(const ScaledPolys& polys, double k, const Interval& domain);

// The three coefficients (s^2, s^1, s^0) of the quadratic
//   mu(s) - k (sigma* + sigma*' (s - s*) + sigma*'' (s - s*)^2 / 2).
// Implements the sigma-vanishing retry policy of solve_taylor.
struct TaylorQuadratic {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
  double s_star = 0.0;  // expansion point actually used

  double operator()(double s) const { return (a2 * s + a1) * s + a0; }
};
TaylorQuadratic taylor_quadratic(const SurrogateProblem& problem);

// Solution set of the single Taylor-quadratic surrogate expanded at
// problem.s_star, over problem.domain. sigma(s*) <= 1e-12 with var not
// identically zero shifts s* by +0.1 up to 10 times, then throws
// prvo::Error("variance vanishes along path").
IntervalSet solve_taylor_fixed(const SurrogateProblem& problem);

// Piecewise form of the same surrogate. The domain is cut into short
// pieces (0.125 wide; on an unbounded domain, 4 units of those and then
// doubling pieces), each solved in closed form with its own expansion point
// at the piece midpoint, and the results are united. Pieces whose sigma model
// strays from sigma by more than 0.1% are bisected. A single expansion is
// only accurate near s*, and the feasible boundary is rarely near the
// widest-interval midpoint. k = 0 or var == 0 reduces to mu >= 0.
IntervalSet solve_taylor(const SurrogateProblem& problem);

// Exact solution set of mu - k sigma >= 0 over problem.domain:
// mu >= 0 and mu^2 - k^2 var >= 0, the latter a quartic inequality.
IntervalSet solve_exact(const SurrogateProblem& problem);

// Intersection of solve_taylor over all neighbors; `problems` is nonempty and
// shares one domain.
IntervalSet feasible_scales(std::span<const SurrogateProblem> problems);

}  // namespace prvo

#endif  // PRVO_SURROGATE_H_
