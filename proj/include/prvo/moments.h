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

#ifndef PRVO_MOMENTS_H_
#define PRVO_MOMENTS_H_

#include "prvo/geometry.h"
#include "prvo/poly.h"

namespace prvo {

// Beliefs robot i holds about the pair (i, j). The five random inputs
// (both positions, both current velocities, and i's actuation noise) are
// mutually independent.
struct UncertainPair {
  Gaussian2 pi;
  Gaussian2 pj;
  Gaussian2 vi;
  Gaussian2 vj;
  // Executed velocity = commanded + N(0, actuation_cov).
  Cov2 actuation_cov;
  // Combined radius R_i + R_j.
  double R = 0.0;

  // Copy with the actuation noise removed (planner that ignores its own
  // motion uncertainty).
  UncertainPair without_actuation() const;
};

// Distribution of r = p_j - p_i.
Gaussian2 relative_position(const UncertainPair& u);
// Distribution of w = 2 (commanded + eps) - v_i - v_j.
Gaussian2 reciprocal_velocity(const UncertainPair& u, const Vec2& commanded);

struct FMoments {
  double mean = 0.0;
  double var = 0.0;
};

// Exact E[F] and Var[F] of the polynomial RVO constraint
// F = (r x w)^2 - R^2 |w|^2 under the Gaussian beliefs in `u`, with i
// commanding `commanded`.
//
// r and w are independent 2D Gaussians, so F is a quartic polynomial in four
// independent standard normals z after writing r = m_r + S_r z[0:2] and
// w = m_w + S_w z[2:4] with S the symmetric square roots of the covariances.
// Expanding F (and (F - E[F])^2) into monomials and applying
// E[z^n] = (n-1)!! for even n gives both moments with no approximation.
FMoments moments_of_F(const UncertainPair& u, const Vec2& commanded);

// Mean and variance of F along the time-scaled path commanded = s * dir:
//   mu(s)  = a s^2 + b s + c
//   var(s) = d s^4 + e s^3 + f s^2 + g s + h
struct ScaledPolys {
  Poly mu;
  Poly var;

  double mean(double s) const { return mu(s); }
  // Clamped at zero; tiny negative interpolated variance is round-off.
  double variance(double s) const;
  double sigma(double s) const;
};

// Recovers the coefficients of mu and var exactly by interpolating
// moments_of_F at s in {-2, -1, 0, 1, 2}. A held-out node at s = 3 guards
// the degree assumption; a mismatch throws
// prvo::Error("degree assumption violated").
ScaledPolys scaled_polys(const UncertainPair& u, const Vec2& candidate_dir);

}  // namespace prvo

#endif  // PRVO_MOMENTS_H_
