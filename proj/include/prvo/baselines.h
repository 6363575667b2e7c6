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

#ifndef PRVO_BASELINES_H_
#define PRVO_BASELINES_H_

#include "prvo/geometry.h"
#include "prvo/interval_set.h"
#include "prvo/moments.h"

namespace prvo {

// ---------------------------------------------------------------------------
// Radius inflation: a deterministic RVO whose combined radius is grown to a
// confidence contour of the position and velocity uncertainty.

struct InflationConfig {
  // Probability mass inside the inflation contours, in (0, 1).
  double confidence = 0.68;
  // Velocity uncertainty enters as an extra radius rho_vel * horizon.
  double horizon = 1.0;
};

// Radius of the circle centered at the mean that holds `confidence` mass of
// N(0, cov). Zero covariance gives 0.
double confidence_circle_radius(const Cov2& cov, double confidence);

struct InflationResult {
  IntervalSet scales;
  // Mean discs already overlap after inflation; `scales` is empty.
  bool in_collision = false;
  double inflated_radius = 0.0;
};

// {s in domain : F(s) >= 0} at the mean geometry with
// R' = R + rho(pos_i + pos_j) + rho(vel_i + vel_j + actuation) * horizon.
InflationResult inflated_feasible_scales(const UncertainPair& u, const Vec2& candidate_dir,
                                         const InflationConfig& cfg, const Interval& domain);

// ---------------------------------------------------------------------------
// Chance-constrained ORCA.
//
// The ORCA half-plane for robot i is z1 . v - z2 >= 0 with z1 the unit
// normal. Its normal is treated as Gaussian; the covariance comes from a
// first-order (delta-method) propagation of the relative position and
// relative velocity covariances through the ORCA construction. z2 is kept
// at its mean value.

struct OrcaHalfplane {
  Gaussian2 z1;
  double z2 = 0.0;

  // Deterministic ORCA at the mean normal.
  double margin(const Vec2& v) const { return dot(z1.mean, v) - z2; }
};

struct OrcaConfig {
  double time_horizon = 10.0;
};

// Throws prvo::Error("in collision at mean") when the mean discs overlap.
// Symmetric head-on encounters project onto the counterclockwise leg.
OrcaHalfplane orca_halfplane_from_pair(const UncertainPair& u, const OrcaConfig& cfg = {});

// z1 . v - z2 - sqrt(eta) * sqrt(v^T cov(z1) v) >= 0.
//
// The back-off multiplier is sqrt(eta) as printed for the second-order cone
// form, not the Gaussian quantile; the back-off is nonnegative either way,
// so the set only shrinks relative to deterministic ORCA.
bool porca_feasible(const OrcaHalfplane& h, const Vec2& v, double eta);

// {s in domain, s >= 0 : porca_feasible(h, s * dir, eta)}; linear in s.
IntervalSet porca_feasible_scales(const OrcaHalfplane& h, const Vec2& dir, double eta,
                                  const Interval& domain);

}  // namespace prvo

#endif  // PRVO_BASELINES_H_
