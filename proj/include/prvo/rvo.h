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

#ifndef PRVO_RVO_H_
#define PRVO_RVO_H_

#include "prvo/geometry.h"

namespace prvo {

// Disc robot following single-integrator dynamics.
struct RobotState {
  Vec2 position;
  Vec2 velocity;
  double radius = 0.0;
};

// Everything the reciprocal velocity obstacle of robot i w.r.t. robot j
// depends on.
struct PairGeometry {
  Vec2 r;              // p_j - p_i
  double R = 0.0;      // R_i + R_j
  Vec2 vi;             // current velocity of i
  Vec2 vj;             // current velocity of j
  Vec2 vrvo;           // candidate avoidance velocity of i
};

// 2 vrvo - vi - vj. The factor 2 splits the avoidance effort equally.
constexpr Vec2 reciprocal_velocity(const Vec2& vrvo, const Vec2& vi, const Vec2& vj) {
  return vrvo * 2.0 - vi - vj;
}

// Squared distance from r to the line spanned by w, minus R^2:
//   |r|^2 - (r.w)^2 / |w|^2 - R^2.
// Positive when the relative motion clears the combined disc. Throws
// prvo::Error("degenerate relative velocity") when |w| <= 1e-9.
double f_rvo(const PairGeometry& g);

// The same constraint multiplied through by |w|^2:
//   |r|^2 |w|^2 - (r.w)^2 - R^2 |w|^2 = (r x w)^2 - R^2 |w|^2.
// A degree-4 polynomial in the inputs, defined everywhere.
double F_rvo_poly(const PairGeometry& g);
double F_rvo_poly(const Vec2& r, const Vec2& w, double R);

// One Euler step of the single integrator; `dt` must be positive.
RobotState step_integrator(const RobotState& state, const Vec2& v, double dt);

}  // namespace prvo

#endif  // PRVO_RVO_H_
