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

#include "prvo/rvo.h"

#include "prvo/error.h"

namespace prvo {

double f_rvo(const PairGeometry& g) {
  const Vec2 w = reciprocal_velocity(g.vrvo, g.vi, g.vj);
  const double ww = norm_sq(w);
  if (!(std::sqrt(ww) > 1e-9)) throw Error("degenerate relative velocity");
  const double rw = dot(g.r, w);
  return norm_sq(g.r) - rw * rw / ww - g.R * g.R;
}

double F_rvo_poly(const Vec2& r, const Vec2& w, double R) {
  const double c = cross(r, w);
  return c * c - R * R * norm_sq(w);
}

double F_rvo_poly(const PairGeometry& g) {
  return F_rvo_poly(g.r, reciprocal_velocity(g.vrvo, g.vi, g.vj), g.R);
}

RobotState step_integrator(const RobotState& state, const Vec2& v, double dt) {
  if (!(dt > 0.0)) throw Error("time step must be positive");
  return {state.position + v * dt, v, state.radius};
}

}  // namespace prvo
