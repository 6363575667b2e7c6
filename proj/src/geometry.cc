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

#include "prvo/geometry.h"

#include <algorithm>
#include <cmath>

#include "prvo/error.h"

namespace prvo {

SymEigen2 eigen(const Cov2& m) {
  const double half_trace = 0.5 * (m.xx + m.yy);
  const double half_diff = 0.5 * (m.xx - m.yy);
  const double radius = std::hypot(half_diff, m.xy);
  SymEigen2 out;
  out.values = {half_trace - radius, half_trace + radius};
  if (m.xy == 0.0) {
    // Already diagonal; keep axis order deterministic.
    if (m.xx <= m.yy) {
      out.values = {m.xx, m.yy};
      out.vectors = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
    } else {
      out.values = {m.yy, m.xx};
      out.vectors = {Vec2{0.0, 1.0}, Vec2{1.0, 0.0}};
    }
    return out;
  }
  // Eigenvector of the larger eigenvalue, from the angle of the principal axis.
  const double theta = 0.5 * std::atan2(2.0 * m.xy, m.xx - m.yy);
  const Vec2 major{std::cos(theta), std::sin(theta)};
  out.vectors = {perp(major), major};
  return out;
}

Cov2 sqrt_psd(const Cov2& m) {
  if (m.is_zero()) return {};
  const SymEigen2 e = eigen(m);
  Cov2 s;
  for (int i = 0; i < 2; ++i) {
    const double root = std::sqrt(std::max(0.0, e.values[i]));
    const Vec2& u = e.vectors[i];
    s.xx += root * u.x * u.x;
    s.xy += root * u.x * u.y;
    s.yy += root * u.y * u.y;
  }
  return s;
}

Cov2 checked_covariance(const Cov2& m) {
  if (!m.is_finite()) throw Error("non-finite covariance");
  if (m.is_zero()) return m;
  const SymEigen2 e = eigen(m);
  if (e.values[0] < -1e-12) throw Error("covariance is not positive semidefinite");
  if (e.values[0] >= 0.0) return m;
  // Rebuild with the small negative eigenvalue clamped to zero.
  const double lam = std::max(0.0, e.values[1]);
  const Vec2& u = e.vectors[1];
  return {lam * u.x * u.x, lam * u.x * u.y, lam * u.y * u.y};
}

Gaussian2 Gaussian2::make(const Vec2& mean, const Cov2& cov) {
  if (!mean.is_finite()) throw Error("non-finite mean");
  return {mean, checked_covariance(cov)};
}

}  // namespace prvo
