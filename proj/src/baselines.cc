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

#include "prvo/baselines.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "prvo/error.h"
#include "prvo/poly.h"
#include "prvo/rvo.h"

namespace prvo {
namespace {

// P(|x| <= rho) for x ~ N(0, diag(lo, hi)), lo <= hi.
double circle_mass(double rho, double lo, double hi) {
  if (lo <= 1e-12 * hi) return std::erf(rho / std::sqrt(2.0 * hi));
  // Polar form: (1 / (2 pi sqrt(lo hi))) * int (1 - exp(-rho^2 q / 2)) / q
  // with q(t) = cos^2 t / lo + sin^2 t / hi. Periodic trapezoid rule.
  constexpr int kNodes = 4096;
  double acc = 0.0;
  for (int m = 0; m < kNodes; ++m) {
    const double t = 2.0 * std::numbers::pi * m / kNodes;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double q = c * c / lo + s * s / hi;
    acc += -std::expm1(-0.5 * rho * rho * q) / q;
  }
  return acc / (kNodes * std::sqrt(lo * hi));
}

}  // namespace

double confidence_circle_radius(const Cov2& cov, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw Error("confidence must lie in (0, 1)");
  if (cov.is_zero()) return 0.0;
  const SymEigen2 e = eigen(cov);
  const double lo = std::max(0.0, e.values[0]);
  const double hi = e.values[1];
  if (hi <= 0.0) return 0.0;
  double a = 0.0;
  double b = 10.0 * std::sqrt(hi);
  while (circle_mass(b, lo, hi) < confidence) b *= 2.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (a + b);
    if (circle_mass(mid, lo, hi) < confidence) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

InflationResult inflated_feasible_scales(const UncertainPair& u, const Vec2& candidate_dir,
                                         const InflationConfig& cfg, const Interval& domain) {
  const double rho_pos = confidence_circle_radius(u.pi.cov + u.pj.cov, cfg.confidence);
  const double rho_vel =
      confidence_circle_radius(u.vi.cov + u.vj.cov + u.actuation_cov, cfg.confidence);
  InflationResult out;
  out.inflated_radius = u.R + rho_pos + rho_vel * cfg.horizon;
  const Vec2 r = u.pj.mean - u.pi.mean;
  if (norm(r) <= out.inflated_radius) {
    out.in_collision = true;
    return out;
  }
  // w(s) = s a + b, so F(s) = (r x w)^2 - R'^2 |w|^2 is quadratic in s.
  const Vec2 a = candidate_dir * 2.0;
  const Vec2 b = -u.vi.mean - u.vj.mean;
  const double ra = cross(r, a);
  const double rb = cross(r, b);
  const double R2 = out.inflated_radius * out.inflated_radius;
  out.scales = quadratic_geq_zero(ra * ra - R2 * norm_sq(a), 2.0 * (ra * rb - R2 * dot(a, b)),
                                  rb * rb - R2 * norm_sq(b), domain);
  return out;
}

namespace {

enum class OrcaBranch { kAuto, kCutoff, kLeftLeg, kRightLeg };

struct OrcaLine {
  Vec2 point;
  Vec2 normal;  // unit; feasible side is normal . (v - point) >= 0
  OrcaBranch branch = OrcaBranch::kAuto;
};

// ORCA construction for robot i with responsibility 1/2. A forced branch
// keeps the projection target fixed, which the Jacobian needs near the leg
// switch of head-on encounters.
OrcaLine orca_line(const Vec2& rel_pos, const Vec2& rel_vel, const Vec2& vi, double R,
                   double time_horizon, OrcaBranch force = OrcaBranch::kAuto) {
  const double dist_sq = norm_sq(rel_pos);
  const double R_sq = R * R;
  if (dist_sq <= R_sq) throw Error("in collision at mean");
  const double inv_tau = 1.0 / time_horizon;

  Vec2 direction;
  Vec2 u;
  // Vector from cutoff circle center to relative velocity.
  const Vec2 w = rel_vel - rel_pos * inv_tau;
  const double w_len_sq = norm_sq(w);
  const double dot1 = dot(w, rel_pos);
  OrcaBranch branch = force;
  if (branch == OrcaBranch::kAuto) {
    if (dot1 < 0.0 && dot1 * dot1 > R_sq * w_len_sq) {
      branch = OrcaBranch::kCutoff;
    } else {
      branch = cross(rel_pos, w) >= 0.0 ? OrcaBranch::kLeftLeg : OrcaBranch::kRightLeg;
    }
  }
  if (branch == OrcaBranch::kCutoff) {
    // Project on cutoff circle.
    const double w_len = std::sqrt(w_len_sq);
    const Vec2 unit_w = w / w_len;
    direction = Vec2{unit_w.y, -unit_w.x};
    u = unit_w * (R * inv_tau - w_len);
  } else {
    // Project on legs; ties go to the counterclockwise (left) leg.
    const double leg = std::sqrt(dist_sq - R_sq);
    if (branch == OrcaBranch::kLeftLeg) {
      direction = Vec2{rel_pos.x * leg - rel_pos.y * R, rel_pos.x * R + rel_pos.y * leg} / dist_sq;
    } else {
      direction =
          -Vec2{rel_pos.x * leg + rel_pos.y * R, -rel_pos.x * R + rel_pos.y * leg} / dist_sq;
    }
    u = direction * dot(rel_vel, direction) - rel_vel;
  }
  return {vi + u * 0.5, perp(direction), branch};
}

}  // namespace

OrcaHalfplane orca_halfplane_from_pair(const UncertainPair& u, const OrcaConfig& cfg) {
  const Vec2 rel_pos = u.pj.mean - u.pi.mean;
  const Vec2 rel_vel = u.vi.mean - u.vj.mean;
  const OrcaLine line = orca_line(rel_pos, rel_vel, u.vi.mean, u.R, cfg.time_horizon);

  OrcaHalfplane h;
  h.z2 = dot(line.normal, line.point);

  // Delta method over x = (rel_pos, rel_vel), which are independent with
  // covariances cov_pi + cov_pj and cov_vi + cov_vj.
  const Cov2 cov_pos = u.pi.cov + u.pj.cov;
  const Cov2 cov_vel = u.vi.cov + u.vj.cov;
  Cov2 cov_normal;
  if (!cov_pos.is_zero() || !cov_vel.is_zero()) {
    // Jacobian columns d normal / d x_k by central differences.
    std::array<Vec2, 4> jac;
    for (int k = 0; k < 4; ++k) {
      Vec2 dp;
      Vec2 dv;
      const double scale = 1.0 + (k < 2 ? norm(rel_pos) : norm(rel_vel));
      const double step = 1e-6 * scale;
      Vec2& target = k < 2 ? dp : dv;
      (k % 2 == 0 ? target.x : target.y) = step;
      const Vec2 plus =
          orca_line(rel_pos + dp, rel_vel + dv, u.vi.mean, u.R, cfg.time_horizon, line.branch)
              .normal;
      const Vec2 minus =
          orca_line(rel_pos - dp, rel_vel - dv, u.vi.mean, u.R, cfg.time_horizon, line.branch)
              .normal;
      jac[k] = (plus - minus) / (2.0 * step);
    }
    // J Sigma J^T with Sigma = blockdiag(cov_pos, cov_vel).
    const std::array<Cov2, 2> blocks{cov_pos, cov_vel};
    for (int b = 0; b < 2; ++b) {
      const Vec2& jx = jac[2 * b];
      const Vec2& jy = jac[2 * b + 1];
      const Cov2& c = blocks[b];
      // Rows of J restricted to this block: row0 = (jx.x, jy.x), row1 = (jx.y, jy.y).
      const Vec2 row0{jx.x, jy.x};
      const Vec2 row1{jx.y, jy.y};
      cov_normal.xx += c.quad(row0);
      cov_normal.xy += dot(row0, c.apply(row1));
      cov_normal.yy += c.quad(row1);
    }
  }
  h.z1 = {line.normal, checked_covariance(cov_normal)};
  return h;
}

bool porca_feasible(const OrcaHalfplane& h, const Vec2& v, double eta) {
  if (!(eta >= 0.0 && eta < 1.0)) throw Error("eta must lie in [0, 1)");
  const double backoff = std::sqrt(eta) * std::sqrt(std::max(0.0, h.z1.cov.quad(v)));
  return h.margin(v) - backoff >= 0.0;
}

IntervalSet porca_feasible_scales(const OrcaHalfplane& h, const Vec2& dir, double eta,
                                  const Interval& domain) {
  if (!(eta >= 0.0 && eta < 1.0)) throw Error("eta must lie in [0, 1)");
  // For s >= 0, sqrt((s d)^T C (s d)) = s sqrt(d^T C d).
  const double slope =
      dot(h.z1.mean, dir) - std::sqrt(eta) * std::sqrt(std::max(0.0, h.z1.cov.quad(dir)));
  const Interval nonneg{std::max(0.0, domain.lo), domain.hi};
  if (!nonneg.is_valid()) return {};
  return quadratic_geq_zero(0.0, slope, -h.z2, nonneg);
}

}  // namespace prvo
