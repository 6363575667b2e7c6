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

#include "prvo/moments.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "prvo/error.h"

namespace prvo {
namespace {

// Polynomials in four independent standard normals z0..z3, stored as a
// sparse list of monomials. Per-variable degree never exceeds 8 here.
constexpr int kVars = 4;
constexpr int kBase = 9;
constexpr int kDenseSize = kBase * kBase * kBase * kBase;

struct Monomial {
  std::array<std::uint8_t, kVars> exp{};
  double coeff = 0.0;
};

using NormalPoly = std::vector<Monomial>;

int pack(const std::array<std::uint8_t, kVars>& e) {
  return e[0] + kBase * (e[1] + kBase * (e[2] + kBase * e[3]));
}

// E[z^n] for z ~ N(0, 1), n <= 16.
constexpr std::array<double, 17> kNormalMoments = {
    1, 0, 1, 0, 3, 0, 15, 0, 105, 0, 945, 0, 10395, 0, 135135, 0, 2027025};

double expect_monomial(const std::array<std::uint8_t, kVars>& e) {
  double m = 1.0;
  for (std::uint8_t n : e) {
    m *= kNormalMoments[n];
    if (m == 0.0) return 0.0;
  }
  return m;
}

double expect_product(const std::array<std::uint8_t, kVars>& a,
                      const std::array<std::uint8_t, kVars>& b) {
  double m = 1.0;
  for (int k = 0; k < kVars; ++k) {
    m *= kNormalMoments[a[k] + b[k]];
    if (m == 0.0) return 0.0;
  }
  return m;
}

// c0 + sum_k lin[k] z_k.
NormalPoly affine(double c0, const std::array<double, kVars>& lin) {
  NormalPoly p;
  if (c0 != 0.0) p.push_back({{}, c0});
  for (int k = 0; k < kVars; ++k) {
    if (lin[k] == 0.0) continue;
    Monomial m;
    m.exp[k] = 1;
    m.coeff = lin[k];
    p.push_back(m);
  }
  return p;
}

NormalPoly collect(const std::vector<double>& dense) {
  NormalPoly out;
  for (int idx = 0; idx < kDenseSize; ++idx) {
    if (dense[idx] == 0.0) continue;
    Monomial m;
    int rest = idx;
    for (int k = 0; k < kVars; ++k) {
      m.exp[k] = static_cast<std::uint8_t>(rest % kBase);
      rest /= kBase;
    }
    m.coeff = dense[idx];
    out.push_back(m);
  }
  return out;
}

// sum_i scale_i * a_i * b_i over the listed products.
NormalPoly sum_of_products(
    std::initializer_list<std::tuple<double, const NormalPoly*, const NormalPoly*>> terms) {
  std::vector<double> dense(kDenseSize, 0.0);
  for (const auto& [scale, a, b] : terms) {
    for (const Monomial& x : *a) {
      for (const Monomial& y : *b) {
        std::array<std::uint8_t, kVars> e;
        for (int k = 0; k < kVars; ++k) e[k] = static_cast<std::uint8_t>(x.exp[k] + y.exp[k]);
        dense[pack(e)] += scale * x.coeff * y.coeff;
      }
    }
  }
  return collect(dense);
}

double expectation(const NormalPoly& p) {
  double acc = 0.0;
  for (const Monomial& m : p) acc += m.coeff * expect_monomial(m.exp);
  return acc;
}

// E[(p - E[p])^2], summed over pairs of monomials of the centered poly.
double central_second_moment(const NormalPoly& p, double mean) {
  NormalPoly centered;
  double constant = -mean;
  for (const Monomial& m : p) {
    if (m.exp == std::array<std::uint8_t, kVars>{}) {
      constant += m.coeff;
    } else {
      centered.push_back(m);
    }
  }
  // The constant only pairs with monomials of nonzero mean.
  double acc = constant * constant;
  for (std::size_t a = 0; a < centered.size(); ++a) {
    acc += 2.0 * constant * centered[a].coeff * expect_monomial(centered[a].exp);
    acc += centered[a].coeff * centered[a].coeff *
           expect_product(centered[a].exp, centered[a].exp);
    for (std::size_t b = a + 1; b < centered.size(); ++b) {
      acc += 2.0 * centered[a].coeff * centered[b].coeff *
             expect_product(centered[a].exp, centered[b].exp);
    }
  }
  return acc;
}

NormalPoly build_F(const Gaussian2& r, const Gaussian2& w, double R) {
  const Cov2 sr = sqrt_psd(r.cov);
  const Cov2 sw = sqrt_psd(w.cov);
  const NormalPoly rx = affine(r.mean.x, {sr.xx, sr.xy, 0.0, 0.0});
  const NormalPoly ry = affine(r.mean.y, {sr.xy, sr.yy, 0.0, 0.0});
  const NormalPoly wx = affine(w.mean.x, {0.0, 0.0, sw.xx, sw.xy});
  const NormalPoly wy = affine(w.mean.y, {0.0, 0.0, sw.xy, sw.yy});
  const NormalPoly cr = sum_of_products({{1.0, &rx, &wy}, {-1.0, &ry, &wx}});
  return sum_of_products({{1.0, &cr, &cr}, {-R * R, &wx, &wx}, {-R * R, &wy, &wy}});
}

// Values at s = -2, -1, 0, 1, 2 split into even and odd parts.
Poly fit_quartic(const std::array<double, 5>& y) {
  const double h = y[2];
  const double even1 = 0.5 * (y[3] + y[1]) - h;  // f + d
  const double even2 = 0.5 * (y[4] + y[0]) - h;  // 4f + 16d
  const double odd1 = 0.5 * (y[3] - y[1]);        // g + e
  const double odd2 = 0.5 * (y[4] - y[0]);        // 2g + 8e
  const double d = (even2 - 4.0 * even1) / 12.0;
  const double f = even1 - d;
  const double e = (odd2 - 2.0 * odd1) / 6.0;
  const double g = odd1 - e;
  return Poly{h, g, f, e, d};
}

Poly fit_quadratic(const std::array<double, 5>& y) {
  const double c = y[2];
  return Poly{c, 0.5 * (y[3] - y[1]), 0.5 * (y[3] + y[1]) - c};
}

void check_held_out(const Poly& p, const std::array<double, 5>& y, double actual) {
  double scale = std::abs(actual);
  for (double v : y) scale = std::max(scale, std::abs(v));
  if (std::abs(p(3.0) - actual) > 1e-6 * scale) throw Error("degree assumption violated");
}

}  // namespace

UncertainPair UncertainPair::without_actuation() const {
  UncertainPair out = *this;
  out.actuation_cov = Cov2{};
  return out;
}

Gaussian2 relative_position(const UncertainPair& u) {
  return {u.pj.mean - u.pi.mean, u.pi.cov + u.pj.cov};
}

Gaussian2 reciprocal_velocity(const UncertainPair& u, const Vec2& commanded) {
  return {commanded * 2.0 - u.vi.mean - u.vj.mean, u.actuation_cov * 4.0 + u.vi.cov + u.vj.cov};
}

FMoments moments_of_F(const UncertainPair& u, const Vec2& commanded) {
  const NormalPoly f = build_F(relative_position(u), reciprocal_velocity(u, commanded), u.R);
  FMoments m;
  m.mean = expectation(f);
  m.var = std::max(0.0, central_second_moment(f, m.mean));
  return m;
}

double ScaledPolys::variance(double s) const { return std::max(0.0, var(s)); }

double ScaledPolys::sigma(double s) const { return std::sqrt(variance(s)); }

ScaledPolys scaled_polys(const UncertainPair& u, const Vec2& candidate_dir) {
  if (candidate_dir == Vec2{}) throw Error("zero candidate direction");
  std::array<double, 5> means;
  std::array<double, 5> vars;
  for (int i = 0; i < 5; ++i) {
    const FMoments m = moments_of_F(u, candidate_dir * static_cast<double>(i - 2));
    means[i] = m.mean;
    vars[i] = m.var;
  }
  ScaledPolys out{fit_quadratic(means), fit_quartic(vars)};
  const FMoments held_out = moments_of_F(u, candidate_dir * 3.0);
  check_held_out(out.mu, means, held_out.mean);
  check_held_out(out.var, vars, held_out.var);
  return out;
}

}  // namespace prvo
