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

#include "prvo/poly.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prvo/error.h"

namespace prvo {
namespace {

void trim(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() > Poly::kMaxDegree + 1) throw Error("polynomial degree exceeds 4");
}

// Bound on the rounding error of evaluating p at s by Horner's rule.
double eval_scale(const Poly& p, double s) {
  double scale = 0.0;
  double power = 1.0;
  for (double c : p.coeffs()) {
    scale += std::abs(c) * power;
    power *= std::abs(s);
  }
  return scale;
}

// p(lo) and p(hi) have strictly opposite signs; p is monotone in between.
double bisect(const Poly& p, double lo, double hi) {
  const bool rising = p(lo) < 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = p(mid);
    if (v == 0.0) return mid;
    if ((v < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(p(lo)) <= std::abs(p(hi)) ? lo : hi;
}

}  // namespace

Poly::Poly(std::initializer_list<double> coeffs) : Poly(std::vector<double>(coeffs)) {}

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(coeffs_); }

double Poly::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : 0.0;
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Poly::operator()(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Poly Poly::derivative() const {
  std::vector<double> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(static_cast<double>(i) * coeffs_[i]);
  return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<double> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * -1.0; }

Poly Poly::operator*(double k) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= k;
  return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<double> c(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return Poly(std::move(c));
}

// Roots are isolated between consecutive critical points (roots of p'),
// where p is monotone; a sign change there brackets exactly one root. Roots
// of even multiplicity sit on a critical point and are caught by testing
// |p| against its evaluation error.
std::vector<double> poly_real_roots(const Poly& p) {
  if (p.is_zero()) throw Error("degenerate polynomial");
  const int n = p.degree();
  if (n == 0) return {};
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  const std::vector<double> critical = poly_real_roots(p.derivative());
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p.coeff(i) / p.coeff(n)));
  bound += 1.0;

  std::vector<double> breaks;
  breaks.push_back(-bound);
  for (double c : critical) breaks.push_back(std::clamp(c, -bound, bound));
  breaks.push_back(bound);

  std::vector<double> roots;
  for (double c : critical) {
    if (std::abs(p(c)) <= 1e-10 * eval_scale(p, c)) roots.push_back(c);
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(a < b)) continue;
    const double fa = p(a);
    const double fb = p(b);
    if (fa == 0.0) roots.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) roots.push_back(bisect(p, a, b));
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (!unique.empty() && std::abs(r - unique.back()) <= 1e-7 * (1.0 + std::abs(r))) {
      // Keep whichever candidate evaluates closer to zero.
      if (std::abs(p(r)) < std::abs(p(unique.back()))) unique.back() = r;
      continue;
    }
    unique.push_back(r);
  }
  return unique;
}

IntervalSet quadratic_geq_zero(double a2, double a1, double a0, const Interval& domain) {
  const IntervalSet dom{domain};
  if (a2 == 0.0 && a1 == 0.0) return a0 >= 0.0 ? dom : IntervalSet{};
  if (a2 == 0.0) {
    const double root = -a0 / a1;
    return interval_intersect(dom, a1 > 0.0 ? IntervalSet{{root, kInf}} : IntervalSet{{-kInf, root}});
  }
  const double disc = a1 * a1 - 4.0 * a2 * a0;
  if (disc < 0.0) return a2 > 0.0 ? dom : IntervalSet{};
  if (disc == 0.0) {
    if (a2 > 0.0) return dom;
    const double root = -a1 / (2.0 * a2);
    return interval_intersect(dom, IntervalSet{{root, root}});
  }
  // Numerically stable pair of roots.
  const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
  double r1 = q / a2;
  double r2 = a0 / q;
  if (r1 > r2) std::swap(r1, r2);
  if (a2 > 0.0) return interval_intersect(dom, IntervalSet{{-kInf, r1}, {r2, kInf}});
  return interval_intersect(dom, IntervalSet{{r1, r2}});
}

IntervalSet poly_geq_zero(const Poly& p, const Interval& domain) {
  if (p.is_zero()) return IntervalSet{domain};
  if (p.degree() <= 2) return quadratic_geq_zero(p.coeff(2), p.coeff(1), p.coeff(0), domain);

  std::vector<double> breaks{domain.lo};
  std::vector<Interval> pieces;
  for (double r : poly_real_roots(p)) {
    if (domain.contains(r)) {
      pieces.push_back({r, r});
      if (r > breaks.back()) breaks.push_back(r);
    }
  }
  if (domain.hi > breaks.back()) breaks.push_back(domain.hi);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const double probe = b == kInf ? a + 1.0 + std::abs(a) : 0.5 * (a + b);
    if (p(probe) >= 0.0) pieces.push_back({a, b});
  }
  if (breaks.size() == 1 && p(domain.lo) >= 0.0) pieces.push_back({domain.lo, domain.lo});
  return IntervalSet(std::move(pieces));
}

}  // namespace prvo
