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

#ifndef PRVO_POLY_H_
#define PRVO_POLY_H_

#include <initializer_list>
#include <vector>

#include "prvo/interval_set.h"

namespace prvo {

// Real polynomial of degree <= 4, coefficients lowest degree first. Trailing
// zeros are trimmed on construction, so the zero polynomial has no
// coefficients and degree -1.
class Poly {
 public:
  static constexpr int kMaxDegree = 4;

  Poly() = default;
  Poly(std::initializer_list<double> coeffs);
  explicit Poly(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  // Coefficient of s^i; zero past the degree.
  double coeff(int i) const;
  const std::vector<double>& coeffs() const { return coeffs_; }
  double max_abs_coeff() const;

  double operator()(double s) const;
  Poly derivative() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(double k) const;
  // Product; the result must still have degree <= 4.
  Poly operator*(const Poly& o) const;

  bool operator==(const Poly&) const = default;

 private:
  std::vector<double> coeffs_;
};

// All distinct real roots, ascending. Multiple roots are reported once.
// Throws prvo::Error("degenerate polynomial") for the zero polynomial.
std::vector<double> poly_real_roots(const Poly& p);

// {s in domain : a2 s^2 + a1 s + a0 >= 0}, solved in closed form.
IntervalSet quadratic_geq_zero(double a2, double a1, double a0, const Interval& domain);

// {s in domain : p(s) >= 0} for any degree <= 4, from the real roots of p.
// The zero polynomial yields the whole domain.
IntervalSet poly_geq_zero(const Poly& p, const Interval& domain);

}  // namespace prvo

#endif  // PRVO_POLY_H_
