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

#ifndef PRVO_GEOMETRY_H_
#define PRVO_GEOMETRY_H_

#include <array>
#include <cmath>

namespace prvo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_in, double y_in) : x(x_in), y(y_in) {}

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
// z-component of the 3D cross product.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
constexpr double norm_sq(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
// Counterclockwise rotation by 90 degrees.
constexpr Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

// Symmetric 2x2 matrix [[xx, xy], [xy, yy]]. Used for covariances and for
// square-root factors of covariances.
struct Cov2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  static constexpr Cov2 diag(double a, double b) { return {a, 0.0, b}; }
  static constexpr Cov2 iso(double variance) { return {variance, 0.0, variance}; }

  constexpr Cov2 operator+(const Cov2& o) const { return {xx + o.xx, xy + o.xy, yy + o.yy}; }
  constexpr Cov2 operator*(double s) const { return {xx * s, xy * s, yy * s}; }
  constexpr bool operator==(const Cov2&) const = default;

  constexpr Vec2 apply(const Vec2& v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
  constexpr double quad(const Vec2& v) const { return dot(v, apply(v)); }
  constexpr double trace() const { return xx + yy; }
  constexpr double det() const { return xx * yy - xy * xy; }
  constexpr bool is_zero() const { return xx == 0.0 && xy == 0.0 && yy == 0.0; }
  bool is_finite() const { return std::isfinite(xx) && std::isfinite(xy) && std::isfinite(yy); }
};

// Eigendecomposition of a symmetric 2x2 matrix. `values` ascending;
// `vectors[i]` is the unit eigenvector for `values[i]`.
struct SymEigen2 {
  std::array<double, 2> values;
  std::array<Vec2, 2> vectors;
};

SymEigen2 eigen(const Cov2& m);

// Symmetric PSD square root S with S*S = m. Negative eigenvalues are clamped
// to zero.
Cov2 sqrt_psd(const Cov2& m);

// Requires finite entries and eigenvalues >= -1e-12. Small negative
// eigenvalues are clamped to zero; anything worse throws prvo::Error.
Cov2 checked_covariance(const Cov2& m);

// 2D Gaussian random vector.
struct Gaussian2 {
  Vec2 mean;
  Cov2 cov;

  static Gaussian2 make(const Vec2& mean, const Cov2& cov);
  static constexpr Gaussian2 point(const Vec2& mean) { return {mean, Cov2{}}; }
};

}  // namespace prvo

#endif  // PRVO_GEOMETRY_H_
