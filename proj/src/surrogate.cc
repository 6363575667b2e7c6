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

#include "prvo/surrogate.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "prvo/error.h"
#include "prvo/poly.h"

namespace prvo {

double cantelli_eta(double k) {
  if (!(k >= 0.0)) throw Error("k must be nonnegative");
  const double k2 = k * k;
  return k2 / (1.0 + k2);
}

double cantelli_k(double eta) {
  if (!(eta >= 0.0)) throw Error("confidence must be nonnegative");
  if (eta >= 1.0) throw Error("unreachable confidence");
  return std::sqrt(eta / (1.0 - eta));
}

double choose_s_star(const ScaledPolys& polys, const Interval& domain) {
  const IntervalSet feasible = poly_geq_zero(polys.mu, domain);
  if (!feasible.empty()) {
    const Interval* widest = &feasible[0];
    for (const Interval& in : feasible) {
      if (in.width() > widest->width()) widest = &in;
    }
    return widest->is_unbounded() ? widest->lo + 1.0 : 0.5 * (widest->lo + widest->hi);
  }
  // mu < 0 everywhere on the domain, so it is bounded above there.
  double best = domain.lo;
  auto consider = [&](double s) {
    if (domain.contains(s) && polys.mu(s) > polys.mu(best)) best = s;
  };
  if (!domain.is_unbounded()) consider(domain.hi);
  const double a = polys.mu.coeff(2);
  if (a < 0.0) consider(-polys.mu.coeff(1) / (2.0 * a));
  return best;
}

SurrogateProblem make_problem(const ScaledPolys& polys, double k, const Interval& domain) {
  return {polys, k, domain, choose_s_star(polys, domain)};
}

TaylorQuadratic taylor_quadratic(const SurrogateProblem& problem) {
  const Poly& mu = problem.polys.mu;
  const Poly& var = problem.polys.var;
  TaylorQuadratic q{mu.coeff(2), mu.coeff(1), mu.coeff(0), problem.s_star};
  if (problem.k == 0.0 || var.is_zero()) return q;

  const Poly dvar = var.derivative();
  const Poly ddvar = dvar.derivative();
  double s0 = problem.s_star;
  double v = var(s0);
  for (int shift = 0; !(v > 0.0 && std::sqrt(v) > 1e-12); ++shift) {
    if (shift == 10) throw Error("variance vanishes along path");
    s0 += 0.1;
    v = var(s0);
  }
  const double sigma = std::sqrt(v);
  const double d1 = dvar(s0) / (2.0 * sigma);
  const double d2 = (2.0 * v * ddvar(s0) - dvar(s0) * dvar(s0)) / (4.0 * v * sigma);

  // sigma + d1 (s - s0) + d2 (s - s0)^2 / 2, collected by powers of s.
  const double k = problem.k;
  q.a2 -= k * 0.5 * d2;
  q.a1 -= k * (d1 - d2 * s0);
  q.a0 -= k * (sigma - d1 * s0 + 0.5 * d2 * s0 * s0);
  q.s_star = s0;
  return q;
}

IntervalSet solve_taylor_fixed(const SurrogateProblem& problem) {
  const TaylorQuadratic q = taylor_quadratic(problem);
  return quadratic_geq_zero(q.a2, q.a1, q.a0, problem.domain);
}

namespace {

constexpr double kPieceWidth = 0.125;
constexpr int kMaxUniformPieces = 64;
constexpr double kUniformSpan = 4.0;  // uniform pieces on unbounded domains
constexpr int kDoublings = 24;        // then geometric pieces [x, 2x]
// A piece is bisected while its sigma model is off by more than this
// fraction of the largest sigma seen in it, down to kMinPieceWidth.
constexpr double kSigmaTolerance = 1e-3;
constexpr double kMinPieceWidth = kPieceWidth / 256.0;

// Expansion point inside [lo, hi] with sigma clear of zero, if any.
std::optional<double> expansion_point(const Poly& var, double lo, double hi) {
  for (double t : {0.5, 0.25, 0.75, 0.0, 1.0}) {
    const double s = lo + t * (hi - lo);
    if (std::sqrt(std::max(var(s), 0.0)) > 1e-12) return s;
  }
  return std::nullopt;
}

void solve_piece(SurrogateProblem problem, double lo, double hi, double probe_hi,
                 std::vector<Interval>& out) {
  problem.domain = {lo, hi};
  const std::optional<double> at = expansion_point(problem.polys.var, lo, probe_hi);
  if (!at) {
    for (const Interval& in : poly_geq_zero(problem.polys.mu, problem.domain)) out.push_back(in);
    return;
  }
  problem.s_star = *at;
  const TaylorQuadratic q = taylor_quadratic(problem);
  if (hi != kInf && hi - lo > kMinPieceWidth) {
    double err = 0.0;
    double scale = 0.0;
    for (double t : {0.0, 0.25, 0.75, 1.0}) {
      const double s = lo + t * (hi - lo);
      const double sigma = problem.polys.sigma(s);
      const double model = (problem.polys.mean(s) - q(s)) / problem.k;
      err = std::max(err, std::abs(model - sigma));
      scale = std::max(scale, sigma);
    }
    if (err > kSigmaTolerance * scale) {
      const double mid = 0.5 * (lo + hi);
      solve_piece(problem, lo, mid, mid, out);
      solve_piece(problem, mid, hi, hi, out);
      return;
    }
  }
  for (const Interval& in : quadratic_geq_zero(q.a2, q.a1, q.a0, problem.domain)) out.push_back(in);
}

}  // namespace

IntervalSet solve_taylor(const SurrogateProblem& problem) {
  if (problem.k == 0.0 || problem.polys.var.is_zero()) return solve_taylor_fixed(problem);
  const Interval& dom = problem.domain;
  std::vector<double> cuts{dom.lo};
  if (dom.is_unbounded()) {
    for (int i = 1; i * kPieceWidth <= kUniformSpan; ++i) cuts.push_back(dom.lo + i * kPieceWidth);
    for (int i = 0; i < kDoublings; ++i) cuts.push_back(2.0 * cuts.back());
  } else {
    const int n = std::clamp(static_cast<int>(std::ceil(dom.width() / kPieceWidth)), 1,
                             kMaxUniformPieces);
    for (int i = 1; i < n; ++i) cuts.push_back(dom.lo + dom.width() * i / n);
    cuts.push_back(dom.hi);
  }
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    solve_piece(problem, cuts[i], cuts[i + 1], cuts[i + 1], out);
  }
  if (dom.is_unbounded()) {
    const double last = cuts.back();
    solve_piece(problem, last, kInf, 2.0 * last, out);
  }
  return IntervalSet(std::move(out));
}

IntervalSet solve_exact(const SurrogateProblem& problem) {
  const Poly& mu = problem.polys.mu;
  const Poly& var = problem.polys.var;
  const IntervalSet mean_ok = poly_geq_zero(mu, problem.domain);
  if (problem.k == 0.0 || var.is_zero()) return mean_ok;
  const Poly quartic = mu * mu - var * (problem.k * problem.k);
  if (quartic.is_zero()) return mean_ok;
  return interval_intersect(mean_ok, poly_geq_zero(quartic, problem.domain));
}

IntervalSet feasible_scales(std::span<const SurrogateProblem> problems) {
  if (problems.empty()) throw Error("no surrogate problems to intersect");
  IntervalSet out = solve_taylor(problems.front());
  for (std::size_t i = 1; i < problems.size() && !out.empty(); ++i) {
    out = interval_intersect(out, solve_taylor(problems[i]));
  }
  return out;
}

}  // namespace prvo
