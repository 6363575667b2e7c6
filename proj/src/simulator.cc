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

#include "prvo/simulator.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <spdlog/spdlog.h>

#include "prvo/error.h"
#include "prvo/rng.h"
#include "prvo/rvo.h"
#include "prvo/surrogate.h"

namespace prvo {
namespace {

constexpr double kSliverWidth = 1e-9;
constexpr int kFallbackGrid = 400;

Vec2 draw_gaussian(const Gaussian2& g, Engine& engine) {
  if (g.cov.is_zero()) return g.mean;
  std::normal_distribution<double> normal;
  const double z0 = normal(engine);
  const double z1 = normal(engine);
  return g.mean + sqrt_psd(g.cov).apply({z0, z1});
}

IntervalSet solve_pair(const SurrogateProblem& problem) {
  try {
    return solve_taylor(problem);
  } catch (const Error& e) {
    // sigma is numerically zero along the whole retry window; the exact
    // solver has no derivative to take.
    spdlog::debug("taylor solve fell back to exact: {}", e.what());
    return solve_exact(problem);
  }
}

}  // namespace

double Scenario::effective_k() const { return eta ? cantelli_k(*eta) : k; }

void Scenario::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(what);
  };
  require(!robots.empty(), "scenario needs at least one robot");
  require(dt > 0.0, "dt must be positive");
  require(goal_tolerance > 0.0, "goal_tolerance must be positive");
  require(n_candidates >= 1, "n_candidates must be at least 1");
  require(s_max > 0.0, "s_max must be positive");
  require(max_steps >= 1, "max_steps must be at least 1");
  require(validate_samples >= 0, "validate_samples must be nonnegative");
  require(k >= 0.0, "k must be nonnegative");
  if (eta) require(*eta >= 0.0 && *eta < 1.0, "eta must lie in [0, 1)");
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const RobotSpec& r = robots[i];
    const std::string who = "robot " + std::to_string(i) + ": ";
    require(r.start.is_finite() && r.goal.is_finite(), who + "start and goal must be finite");
    require(r.radius > 0.0, who + "radius must be positive");
    require(r.preferred_speed > 0.0, who + "preferred_speed must be positive");
    try {
      checked_covariance(r.pos_cov);
      checked_covariance(r.vel_cov);
      checked_covariance(r.actuation_cov);
    } catch (const Error& e) {
      throw Error(who + e.what());
    }
  }
}

std::optional<double> RobotStepLog::min_eta() const {
  if (pair_eta.empty()) return std::nullopt;
  return *std::min_element(pair_eta.begin(), pair_eta.end());
}

std::optional<double> StepLog::min_eta() const {
  std::optional<double> out;
  for (const RobotStepLog& r : robots) {
    if (const auto m = r.min_eta(); m && (!out || *m < *out)) out = m;
  }
  return out;
}

std::vector<Vec2> generate_candidates(const Vec2& current_vel, const Vec2& toward_goal,
                                      double preferred_speed, int n, std::uint64_t seed) {
  if (n < 1) throw Error("need at least one candidate");
  const double dist = norm(toward_goal);
  if (dist == 0.0) return {Vec2{}};
  const double heading = std::atan2(toward_goal.y, toward_goal.x);
  std::vector<Vec2> out;
  out.reserve(n);
  out.push_back(toward_goal * (preferred_speed / dist));
  const double speed = norm(current_vel);
  if (n >= 2 && speed > 1e-9) out.push_back(current_vel * (preferred_speed / speed));
  Engine engine(seed);
  constexpr double kSpread = 2.0 * std::numbers::pi / 3.0;
  std::uniform_real_distribution<double> offset(-kSpread, kSpread);
  while (static_cast<int>(out.size()) < n) {
    const double h = heading + offset(engine);
    out.push_back(Vec2{std::cos(h), std::sin(h)} * preferred_speed);
  }
  return out;
}

Vec2 preferred_velocity(const Vec2& toward_goal, double preferred_speed, double dt) {
  const double dist = norm(toward_goal);
  if (dist == 0.0) return {};
  return toward_goal * (std::min(preferred_speed, dist / dt) / dist);
}

UncertainPair pair_model(const Scenario& scenario, std::span<const Belief> beliefs,
                         std::size_t i, std::size_t j, bool with_actuation) {
  UncertainPair u;
  u.pi = beliefs[i].position;
  u.pj = beliefs[j].position;
  u.vi = beliefs[i].velocity;
  u.vj = beliefs[j].velocity;
  u.actuation_cov = with_actuation ? scenario.robots[i].actuation_cov : Cov2{};
  u.R = scenario.robots[i].radius + scenario.robots[j].radius;
  return u;
}

PlanResult plan_step(const Scenario& scenario, std::span<const Belief> beliefs,
                     std::size_t robot_id, int step) {
  const RobotSpec& spec = scenario.robots.at(robot_id);
  const Belief& self = beliefs[robot_id];
  const Vec2 toward = spec.goal - self.position.mean;
  const Vec2 v_pref = preferred_velocity(toward, spec.preferred_speed, scenario.dt);

  PlanResult out;
  RobotStepLog& log = out.diagnostics;
  log.preferred = v_pref;
  if (v_pref == Vec2{}) {
    log.idle = true;
    return out;
  }

  const std::vector<Vec2> candidates = generate_candidates(
      beliefs[robot_id].velocity.mean, toward, spec.preferred_speed, scenario.n_candidates,
      substream_seed(scenario.seed, {robot_id, static_cast<std::uint64_t>(step),
                                     static_cast<std::uint64_t>(StreamPurpose::kCandidates)}));
  const double k = scenario.effective_k();
  const Interval domain{0.0, scenario.s_max};

  std::vector<std::size_t> neighbors;
  for (std::size_t j = 0; j < beliefs.size(); ++j) {
    if (j != robot_id) neighbors.push_back(j);
  }

  // Problems for every (candidate, neighbor); kept for the fallback.
  std::vector<std::vector<SurrogateProblem>> problems(candidates.size());
  double best_dev = kInf;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Vec2& dir = candidates[c];
    std::vector<IntervalSet> pair_sets;
    IntervalSet feasible{domain};
    for (std::size_t j : neighbors) {
      const UncertainPair u =
          pair_model(scenario, beliefs, robot_id, j, scenario.ego_uncertainty_enabled);
      problems[c].push_back(make_problem(scaled_polys(u, dir), k, domain));
      pair_sets.push_back(solve_pair(problems[c].back()));
      feasible = interval_intersect(feasible, pair_sets.back());
    }
    const IntervalSet usable = feasible.without_slivers(kSliverWidth);
    if (usable.empty()) continue;
    const double s_free = dot(dir, v_pref) / norm_sq(dir);
    const double s = usable.nearest(s_free);
    const Vec2 v = (c == 0 && s == s_free) ? v_pref : dir * s;
    const double dev = norm(v - v_pref);
    if (dev < best_dev) {
      best_dev = dev;
      out.commanded = v;
      log.candidate = static_cast<int>(c);
      log.s = s;
      log.pair_scales = std::move(pair_sets);
    }
  }
  if (log.candidate >= 0) {
    log.commanded = out.commanded;
    return out;
  }

  // Nothing feasible: the (candidate, scale) whose worst neighbor surrogate
  // value is largest. Values are divided by |E[w]|^2 so they compare miss
  // distances rather than speeds; raw values would always favor crawling,
  // and a crawl next to a neighbor never clears the constraint.
  log.infeasible = true;
  double best_value = -kInf;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (int g = 0; g <= kFallbackGrid; ++g) {
      const double s = scenario.s_max * g / kFallbackGrid;
      double worst = kInf;
      for (std::size_t n = 0; n < neighbors.size(); ++n) {
        const SurrogateProblem& p = problems[c][n];
        const Vec2 w = candidates[c] * (2.0 * s) - self.velocity.mean -
                       beliefs[neighbors[n]].velocity.mean;
        const double scale = std::max(norm_sq(w), 1e-12);
        worst = std::min(worst, (p.polys.mean(s) - k * p.polys.sigma(s)) / scale);
      }
      if (worst > best_value) {
        best_value = worst;
        log.candidate = static_cast<int>(c);
        log.s = s;
      }
    }
  }
  const auto chosen = static_cast<std::size_t>(log.candidate);
  for (const SurrogateProblem& p : problems[chosen]) log.pair_scales.push_back(solve_pair(p));
  out.commanded = candidates[chosen] * log.s;
  log.commanded = out.commanded;
  return out;
}

std::vector<Belief> perceive(const Scenario& scenario, std::span<const Vec2> positions,
                             std::span<const Vec2> velocities, int step) {
  std::vector<Belief> beliefs(scenario.robots.size());
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    const RobotSpec& spec = scenario.robots[i];
    const auto st = static_cast<std::uint64_t>(step);
    Engine pos_engine = make_engine(
        scenario.seed, {i, st, static_cast<std::uint64_t>(StreamPurpose::kPerceptionPosition)});
    Engine vel_engine = make_engine(
        scenario.seed, {i, st, static_cast<std::uint64_t>(StreamPurpose::kPerceptionVelocity)});
    beliefs[i].position = {draw_gaussian({positions[i], spec.pos_cov}, pos_engine), spec.pos_cov};
    beliefs[i].velocity = {draw_gaussian({velocities[i], spec.vel_cov}, vel_engine), spec.vel_cov};
  }
  return beliefs;
}

std::vector<double> validate_pairs(const Scenario& scenario, std::span<const Belief> beliefs,
                                   std::size_t robot_id, const Vec2& commanded, int step,
                                   std::size_t samples) {
  std::vector<double> out;
  for (std::size_t j = 0; j < beliefs.size(); ++j) {
    if (j == robot_id) continue;
    const UncertainPair u = pair_model(scenario, beliefs, robot_id, j, true);
    const std::uint64_t seed = substream_seed(
        scenario.seed, {robot_id, static_cast<std::uint64_t>(step),
                        static_cast<std::uint64_t>(StreamPurpose::kValidation), j});
    out.push_back(empirical_eta(u, commanded, samples, seed, Execution::kSerial).eta);
  }
  return out;
}

RunResult run(const Scenario& scenario, Execution exec) {
  scenario.validate();
  const std::size_t n = scenario.robots.size();
  std::vector<Vec2> pos(n);
  std::vector<Vec2> vel(n);
  std::vector<bool> done(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RobotSpec& spec = scenario.robots[i];
    pos[i] = spec.start;
    vel[i] = preferred_velocity(spec.goal - spec.start, spec.preferred_speed, scenario.dt);
    done[i] = norm(spec.goal - spec.start) <= scenario.goal_tolerance;
    if (done[i]) vel[i] = {};
  }

  RunResult result;
  RunSummary& summary = result.summary;
  auto track_distances = [&](bool count_collisions) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = norm(pos[j] - pos[i]);
        summary.min_distance = std::min(summary.min_distance, d);
        if (count_collisions && d < scenario.robots[i].radius + scenario.robots[j].radius) {
          ++summary.collisions;
        }
      }
    }
  };
  track_distances(false);

  for (int step = 0; step < scenario.max_steps; ++step) {
    if (std::all_of(done.begin(), done.end(), [](bool d) { return d; })) break;
    const std::vector<Belief> beliefs = perceive(scenario, pos, vel, step);

    StepLog log;
    log.step = step;
    log.robots.resize(n);
    const auto count = static_cast<std::int64_t>(n);
    auto plan_one = [&](std::int64_t idx) {
      const auto i = static_cast<std::size_t>(idx);
      if (done[i]) {
        log.robots[i].idle = true;
        return;
      }
      log.robots[i] = plan_step(scenario, beliefs, i, step).diagnostics;
      if (scenario.validate_samples > 0 && !log.robots[i].idle) {
        log.robots[i].pair_eta =
            validate_pairs(scenario, beliefs, i, log.robots[i].commanded, step,
                           static_cast<std::size_t>(scenario.validate_samples));
      }
    };
    if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t i = 0; i < count; ++i) plan_one(i);
    } else {
      for (std::int64_t i = 0; i < count; ++i) plan_one(i);
    }

    // Barrier phase: execute with actuation noise.
    for (std::size_t i = 0; i < n; ++i) {
      RobotStepLog& r = log.robots[i];
      r.position = pos[i];
      if (r.idle) {
        r.executed = {};
      } else {
        Engine engine =
            make_engine(scenario.seed, {i, static_cast<std::uint64_t>(step),
                                        static_cast<std::uint64_t>(StreamPurpose::kActuation)});
        r.executed = draw_gaussian({r.commanded, scenario.robots[i].actuation_cov}, engine);
        if (r.infeasible) ++summary.infeasible_steps;
      }
      pos[i] = step_integrator({pos[i], vel[i], scenario.robots[i].radius}, r.executed,
                               scenario.dt)
                   .position;
      vel[i] = r.executed;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && norm(scenario.robots[i].goal - pos[i]) <= scenario.goal_tolerance) {
        done[i] = true;
        vel[i] = {};
      }
    }
    track_distances(true);
    if (const auto m = log.min_eta(); m && (!summary.min_eta || *m < *summary.min_eta)) {
      summary.min_eta = m;
    }
    result.steps.push_back(std::move(log));
  }

  summary.steps = static_cast<int>(result.steps.size());
  summary.goal_reached = done;
  summary.all_reached = std::all_of(done.begin(), done.end(), [](bool d) { return d; });
  summary.final_positions = pos;
  return result;
}

}  // namespace prvo
