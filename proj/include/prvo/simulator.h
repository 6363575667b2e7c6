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

#ifndef PRVO_SIMULATOR_H_
#define PRVO_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prvo/geometry.h"
#include "prvo/interval_set.h"
#include "prvo/montecarlo.h"

namespace prvo {

struct RobotSpec {
  Vec2 start;
  Vec2 goal;
  double radius = 0.5;
  Cov2 pos_cov;
  Cov2 vel_cov;
  Cov2 actuation_cov;
  double preferred_speed = 1.0;
};

struct Scenario {
  std::vector<RobotSpec> robots;
  // Surrogate confidence parameter. When `eta` is set it wins and k is
  // derived through cantelli_k.
  double k = 1.0;
  std::optional<double> eta;
  int n_candidates = 8;
  double s_max = 2.0;
  double dt = 0.1;
  int max_steps = 400;
  double goal_tolerance = 0.1;
  std::uint64_t seed = 0;
  bool ego_uncertainty_enabled = true;
  // Per-step Monte Carlo validation sample count; 0 disables it.
  int validate_samples = 0;

  double effective_k() const;
  // Throws prvo::Error naming the first violated constraint.
  void validate() const;
};

// What every robot believes about one robot at the current tick.
struct Belief {
  Gaussian2 position;
  Gaussian2 velocity;
};

// Candidate 0 points at the goal. With n >= 2 and a nonzero
// `current_vel`, candidate 1 keeps the current heading so a robot can hold
// its course; the remaining headings are uniform in goal heading +- 120
// degrees. All have magnitude preferred_speed. A zero `toward_goal` yields
// the single candidate (0, 0).
std::vector<Vec2> generate_candidates(const Vec2& current_vel, const Vec2& toward_goal,
                                      double preferred_speed, int n, std::uint64_t seed);

// Goal-directed velocity at preferred speed, slowed so one step of `dt`
// does not overshoot.
Vec2 preferred_velocity(const Vec2& toward_goal, double preferred_speed, double dt);

struct RobotStepLog {
  Vec2 position;   // true position when the command was computed
  Vec2 preferred;
  Vec2 commanded;
  Vec2 executed;
  int candidate = -1;  // -1 while idle at the goal
  double s = 0.0;
  bool idle = false;
  // No candidate had a feasible scale; the command is the best-effort
  // fallback.
  bool infeasible = false;
  // Per-neighbor feasible scales along the chosen candidate, in neighbor
  // index order (self skipped).
  std::vector<IntervalSet> pair_scales;
  // Per-neighbor empirical satisfaction probability when validation is on.
  std::vector<double> pair_eta;

  std::optional<double> min_eta() const;
};

struct StepLog {
  int step = 0;
  std::vector<RobotStepLog> robots;

  std::optional<double> min_eta() const;
};

struct PlanResult {
  Vec2 commanded;
  RobotStepLog diagnostics;
};

// Plans robot `robot_id` against all other robots' beliefs.
PlanResult plan_step(const Scenario& scenario, std::span<const Belief> beliefs,
                     std::size_t robot_id, int step);

// Pair model robot i uses for neighbor j. The actuation noise is included
// when `with_actuation` is true.
UncertainPair pair_model(const Scenario& scenario, std::span<const Belief> beliefs,
                         std::size_t i, std::size_t j, bool with_actuation);

// Beliefs at `step`: true state plus zero-mean perception noise, reported
// with the configured covariances.
std::vector<Belief> perceive(const Scenario& scenario, std::span<const Vec2> positions,
                             std::span<const Vec2> velocities, int step);

// Empirical satisfaction probability of every (robot, neighbor) pair at the
// commanded velocity, with actuation noise present.
std::vector<double> validate_pairs(const Scenario& scenario, std::span<const Belief> beliefs,
                                   std::size_t robot_id, const Vec2& commanded, int step,
                                   std::size_t samples);

struct RunSummary {
  std::vector<bool> goal_reached;
  bool all_reached = false;
  int steps = 0;
  double min_distance = kInf;
  // (step, pair) instances with center distance below R_i + R_j.
  int collisions = 0;
  // Robot-steps planned with the infeasible fallback.
  int infeasible_steps = 0;
  std::optional<double> min_eta;
  std::vector<Vec2> final_positions;
};

struct RunResult {
  std::vector<StepLog> steps;
  RunSummary summary;
};

// Lockstep simulation: all robots plan from the same beliefs, then all
// execute with actuation noise. Robots within goal_tolerance stop and stay
// as static neighbors.
RunResult run(const Scenario& scenario, Execution exec = Execution::kParallel);

}  // namespace prvo

#endif  // PRVO_SIMULATOR_H_
