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

#ifndef PRVO_CLI_COMMANDS_H_
#define PRVO_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "prvo/simulator.h"

namespace prvo::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitSafetyFlag = 2;

// Command-line overrides applied on top of a scenario file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> k;
  std::optional<double> eta;
  std::optional<int> candidates;
};

void apply_overrides(Scenario& scenario, const Overrides& o);

struct SimulateOptions {
  std::string scenario_path;
  std::string out_dir = ".";
  Overrides overrides;
  // Samples per pair for eta.csv; 0 leaves validation off.
  int validate_samples = 0;
};

// Writes trajectory.csv, summary.json and (with validation) eta.csv.
// Returns 0 on a clean run, 2 when the run recorded collisions, 1 on IO or
// configuration errors (message on `err`).
int cmd_simulate(const SimulateOptions& opts, std::ostream& err);

struct ValidateOptions {
  std::string scenario_path;
  std::vector<double> k_list{1.0};
  int samples = 10000;
  Overrides overrides;
};

// CSV "k,cantelli_bound,min_empirical_eta,pass" on `out`. A row passes when
// min_empirical_eta >= bound - 2 * sqrt(bound (1 - bound) / samples).
// Returns 0 when every row passes, 2 otherwise.
int cmd_validate_cantelli(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

enum class SolutionMethod { kPrvoTaylor, kPrvoExact, kInflation, kPorca };

std::optional<SolutionMethod> parse_method(const std::string& name);
std::string method_name(SolutionMethod m);

struct SolutionSpaceOptions {
  std::string scenario_path;
  SolutionMethod method = SolutionMethod::kPrvoExact;
  // Meaning depends on the method: k for the PRVO solvers, the contour
  // confidence for inflation, eta for PORCA.
  std::vector<double> params;
  // When set for the PRVO solvers, params are confidence levels mapped to
  // k through cantelli_k (the matched comparison against inflation).
  bool params_are_confidence = false;
  double s_max = kInf;
  double horizon = 1.0;  // inflation velocity horizon, seconds
  Overrides overrides;
};

// CSV "robot,method,param,k,scales,subset_of_previous" with one row per
// (robot, param), along each robot's goal-directed candidate against all
// neighbors at the initial mean state.
int cmd_solution_space(const SolutionSpaceOptions& opts, std::ostream& out, std::ostream& err);

// Solution set used by cmd_solution_space for one robot; exposed for tests.
IntervalSet solution_space(const Scenario& scenario, std::size_t robot, SolutionMethod method,
                           double param, bool param_is_confidence, const Interval& domain,
                           double horizon);

// Full command-line entry point (CLI11).
int main_entry(int argc, char** argv);

}  // namespace prvo::cli

#endif  // PRVO_CLI_COMMANDS_H_
