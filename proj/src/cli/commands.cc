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

#include "prvo/cli/commands.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "prvo/baselines.h"
#include "prvo/cli/scenario_file.h"
#include "prvo/error.h"
#include "prvo/moments.h"
#include "prvo/surrogate.h"

namespace prvo::cli {
namespace {

std::string num(double v) { return fmt::format("{}", v); }

struct InitialState {
  std::vector<Vec2> positions;
  std::vector<Vec2> velocities;
};

InitialState initial_state(const Scenario& s) {
  InitialState st;
  for (const RobotSpec& r : s.robots) {
    st.positions.push_back(r.start);
    st.velocities.push_back(preferred_velocity(r.goal - r.start, r.preferred_speed, s.dt));
  }
  return st;
}

// Beliefs centered on the true initial state (no perception draw).
std::vector<Belief> mean_beliefs(const Scenario& s) {
  const InitialState st = initial_state(s);
  std::vector<Belief> out;
  for (std::size_t i = 0; i < s.robots.size(); ++i) {
    out.push_back({{st.positions[i], s.robots[i].pos_cov}, {st.velocities[i], s.robots[i].vel_cov}});
  }
  return out;
}

void configure_logging() {
  if (const char* level = std::getenv("PRVO_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  } else {
    spdlog::set_level(spdlog::level::warn);
  }
}

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw Error("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

void apply_overrides(Scenario& scenario, const Overrides& o) {
  if (o.seed) scenario.seed = *o.seed;
  if (o.k) {
    scenario.k = *o.k;
    scenario.eta.reset();
  }
  if (o.eta) scenario.eta = *o.eta;
  if (o.candidates) scenario.n_candidates = *o.candidates;
  scenario.validate();
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& err) {
  Scenario scenario;
  try {
    scenario = load_scenario(opts.scenario_path);
    apply_overrides(scenario, opts.overrides);
    if (opts.validate_samples > 0) scenario.validate_samples = opts.validate_samples;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  const RunResult result = run(scenario);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  const fs::path dir(opts.out_dir);
  std::ofstream traj(dir / "trajectory.csv");
  std::ofstream summary_file(dir / "summary.json");
  if (!traj || !summary_file) {
    err << "error: cannot write outputs under " << opts.out_dir << "\n";
    return kExitConfigError;
  }

  traj << "step,robot,mean_x,mean_y,cmd_vx,cmd_vy,exec_vx,exec_vy,s,candidate,feasible\n";
  for (const StepLog& step : result.steps) {
    for (std::size_t i = 0; i < step.robots.size(); ++i) {
      const RobotStepLog& r = step.robots[i];
      traj << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", step.step, i, num(r.position.x),
                          num(r.position.y), num(r.commanded.x), num(r.commanded.y),
                          num(r.executed.x), num(r.executed.y), num(r.s), r.candidate,
                          r.infeasible ? 0 : 1);
    }
  }

  if (scenario.validate_samples > 0) {
    std::ofstream eta(dir / "eta.csv");
    if (!eta) {
      err << "error: cannot write eta.csv\n";
      return kExitConfigError;
    }
    const double bound = cantelli_eta(scenario.effective_k());
    eta << "step,robot,neighbor,empirical_eta,cantelli_bound\n";
    for (const StepLog& step : result.steps) {
      for (std::size_t i = 0; i < step.robots.size(); ++i) {
        const RobotStepLog& r = step.robots[i];
        std::size_t slot = 0;
        for (std::size_t j = 0; j < step.robots.size() && !r.pair_eta.empty(); ++j) {
          if (j == i) continue;
          eta << fmt::format("{},{},{},{},{}\n", step.step, i, j, num(r.pair_eta[slot++]),
                             num(bound));
        }
      }
    }
  }

  const RunSummary& s = result.summary;
  nlohmann::ordered_json js;
  js["steps"] = s.steps;
  js["all_goals_reached"] = s.all_reached;
  js["goal_reached"] = s.goal_reached;
  js["collisions"] = s.collisions;
  js["min_distance"] = s.min_distance;
  js["infeasible_steps"] = s.infeasible_steps;
  js["min_eta"] = s.min_eta ? nlohmann::ordered_json(*s.min_eta) : nlohmann::ordered_json(nullptr);
  js["k"] = scenario.effective_k();
  js["cantelli_bound"] = cantelli_eta(scenario.effective_k());
  js["seed"] = scenario.seed;
  summary_file << js.dump(2) << "\n";

  return s.collisions > 0 ? kExitSafetyFlag : kExitOk;
}

int cmd_validate_cantelli(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  Scenario base;
  try {
    base = load_scenario(opts.scenario_path);
    apply_overrides(base, opts.overrides);
    if (opts.samples < 1) throw Error("samples must be positive");
    for (double k : opts.k_list) {
      if (!(k >= 0.0)) throw Error("k must be nonnegative");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  const InitialState st = initial_state(base);
  bool all_pass = true;
  out << "k,cantelli_bound,min_empirical_eta,pass\n";
  for (double k : opts.k_list) {
    Scenario scenario = base;
    scenario.k = k;
    scenario.eta.reset();
    const std::vector<Belief> beliefs = perceive(scenario, st.positions, st.velocities, 0);
    double min_eta = 1.0;
    for (std::size_t i = 0; i < scenario.robots.size(); ++i) {
      const PlanResult plan = plan_step(scenario, beliefs, i, 0);
      if (plan.diagnostics.infeasible) spdlog::warn("k={}: robot {} has no feasible scale", k, i);
      for (double e : validate_pairs(scenario, beliefs, i, plan.commanded, 0,
                                     static_cast<std::size_t>(opts.samples))) {
        min_eta = std::min(min_eta, e);
      }
    }
    const double bound = cantelli_eta(k);
    const double slack = 2.0 * std::sqrt(bound * (1.0 - bound) / opts.samples);
    const bool pass = min_eta >= bound - slack;
    all_pass = all_pass && pass;
    out << fmt::format("{},{},{},{}\n", num(k), num(bound), num(min_eta), pass ? 1 : 0);
  }
  return all_pass ? kExitOk : kExitSafetyFlag;
}

std::optional<SolutionMethod> parse_method(const std::string& name) {
  if (name == "prvo-taylor") return SolutionMethod::kPrvoTaylor;
  if (name == "prvo-exact") return SolutionMethod::kPrvoExact;
  if (name == "inflation") return SolutionMethod::kInflation;
  if (name == "porca") return SolutionMethod::kPorca;
  return std::nullopt;
}

std::string method_name(SolutionMethod m) {
  switch (m) {
    case SolutionMethod::kPrvoTaylor:
      return "prvo-taylor";
    case SolutionMethod::kPrvoExact:
      return "prvo-exact";
    case SolutionMethod::kInflation:
      return "inflation";
    case SolutionMethod::kPorca:
      return "porca";
  }
  return "?";
}

IntervalSet solution_space(const Scenario& scenario, std::size_t robot, SolutionMethod method,
                           double param, bool param_is_confidence, const Interval& domain,
                           double horizon) {
  const std::vector<Belief> beliefs = mean_beliefs(scenario);
  const RobotSpec& spec = scenario.robots.at(robot);
  const Vec2 dir = generate_candidates(Vec2{}, spec.goal - spec.start, spec.preferred_speed, 1, 0).front();
  IntervalSet out{domain};
  if (dir == Vec2{}) return out;
  for (std::size_t j = 0; j < beliefs.size(); ++j) {
    if (j == robot) continue;
    const UncertainPair u =
        pair_model(scenario, beliefs, robot, j, scenario.ego_uncertainty_enabled);
    IntervalSet pair;
    switch (method) {
      case SolutionMethod::kPrvoTaylor:
      case SolutionMethod::kPrvoExact: {
        const double k = param_is_confidence ? cantelli_k(param) : param;
        const SurrogateProblem p = make_problem(scaled_polys(u, dir), k, domain);
        pair = method == SolutionMethod::kPrvoTaylor ? solve_taylor(p) : solve_exact(p);
        break;
      }
      case SolutionMethod::kInflation:
        pair = inflated_feasible_scales(u, dir, {param, horizon}, domain).scales;
        break;
      case SolutionMethod::kPorca:
        pair = porca_feasible_scales(orca_halfplane_from_pair(u), dir, param, domain);
        break;
    }
    out = interval_intersect(out, pair);
  }
  return out;
}

int cmd_solution_space(const SolutionSpaceOptions& opts, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  try {
    scenario = load_scenario(opts.scenario_path);
    apply_overrides(scenario, opts.overrides);
    if (opts.params.empty()) throw Error("no parameters given");
    if (!(opts.s_max > 0.0)) throw Error("s_max must be positive");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const Interval domain{0.0, opts.s_max};
  out << "robot,method,param,k,scales,subset_of_previous\n";
  try {
    for (std::size_t i = 0; i < scenario.robots.size(); ++i) {
      std::optional<IntervalSet> previous;
      for (double param : opts.params) {
        const IntervalSet set = solution_space(scenario, i, opts.method, param,
                                               opts.params_are_confidence, domain, opts.horizon);
        std::string k_col = "";
        if (opts.method == SolutionMethod::kPrvoTaylor || opts.method == SolutionMethod::kPrvoExact) {
          k_col = num(opts.params_are_confidence ? cantelli_k(param) : param);
        }
        const std::string subset =
            previous ? (set.is_subset_of(*previous) ? "yes" : "no") : "-";
        out << fmt::format("{},{},{},{},\"{}\",{}\n", i, method_name(opts.method), num(param), k_col,
                           set.to_string(), subset);
        previous = set;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}

int main_entry(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Probabilistic reciprocal velocity obstacle toolkit"};
  app.require_subcommand(1);

  Overrides overrides;
  std::optional<std::uint64_t> seed;
  std::optional<double> k;
  std::optional<double> eta;
  std::optional<int> candidates;
  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Override the scenario seed");
    sub->add_option("--k", k, "Override the surrogate parameter k");
    sub->add_option("--eta", eta, "Override the target probability (k from Cantelli)");
    sub->add_option("--candidates", candidates, "Override the candidate count");
  };

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write CSV/JSON results");
  simulate->add_option("scenario", sim.scenario_path, "Scenario YAML file")->required();
  simulate->add_option("--out", sim.out_dir, "Output directory");
  simulate->add_option("--validate", sim.validate_samples,
                       "Monte Carlo samples per pair for eta.csv (0 = off)");
  add_overrides(simulate);

  ValidateOptions val;
  std::string k_list = "1";
  auto* validate = app.add_subcommand("validate-cantelli",
                                      "Compare sampled satisfaction against the Cantelli bound");
  validate->add_option("scenario", val.scenario_path, "Scenario YAML file")->required();
  validate->add_option("--k-list", k_list, "Comma-separated k values");
  validate->add_option("--samples", val.samples, "Samples per robot pair");
  validate->add_option("--seed", seed, "Override the scenario seed");

  SolutionSpaceOptions sol;
  std::string method = "prvo-exact";
  std::string params = "1";
  std::string confidence;
  auto* solution = app.add_subcommand("solution-space",
                                      "Print feasible time-scale sets per robot and method");
  solution->add_option("scenario", sol.scenario_path, "Scenario YAML file")->required();
  solution->add_option("--method", method, "prvo-taylor | prvo-exact | inflation | porca");
  solution->add_option("--params", params, "Comma-separated k / confidence / eta values");
  solution->add_option("--confidence", confidence,
                       "Comma-separated confidence levels; PRVO methods map them to k");
  solution->add_option("--s-max", sol.s_max, "Upper end of the time-scale domain (default inf)");
  solution->add_option("--horizon", sol.horizon, "Inflation velocity horizon in seconds");
  solution->add_option("--seed", seed, "Override the scenario seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  overrides = {seed, k, eta, candidates};

  try {
    if (simulate->parsed()) {
      sim.overrides = overrides;
      return cmd_simulate(sim, std::cerr);
    }
    if (validate->parsed()) {
      val.k_list = split_numbers(k_list);
      val.overrides = overrides;
      return cmd_validate_cantelli(val, std::cout, std::cerr);
    }
    if (solution->parsed()) {
      const auto m = parse_method(method);
      if (!m) throw Error("unknown method '" + method + "'");
      sol.method = *m;
      if (!confidence.empty()) {
        sol.params = split_numbers(confidence);
        sol.params_are_confidence = *m == SolutionMethod::kPrvoTaylor || *m == SolutionMethod::kPrvoExact;
      } else {
        sol.params = split_numbers(params);
      }
      sol.overrides = overrides;
      return cmd_solution_space(sol, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace prvo::cli
