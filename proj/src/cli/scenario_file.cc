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

#include "prvo/cli/scenario_file.h"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "prvo/error.h"

namespace prvo::cli {
namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const {
    const int line = node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
    throw Error(fmt::format("{}:{}: {}", source_, line, what));
  }

  void require_map(const YAML::Node& node, const std::string& name) const {
    if (!node.IsMap()) fail(node, name + " must be a mapping");
  }

  // Rejects keys outside `allowed`.
  void check_keys(const YAML::Node& map, const std::set<std::string>& allowed,
                  const std::string& where) const {
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.contains(key)) fail(kv.first, fmt::format("unknown key '{}' in {}", key, where));
    }
  }

  YAML::Node required(const YAML::Node& map, const std::string& key, const std::string& where) const {
    const YAML::Node node = map[key];
    if (!node) fail(map, fmt::format("missing required key '{}' in {}", key, where));
    return node;
  }

  double number(const YAML::Node& node, const std::string& name) const {
    if (!node.IsScalar()) fail(node, name + " must be a number");
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, name + " must be a number");
    }
  }

  long long integer(const YAML::Node& node, const std::string& name) const {
    if (!node.IsScalar()) fail(node, name + " must be an integer");
    try {
      return node.as<long long>();
    } catch (const YAML::Exception&) {
      fail(node, name + " must be an integer");
    }
  }

  std::uint64_t unsigned_integer(const YAML::Node& node, const std::string& name) const {
    if (!node.IsScalar() || node.Scalar().starts_with("-")) fail(node, name + " must be an unsigned integer");
    try {
      return node.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      fail(node, name + " must be an unsigned integer");
    }
  }

  bool boolean(const YAML::Node& node, const std::string& name) const {
    if (!node.IsScalar()) fail(node, name + " must be true or false");
    try {
      return node.as<bool>();
    } catch (const YAML::Exception&) {
      fail(node, name + " must be true or false");
    }
  }

  Vec2 vec2(const YAML::Node& node, const std::string& name) const {
    if (!node.IsSequence() || node.size() != 2) fail(node, name + " must be a list [x, y]");
    return {number(node[0], name + "[0]"), number(node[1], name + "[1]")};
  }

  Cov2 cov(const YAML::Node& node, const std::string& name) const {
    if (!node.IsSequence() || node.size() != 3) fail(node, name + " must be a list [xx, xy, yy]");
    const Cov2 c{number(node[0], name + "[0]"), number(node[1], name + "[1]"),
                 number(node[2], name + "[2]")};
    try {
      return checked_covariance(c);
    } catch (const Error& e) {
      fail(node, name + ": " + e.what());
    }
  }

 private:
  std::string source_;
};

RobotSpec parse_robot(const Reader& in, const YAML::Node& node, std::size_t index) {
  const std::string where = fmt::format("robots[{}]", index);
  in.require_map(node, where);
  in.check_keys(node,
                {"start", "goal", "radius", "preferred_speed", "pos_cov", "vel_cov", "actuation_cov"},
                where);
  RobotSpec r;
  r.start = in.vec2(in.required(node, "start", where), where + ".start");
  r.goal = in.vec2(in.required(node, "goal", where), where + ".goal");
  const YAML::Node radius = in.required(node, "radius", where);
  r.radius = in.number(radius, where + ".radius");
  if (!(r.radius > 0.0)) in.fail(radius, where + ".radius must be positive");
  const YAML::Node speed = in.required(node, "preferred_speed", where);
  r.preferred_speed = in.number(speed, where + ".preferred_speed");
  if (!(r.preferred_speed > 0.0)) in.fail(speed, where + ".preferred_speed must be positive");
  if (node["pos_cov"]) r.pos_cov = in.cov(node["pos_cov"], where + ".pos_cov");
  if (node["vel_cov"]) r.vel_cov = in.cov(node["vel_cov"], where + ".vel_cov");
  if (node["actuation_cov"]) r.actuation_cov = in.cov(node["actuation_cov"], where + ".actuation_cov");
  return r;
}

std::string num(double v) { return fmt::format("{}", v); }

void emit_vec(YAML::Emitter& out, const Vec2& v) {
  out << YAML::Flow << YAML::BeginSeq << num(v.x) << num(v.y) << YAML::EndSeq;
}

void emit_cov(YAML::Emitter& out, const Cov2& c) {
  out << YAML::Flow << YAML::BeginSeq << num(c.xx) << num(c.xy) << num(c.yy) << YAML::EndSeq;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) {
  const Reader in(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw Error(fmt::format("{}:{}: {}", source, e.mark.line + 1, e.msg));
  }
  if (!root.IsMap()) throw Error(fmt::format("{}:1: scenario must be a mapping", source));
  in.check_keys(root,
                {"version", "k", "eta", "n_candidates", "s_max", "dt", "max_steps", "goal_tolerance",
                 "seed", "ego_uncertainty_enabled", "validate_samples", "robots"},
                "scenario");

  const YAML::Node version = in.required(root, "version", "scenario");
  if (!version.IsScalar() || version.Scalar() != kScenarioVersion) {
    in.fail(version, fmt::format("unsupported version (supported: {})", kScenarioVersion));
  }

  Scenario s;
  if (root["k"] && root["eta"]) in.fail(root["eta"], "give either k or eta, not both");
  if (const YAML::Node n = root["k"]) {
    s.k = in.number(n, "k");
    if (!(s.k >= 0.0)) in.fail(n, "k must be nonnegative");
  }
  if (const YAML::Node n = root["eta"]) {
    const double eta = in.number(n, "eta");
    if (!(eta >= 0.0 && eta < 1.0)) in.fail(n, "eta must lie in [0, 1)");
    s.eta = eta;
  }
  if (const YAML::Node n = root["n_candidates"]) {
    const long long v = in.integer(n, "n_candidates");
    if (v < 1 || v > 100000) in.fail(n, "n_candidates must be at least 1");
    s.n_candidates = static_cast<int>(v);
  }
  if (const YAML::Node n = root["s_max"]) {
    s.s_max = in.number(n, "s_max");
    if (!(s.s_max > 0.0)) in.fail(n, "s_max must be positive");
  }
  if (const YAML::Node n = root["dt"]) {
    s.dt = in.number(n, "dt");
    if (!(s.dt > 0.0)) in.fail(n, "dt must be positive");
  }
  if (const YAML::Node n = root["max_steps"]) {
    const long long v = in.integer(n, "max_steps");
    if (v < 1 || v > 100000000) in.fail(n, "max_steps must be at least 1");
    s.max_steps = static_cast<int>(v);
  }
  if (const YAML::Node n = root["goal_tolerance"]) {
    s.goal_tolerance = in.number(n, "goal_tolerance");
    if (!(s.goal_tolerance > 0.0)) in.fail(n, "goal_tolerance must be positive");
  }
  if (const YAML::Node n = root["seed"]) s.seed = in.unsigned_integer(n, "seed");
  if (const YAML::Node n = root["ego_uncertainty_enabled"]) {
    s.ego_uncertainty_enabled = in.boolean(n, "ego_uncertainty_enabled");
  }
  if (const YAML::Node n = root["validate_samples"]) {
    const long long v = in.integer(n, "validate_samples");
    if (v < 0 || v > 100000000) in.fail(n, "validate_samples must be nonnegative");
    s.validate_samples = static_cast<int>(v);
  }

  const YAML::Node robots = in.required(root, "robots", "scenario");
  if (!robots.IsSequence() || robots.size() == 0) in.fail(robots, "robots must be a nonempty list");
  for (std::size_t i = 0; i < robots.size(); ++i) s.robots.push_back(parse_robot(in, robots[i], i));
  try {
    s.validate();
  } catch (const Error& e) {
    in.fail(root, e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(fmt::format("{}: cannot open scenario file", path));
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_scenario(buffer.str(), path);
}

std::string emit_scenario(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "version" << YAML::Value << std::string(kScenarioVersion);
  if (s.eta) {
    out << YAML::Key << "eta" << YAML::Value << num(*s.eta);
  } else {
    out << YAML::Key << "k" << YAML::Value << num(s.k);
  }
  out << YAML::Key << "n_candidates" << YAML::Value << s.n_candidates;
  out << YAML::Key << "s_max" << YAML::Value << num(s.s_max);
  out << YAML::Key << "dt" << YAML::Value << num(s.dt);
  out << YAML::Key << "max_steps" << YAML::Value << s.max_steps;
  out << YAML::Key << "goal_tolerance" << YAML::Value << num(s.goal_tolerance);
  out << YAML::Key << "seed" << YAML::Value << s.seed;
  out << YAML::Key << "ego_uncertainty_enabled" << YAML::Value << s.ego_uncertainty_enabled;
  out << YAML::Key << "validate_samples" << YAML::Value << s.validate_samples;
  out << YAML::Key << "robots" << YAML::Value << YAML::BeginSeq;
  for (const RobotSpec& r : s.robots) {
    out << YAML::BeginMap;
    out << YAML::Key << "start" << YAML::Value;
    emit_vec(out, r.start);
    out << YAML::Key << "goal" << YAML::Value;
    emit_vec(out, r.goal);
    out << YAML::Key << "radius" << YAML::Value << num(r.radius);
    out << YAML::Key << "preferred_speed" << YAML::Value << num(r.preferred_speed);
    out << YAML::Key << "pos_cov" << YAML::Value;
    emit_cov(out, r.pos_cov);
    out << YAML::Key << "vel_cov" << YAML::Value;
    emit_cov(out, r.vel_cov);
    out << YAML::Key << "actuation_cov" << YAML::Value;
    emit_cov(out, r.actuation_cov);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace prvo::cli
