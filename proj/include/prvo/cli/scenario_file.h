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

#ifndef PRVO_CLI_SCENARIO_FILE_H_
#define PRVO_CLI_SCENARIO_FILE_H_

#include <string>
#include <string_view>

#include "prvo/simulator.h"

namespace prvo::cli {

inline constexpr std::string_view kScenarioVersion = "prvo-scenario/1";

// Parses a YAML scenario document. Unknown keys, missing required keys,
// wrong types and out-of-range values throw prvo::Error with a message of
// the form "<source>:<line>: <reason>".
Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::string& path);

// Canonical YAML rendering: fixed key order, every field present, shortest
// round-trip number formatting. parse(emit(s)) reproduces s exactly.
std::string emit_scenario(const Scenario& scenario);

}  // namespace prvo::cli

#endif  // PRVO_CLI_SCENARIO_FILE_H_
