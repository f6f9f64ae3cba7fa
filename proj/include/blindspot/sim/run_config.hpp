// Copyright 2026 The Blindspot Authors
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

#ifndef BLINDSPOT__SIM__RUN_CONFIG_HPP_
#define BLINDSPOT__SIM__RUN_CONFIG_HPP_

#include "blindspot/sim/simulator.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace blindspot
{

/// Sets the value at a dotted path ("thresholds.R_max=0.01"). The value is
/// parsed as JSON when possible, else stored as a string. Throws ParseError.
void apply_override(nlohmann::json & doc, const std::string & assignment);

/// Builds a RunConfig from a config document; unknown keys are rejected with
/// ParseError, invalid values with InvariantError.
RunConfig run_config_from_json(const nlohmann::json & doc);

nlohmann::json load_json_file(const std::string & path);

}  // namespace blindspot

#endif  // BLINDSPOT__SIM__RUN_CONFIG_HPP_
