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

#ifndef BLINDSPOT__SCENARIO__SCENARIO_IO_HPP_
#define BLINDSPOT__SCENARIO__SCENARIO_IO_HPP_

#include "blindspot/scenario/scenario.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace blindspot
{

/// Reads a scenario document. Throws ParseError (with line or field path) for
/// malformed input and InvariantError for data that breaks a type invariant.
Scenario load_scenario(const std::string & path);
Scenario parse_scenario(const std::string & text);
Scenario scenario_from_json(const nlohmann::json & doc);

nlohmann::json to_json(const Scenario & scenario);
nlohmann::json to_json(const Polygon & polygon);

}  // namespace blindspot

#endif  // BLINDSPOT__SCENARIO__SCENARIO_IO_HPP_
