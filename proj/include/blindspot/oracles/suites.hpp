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

#ifndef BLINDSPOT__ORACLES__SUITES_HPP_
#define BLINDSPOT__ORACLES__SUITES_HPP_

#include "blindspot/scenario/scenario.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace blindspot::oracles
{

/// Outcome of one oracle suite.
struct SuiteReport
{
  std::string name;
  bool pass{true};
  /// One-line statistics.
  std::string summary;
  /// First few failing cases.
  std::vector<std::string> failures;
  double seconds{0.0};
  void fail(const std::string & what);
};

std::vector<std::string> suite_names();

/// Top-level *.json files of the bundled fixture directory, sorted.
std::vector<std::string> default_fixtures();

/// Random two-lane road (straight or curved) with parked and moving obstacles.
Scenario make_fuzz_scenario(std::uint64_t seed);

/// Ego states along the reference path used to probe a fixture (k = 0, 10, 20).
std::vector<std::pair<int, EgoState>> probe_states(const Scenario & scenario);

/// Area partition and grid line-of-sight agreement.
SuiteReport visibility_suite(const std::vector<std::string> & fixtures, std::uint64_t seed, int grid_points = 10000);

/// Placement clauses of every emitted spawn point over fuzzed scenarios.
SuiteReport spawn_suite(int fuzz_count, std::uint64_t seed);

/// Placement clauses of every emitted spawn point on the given fixtures.
SuiteReport spawn_fixture_suite(const std::vector<std::string> & fixtures);

/// Pedestrian perpendicularity, lane containment and constant-speed stepping.
SuiteReport prediction_suite(const std::vector<std::string> & fixtures, int fuzz_count, std::uint64_t seed);

/// Encounter, brake, probability, worst-case TTC and risk oracles.
SuiteReport metrics_suite(
  const std::vector<std::string> & fixtures, std::uint64_t seed, std::size_t mc_samples = 1000000);

/// Cost and feasibility recomputation for every sampled trajectory.
SuiteReport planner_suite(const std::vector<std::string> & fixtures);

void print(const SuiteReport & report, std::ostream & os);

/// Runs suite `name` on `scenario_path` (all bundled fixtures when empty).
bool run_suite(const std::string & name, const std::string & scenario_path, std::uint64_t seed, std::ostream & os);

}  // namespace blindspot::oracles

#endif  // BLINDSPOT__ORACLES__SUITES_HPP_
