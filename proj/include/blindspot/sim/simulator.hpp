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

#ifndef BLINDSPOT__SIM__SIMULATOR_HPP_
#define BLINDSPOT__SIM__SIMULATOR_HPP_

#include "blindspot/assessment/safety_assessor.hpp"
#include "blindspot/metrics/criticality.hpp"
#include "blindspot/planner/frenet_planner.hpp"
#include "blindspot/prediction/phantom_prediction.hpp"
#include "blindspot/profiler.hpp"
#include "blindspot/scenario/scenario.hpp"
#include "blindspot/spawn/spawn_identifier.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace blindspot
{

struct RunConfig
{
  std::string scenario_path;
  ThresholdConfig thresholds;
  CostWeights weights;
  SamplingConfig sampling;
  PredictionConfig agents;
  SpawnConfig spawn;
  MetricsConfig metrics;
  /// Runs the phantom-agent pipeline; when false the planner is the plain baseline.
  bool occlusion_aware{true};
  std::string out_dir{"out"};
  int verbosity{0};
  bool profile{false};
  bool dump_areas{false};
  std::uint64_t seed{0};
};

struct StepRecord
{
  int k{0};
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double s{0.0};
  double d{0.0};
  double theta{0.0};
  double v{0.0};
  double a{0.0};
  double r{0.0};
  double h{0.0};
  double p{0.0};
  double btn{0.0};
  std::optional<double> dce;
  std::optional<double> ttc;
  int rejections{0};
  bool fallback{false};
  bool valid{true};
  int chosen_rank{-1};
  int chosen_sample{-1};
  int spawn_points{0};
  int phantom_agents{0};
};

struct RunResult
{
  std::string scenario;
  bool collision{false};
  std::optional<int> collision_obstacle_id;
  std::optional<int> collision_step;
  bool goal_reached{false};
  std::optional<double> min_velocity;
  std::vector<StepRecord> steps;
  std::map<std::string, Quantiles> profile;
  /// Per-step area dumps (only with dump_areas).
  std::vector<nlohmann::json> areas;
};

/// Closed-loop run of `scenario`. Deterministic for a given configuration.
RunResult run(const Scenario & scenario, const RunConfig & cfg);
/// Loads cfg.scenario_path and runs it.
RunResult run(const RunConfig & cfg);

/// Writes result.json, steps.csv, profile.json, profile_plot.csv and, when
/// present, areas/step_<k>.json into cfg.out_dir.
void emit_outputs(const RunResult & result, const RunConfig & cfg);

std::string steps_csv(const RunResult & result);
nlohmann::json result_json(const RunResult & result, const RunConfig & cfg);
nlohmann::json profile_json(const RunResult & result);

/// Tracks of the obstacles the ego currently sees, extrapolated at constant velocity.
std::vector<ObstacleTrack> visible_tracks(
  const Scenario & scenario, const VisibleObstacles & visible, int k, int horizon_steps);

/// Lanelet speed limit at the ego position, else the fallback target.
double target_speed(const Scenario & scenario, const EgoState & ego, double fallback = 8.33);

/// Real obstacle overlapping the ego at step k, if any.
std::optional<int> real_collision(const Scenario & scenario, const EgoState & ego, int k);

}  // namespace blindspot

#endif  // BLINDSPOT__SIM__SIMULATOR_HPP_
