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

#ifndef BLINDSPOT__PREDICTION__PHANTOM_PREDICTION_HPP_
#define BLINDSPOT__PREDICTION__PHANTOM_PREDICTION_HPP_

#include "blindspot/geometry/shape.hpp"
#include "blindspot/scenario/scenario.hpp"
#include "blindspot/spawn/spawn_identifier.hpp"

#include <memory>
#include <vector>

namespace blindspot
{

/// Constant-speed states at the scenario timestep, index 0 = spawn time.
struct PredictedTrajectory
{
  std::vector<ObstacleState> states;
  /// Route frame the states follow (lane-bound agents only).
  std::shared_ptr<const geometry::CurvilinearFrame> route_frame;
  /// Arc length of states[0] in route_frame.
  double s0{0.0};
};

struct PhantomAgent
{
  int id{0};
  AgentKind kind{AgentKind::Pedestrian};
  ObstacleState initial;
  geometry::Shape shape{geometry::Shape::disc(0.35)};
  std::vector<std::vector<int>> routes;
  std::vector<PredictedTrajectory> predictions;
  SpawnPoint spawn;
};

struct PredictionConfig
{
  double pedestrian_speed{1.4};
  double bicycle_speed{5.0};
  double vehicle_speed{8.33};
  int route_depth{3};
};

geometry::Shape agent_shape(AgentKind kind);

/// Successor chains of up to `max_depth` lanelets starting at `lanelet_id`,
/// depth-first in successor order. Chains stop early at terminal lanelets and
/// never revisit a lanelet. Throws OutOfRangeError for an unknown id.
std::vector<std::vector<int>> find_possible_routes(
  const LaneletNetwork & network, int lanelet_id, int max_depth);

/// Lanelet holding p whose centerline is nearest (smaller id on ties).
/// Throws PlacementError when no lanelet contains p.
int find_current_lanelet(const LaneletNetwork & network, const Point & p);

/// Builds a phantom agent at `sp` with `horizon` prediction steps.
/// Throws PlacementError when a lane-bound kind is not on any lanelet, or a
/// pedestrian spawn point cannot be projected onto the reference path.
PhantomAgent predict_agent(
  const SpawnPoint & sp, AgentKind kind, const Scenario & scenario, int horizon,
  const PredictionConfig & cfg = {}, int id = 0);

/// One agent per (spawn point, suggested kind); unplaceable combinations are skipped.
std::vector<PhantomAgent> predict_agents(
  const std::vector<SpawnPoint> & spawn_points, const Scenario & scenario, int horizon,
  const PredictionConfig & cfg = {});

}  // namespace blindspot

#endif  // BLINDSPOT__PREDICTION__PHANTOM_PREDICTION_HPP_
