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

#ifndef BLINDSPOT__SPAWN__SPAWN_IDENTIFIER_HPP_
#define BLINDSPOT__SPAWN__SPAWN_IDENTIFIER_HPP_

#include "blindspot/scenario/scenario.hpp"
#include "blindspot/sensor/sensor_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blindspot
{

enum class AgentKind { Pedestrian, Bicycle, Vehicle };
enum class SpawnCause { StaticObstacle, LaneGeometry, DynamicObstacle };

const char * to_string(AgentKind kind);
const char * to_string(SpawnCause cause);

struct SpawnPoint
{
  Point position;
  SpawnCause cause{SpawnCause::LaneGeometry};
  std::optional<int> source_obstacle_id;
  std::vector<AgentKind> suggested_agent_kinds;
  /// Heading used for the footprint-to-be (dynamic shadows only).
  double heading{0.0};
};

struct SpawnConfig
{
  /// Euclidean reach for static obstacles [m].
  double static_distance{30.0};
  /// Curvilinear reach for dynamic obstacles [m].
  double dynamic_distance{40.0};
  /// Extension of the perpendicular lines beyond the obstacle's s-extent [m].
  double lateral_margin{0.5};
  double pedestrian_radius{0.35};
  double min_pa_length{2.0};
  double min_pa_width{1.0};
  double dedup_radius{1.0};
  /// Offset of a candidate from the visible boundary into the occluded side [m].
  double inset{5e-4};
};

/// Placement predicate every emitted spawn point satisfies.
struct SpawnChecks
{
  bool in_drivable_area{false};
  bool occluded{false};
  bool clear_of_visible_obstacles{false};
  bool all() const { return in_drivable_area && occluded && clear_of_visible_obstacles; }
};

/// Polygon occupied by an agent spawned at `sp` (pedestrian disc, or the
/// minimal PA rectangle for dynamic shadows).
Polygon spawn_footprint(const SpawnPoint & sp, const SpawnConfig & cfg = {});

SpawnChecks check_spawn_point(
  const SpawnPoint & sp, const Scenario & scenario, const VisibilitySnapshot & snapshot,
  const VisibleObstacles & visible, const SpawnConfig & cfg = {});

std::vector<SpawnPoint> spawn_points_static(
  const Scenario & scenario, const EgoState & ego, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg = {});

std::vector<SpawnPoint> spawn_points_lane_geometry(
  const Scenario & scenario, const EgoState & ego, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg = {});

std::vector<SpawnPoint> spawn_points_dynamic(
  const Scenario & scenario, const EgoState & ego, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg = {});

/// Concatenates, then merges same-cause points closer than cfg.dedup_radius,
/// keeping the one nearer the visible boundary. Order of first appearance is kept.
std::vector<SpawnPoint> aggregate(
  const std::vector<std::vector<SpawnPoint>> & lists, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg = {});

/// All three identifiers followed by aggregate().
std::vector<SpawnPoint> identify_spawn_points(
  const Scenario & scenario, const EgoState & ego, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg = {});

}  // namespace blindspot

#endif  // BLINDSPOT__SPAWN__SPAWN_IDENTIFIER_HPP_
