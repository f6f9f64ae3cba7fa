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

#ifndef BLINDSPOT__SENSOR__SENSOR_MODEL_HPP_
#define BLINDSPOT__SENSOR__SENSOR_MODEL_HPP_

#include "blindspot/geometry/visibility.hpp"
#include "blindspot/scenario/scenario.hpp"

#include <map>
#include <vector>

namespace blindspot
{

/// Visible and occluded parts of the sensed road at one timestep.
struct VisibilitySnapshot
{
  int k{0};
  Point origin;
  double range{0.0};
  /// Sensor disc clipped to the drivable area.
  PolygonSet sensed;
  PolygonSet visible;
  PolygonSet occluded;
  /// Occluded area attributable to each obstacle alone, keyed by obstacle id.
  std::map<int, PolygonSet> static_shadows;
  std::map<int, PolygonSet> dynamic_shadows;
  /// Road boundary edges plus every obstacle edge present at k.
  std::vector<geometry::Segment> occluders;
};

struct SensorOptions
{
  geometry::VisibilityOptions visibility;
  bool compute_shadows{true};
};

/// Sensor model for the ego at `ego`'s position and scenario step `k`.
/// Every dynamic obstacle with a recorded state at k occludes, seen or not.
VisibilitySnapshot compute_visibility(
  const Scenario & scenario, const EgoState & ego, int k, const SensorOptions & options = {});

struct VisibleObstacles
{
  std::vector<int> static_ids;
  std::vector<int> dynamic_ids;
};

/// An obstacle is visible when part of its boundary within sensor range has an
/// unobstructed line of sight from the ego.
VisibleObstacles visible_obstacles(const Scenario & scenario, const VisibilitySnapshot & snapshot);

/// Boundary points of `footprint` (vertices plus edge samples at `spacing`).
std::vector<Point> boundary_samples(const Polygon & footprint, double spacing);

}  // namespace blindspot

#endif  // BLINDSPOT__SENSOR__SENSOR_MODEL_HPP_
