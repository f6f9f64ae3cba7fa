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

#ifndef BLINDSPOT__SCENARIO__SCENARIO_HPP_
#define BLINDSPOT__SCENARIO__SCENARIO_HPP_

#include "blindspot/geometry/curvilinear.hpp"
#include "blindspot/geometry/polygon.hpp"
#include "blindspot/geometry/shape.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace blindspot
{

using geometry::Point;
using geometry::Polygon;
using geometry::PolygonSet;

struct Lanelet
{
  int id{0};
  std::vector<Point> left;
  std::vector<Point> right;
  std::vector<int> successors;
  std::optional<int> adjacent_left;
  std::optional<int> adjacent_right;
  std::optional<double> speed_limit;

  /// Quad strip between the boundaries, counter-clockwise.
  Polygon polygon() const;
  std::vector<Point> centerline() const;
};

/// Immutable lanelet graph with its cached drivable area.
class LaneletNetwork
{
public:
  LaneletNetwork() = default;
  /// Validates every Lanelet invariant; throws InvariantError.
  explicit LaneletNetwork(std::vector<Lanelet> lanelets);

  const std::vector<Lanelet> & lanelets() const { return lanelets_; }
  /// Throws OutOfRangeError for an unknown id.
  const Lanelet & lanelet(int id) const;
  bool has(int id) const { return index_.count(id) > 0; }
  const Polygon & polygon(int id) const;
  const geometry::CurvilinearFrame & centerline_frame(int id) const;

  const PolygonSet & drivable_area() const { return drivable_area_; }
  /// Every ring edge of the drivable area (outer boundaries and holes).
  const std::vector<geometry::Segment> & boundary() const { return boundary_; }

  /// Ids of lanelets whose polygon contains p (within `tolerance`), ascending.
  std::vector<int> lanelets_containing(const Point & p, double tolerance = 1e-9) const;

private:
  std::vector<Lanelet> lanelets_;
  std::map<int, std::size_t> index_;
  std::vector<Polygon> polygons_;
  std::vector<std::shared_ptr<const geometry::CurvilinearFrame>> centerlines_;
  PolygonSet drivable_area_;
  std::vector<geometry::Segment> boundary_;
};

struct StaticObstacle
{
  int id{0};
  Polygon footprint;
};

enum class ObstacleKind { Car, Truck, Bicycle, Pedestrian };

const char * to_string(ObstacleKind kind);
ObstacleKind obstacle_kind_from_string(const std::string & s);

struct ObstacleState
{
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double theta{0.0};
  double v{0.0};

  geometry::Pose pose() const { return {x, y, theta}; }
};

/// Open-loop road user replaying recorded states at the scenario timestep.
struct DynamicObstacle
{
  int id{0};
  ObstacleKind kind{ObstacleKind::Car};
  geometry::Shape shape{geometry::Shape::rectangle(4.5, 2.0)};
  std::vector<ObstacleState> states;
  /// Scenario step index of states.front().
  int first_step{0};

  bool present_at(int k) const
  {
    return k >= first_step && k < first_step + static_cast<int>(states.size());
  }
  /// Throws OutOfRangeError when k is outside the recorded range.
  const ObstacleState & state_at(int k) const;
  Polygon footprint(int k) const;
};

/// Shape at `state`'s pose.
Polygon obstacle_footprint(const DynamicObstacle & obstacle, int k);

struct EgoState
{
  double x{0.0};
  double y{0.0};
  double s{0.0};
  double d{0.0};
  double theta{0.0};
  double v{0.0};

  Point position() const { return {x, y}; }
};

struct EgoParams
{
  double length{4.5};
  double width{2.0};
  double wheelbase{2.7};
  double sensor_range{50.0};
  /// Maximum braking deceleration, positive [m/s^2].
  double a_max{8.0};
  double v_max{15.0};

  Polygon footprint(const geometry::Pose & pose) const;
};

struct Scenario
{
  std::string name;
  LaneletNetwork network;
  std::vector<StaticObstacle> static_obstacles;
  std::vector<DynamicObstacle> dynamic_obstacles;
  EgoState ego_initial;
  EgoParams ego_params;
  std::vector<Point> reference_path;
  std::shared_ptr<const geometry::CurvilinearFrame> frame;
  double dt{0.1};
  int horizon_steps{100};
  double goal_s{0.0};

  const geometry::CurvilinearFrame & reference_frame() const { return *frame; }
};

/// Checks the cross-field invariants (dt, reference path, ego placement,
/// obstacle timing); fills ego_initial.s/d and `frame`. Throws InvariantError.
void finalize(Scenario & scenario);

}  // namespace blindspot

#endif  // BLINDSPOT__SCENARIO__SCENARIO_HPP_
