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

#ifndef BLINDSPOT__ORACLES__ORACLES_HPP_
#define BLINDSPOT__ORACLES__ORACLES_HPP_

#include "blindspot/metrics/criticality.hpp"
#include "blindspot/planner/frenet_planner.hpp"
#include "blindspot/scenario/scenario.hpp"
#include "blindspot/sensor/sensor_model.hpp"
#include "blindspot/spawn/spawn_identifier.hpp"

#include <cstdint>
#include <optional>
#include <vector>

/// Brute-force reference implementations. They share only plain data types
/// with the library and re-derive every geometric predicate from scratch.
namespace blindspot::oracles
{

using geometry::Point;

// Elementary predicates.
bool point_in_ring(const std::vector<Point> & ring, const Point & p);
bool segments_cross(const Point & a, const Point & b, const Point & c, const Point & d);
double point_segment(const Point & p, const Point & a, const Point & b);
/// Corners of a rectangle centred at pose, counter-clockwise.
std::vector<Point> rectangle_corners(const geometry::Pose & pose, double length, double width);
/// Separating-axis overlap test for two convex polygons (closed sets).
bool convex_overlap(const std::vector<Point> & a, const std::vector<Point> & b);
/// Distance between two convex polygons; 0 when they overlap.
double convex_distance(const std::vector<Point> & a, const std::vector<Point> & b);
/// Distance between an ego-style rectangle and a road-user shape; 0 on overlap.
double body_distance(
  const std::vector<Point> & rect, const geometry::Shape & shape, const geometry::Pose & pose);

// Drivable area and sensing.
bool in_drivable_area(const Scenario & scenario, const Point & p);
/// Ground-truth visibility of q: within range, on the road, outside every
/// obstacle, and the sight line from the ego crosses no occluder.
bool truly_visible(const Scenario & scenario, const Point & origin, int k, const Point & q);

struct GridAgreement
{
  int samples{0};
  int compared{0};
  int agree{0};
  double fraction() const { return compared ? static_cast<double>(agree) / compared : 1.0; }
};

GridAgreement grid_visibility(
  const Scenario & scenario, const VisibilitySnapshot & snapshot, int n_points, double band,
  std::uint64_t seed);

/// Visibility of obstacles by line of sight to boundary points every 5 cm.
bool obstacle_truly_visible(const Scenario & scenario, const Point & origin, int k, const Polygon & footprint);

struct SpawnClauses
{
  bool in_drivable_area{false};
  bool not_visible{false};
  bool clear{false};
};

/// Independent evaluation of the three placement clauses.
SpawnClauses spawn_clauses(
  const SpawnPoint & sp, const Scenario & scenario, const VisibilitySnapshot & snapshot,
  const VisibleObstacles & visible);

// Metrics.
struct FineEncounter
{
  double dce{0.0};
  double ttce{0.0};
  std::optional<double> first_overlap;
};

/// Dense evaluation at dt / substeps over linearly interpolated states. The
/// encounter time is the earliest sample within 1e-6 m of the minimum.
FineEncounter fine_encounter(
  const EgoTrajectory & ego, const EgoParams & params, const PredictedTrajectory & pa,
  const geometry::Shape & shape, int substeps = 10);

/// Smallest deceleration on a `step` grid that keeps the ego clear of all predictions.
double grid_brake(
  const EgoTrajectory & ego, const EgoParams & params, const std::vector<PhantomAgent> & agents,
  double step = 0.01, double a_max_search = 12.0);

double monte_carlo_cp(
  const EgoTrajectory & ego, const EgoParams & params, const PhantomAgent & pa, std::size_t samples,
  std::uint64_t seed, double sigma0 = 0.2, double sigma_rate = 0.3);

/// First overlap of two discs growing at the given speeds, simulated at `step`.
std::optional<double> growing_discs(
  const Point & a, double ra, const Point & b, double rb, double va, double vb, double step = 1e-3,
  double t_max = 1000.0);

/// Exhaustive max of p_i * h_i.
double exhaustive_risk(const std::vector<double> & p, const std::vector<double> & h);

/// Cost recomputed from the sampling parameters with independently solved polynomials.
double brute_force_cost(
  const EgoTrajectory & traj, const EgoParams & params, const std::vector<ObstacleTrack> & tracks,
  const CostWeights & w, double v_target, double epsilon);

/// Per-step bound re-check.
bool brute_force_feasible(const EgoTrajectory & traj, const EgoParams & params, double delta_max);

}  // namespace blindspot::oracles

#endif  // BLINDSPOT__ORACLES__ORACLES_HPP_
