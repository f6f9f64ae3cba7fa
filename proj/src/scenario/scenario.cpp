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

#include "blindspot/scenario/scenario.hpp"

#include "blindspot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blindspot
{

Polygon Lanelet::polygon() const
{
  Polygon p;
  p.outer.reserve(left.size() + right.size());
  p.outer.insert(p.outer.end(), right.begin(), right.end());
  p.outer.insert(p.outer.end(), left.rbegin(), left.rend());
  return geometry::normalized(std::move(p));
}

std::vector<Point> Lanelet::centerline() const
{
  std::vector<Point> c;
  c.reserve(left.size());
  for (std::size_t i = 0; i < left.size() && i < right.size(); ++i) {
    c.push_back(0.5 * (left[i] + right[i]));
  }
  return c;
}

LaneletNetwork::LaneletNetwork(std::vector<Lanelet> lanelets) : lanelets_(std::move(lanelets))
{
  for (std::size_t i = 0; i < lanelets_.size(); ++i) {
    const auto & l = lanelets_[i];
    const std::string tag = "lanelet " + std::to_string(l.id);
    if (!index_.emplace(l.id, i).second) {
      throw InvariantError("lanelet ids are unique", tag + " appears twice");
    }
    if (l.left.size() != l.right.size() || l.left.size() < 2) {
      throw InvariantError(
        "left and right boundaries have equal point counts >= 2",
        tag + " has " + std::to_string(l.left.size()) + " left / " +
          std::to_string(l.right.size()) + " right points");
    }
    Polygon poly = l.polygon();
    if (poly.empty() || !geometry::is_simple(poly) || poly.area() <= 0.0) {
      throw InvariantError("lanelet polygon is simple", tag + " boundary strip self-intersects");
    }
    polygons_.push_back(std::move(poly));
  }
  for (const auto & l : lanelets_) {
    auto check_ref = [&](int ref, const char * what) {
      if (!index_.count(ref)) {
        throw InvariantError(
          "successor references resolve within the network",
          "lanelet " + std::to_string(l.id) + " " + what + " " + std::to_string(ref) +
            " does not exist");
      }
    };
    for (int s : l.successors) {
      check_ref(s, "successor");
    }
    if (l.adjacent_left) {
      check_ref(*l.adjacent_left, "adjacent_left");
    }
    if (l.adjacent_right) {
      check_ref(*l.adjacent_right, "adjacent_right");
    }
  }
  for (const auto & l : lanelets_) {
    double half = 0.0;
    for (std::size_t i = 0; i < l.left.size(); ++i) {
      half = std::max(half, geometry::distance(l.left[i], l.right[i]));
    }
    centerlines_.push_back(
      std::make_shared<const geometry::CurvilinearFrame>(l.centerline(), half + 1.0));
  }
  drivable_area_ = geometry::unite_all(polygons_);
  boundary_ = drivable_area_.edges();
}

const Lanelet & LaneletNetwork::lanelet(int id) const
{
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw OutOfRangeError("unknown lanelet id " + std::to_string(id));
  }
  return lanelets_[it->second];
}

const Polygon & LaneletNetwork::polygon(int id) const
{
  lanelet(id);
  return polygons_[index_.at(id)];
}

const geometry::CurvilinearFrame & LaneletNetwork::centerline_frame(int id) const
{
  lanelet(id);
  return *centerlines_[index_.at(id)];
}

std::vector<int> LaneletNetwork::lanelets_containing(const Point & p, double tolerance) const
{
  std::vector<int> ids;
  for (std::size_t i = 0; i < lanelets_.size(); ++i) {
    const auto & poly = polygons_[i];
    if (poly.contains(p) || (tolerance > 0.0 && geometry::min_distance(poly, p) <= tolerance)) {
      ids.push_back(lanelets_[i].id);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

const char * to_string(ObstacleKind kind)
{
  switch (kind) {
    case ObstacleKind::Car:
      return "car";
    case ObstacleKind::Truck:
      return "truck";
    case ObstacleKind::Bicycle:
      return "bicycle";
    case ObstacleKind::Pedestrian:
      return "pedestrian";
  }
  return "car";
}

ObstacleKind obstacle_kind_from_string(const std::string & s)
{
  if (s == "car") {
    return ObstacleKind::Car;
  }
  if (s == "truck") {
    return ObstacleKind::Truck;
  }
  if (s == "bicycle") {
    return ObstacleKind::Bicycle;
  }
  if (s == "pedestrian") {
    return ObstacleKind::Pedestrian;
  }
  throw ParseError("unknown obstacle kind '" + s + "'");
}

const ObstacleState & DynamicObstacle::state_at(int k) const
{
  if (!present_at(k)) {
    throw OutOfRangeError(
      "obstacle " + std::to_string(id) + " has no state at step " + std::to_string(k));
  }
  return states[static_cast<std::size_t>(k - first_step)];
}

Polygon DynamicObstacle::footprint(int k) const { return shape.footprint(state_at(k).pose()); }

Polygon obstacle_footprint(const DynamicObstacle & obstacle, int k) { return obstacle.footprint(k); }

Polygon EgoParams::footprint(const geometry::Pose & pose) const
{
  return geometry::make_rectangle(pose.position(), pose.theta, length, width);
}

void finalize(Scenario & sc)
{
  if (!(sc.dt > 0.0)) {
    throw InvariantError("dt > 0", "dt = " + std::to_string(sc.dt));
  }
  if (sc.horizon_steps < 0) {
    throw InvariantError("horizon_steps >= 0", std::to_string(sc.horizon_steps));
  }
  const auto & p = sc.ego_params;
  if (!(p.length > 0 && p.width > 0 && p.wheelbase > 0 && p.sensor_range > 0 && p.a_max > 0 &&
        p.v_max > 0)) {
    throw InvariantError("ego params strictly positive", "a parameter is <= 0");
  }
  if (!(p.wheelbase < p.length)) {
    throw InvariantError("wheelbase < length", "wheelbase exceeds vehicle length");
  }
  sc.frame = std::make_shared<const geometry::CurvilinearFrame>(sc.reference_path);
  const Point ego = sc.ego_initial.position();
  if (!sc.network.drivable_area().contains(ego)) {
    throw InvariantError("ego_initial lies inside drivable_area", "ego start is off-road");
  }
  const auto f = sc.frame->to_curvilinear(ego);
  sc.ego_initial.s = f.s;
  sc.ego_initial.d = f.d;
  for (auto & obs : sc.dynamic_obstacles) {
    if (obs.states.empty()) {
      throw InvariantError(
        "dynamic obstacle states non-empty", "obstacle " + std::to_string(obs.id));
    }
    const double t0 = obs.states.front().t;
    obs.first_step = static_cast<int>(std::lround(t0 / sc.dt));
    for (std::size_t i = 0; i < obs.states.size(); ++i) {
      const double expected = (obs.first_step + static_cast<double>(i)) * sc.dt;
      if (std::abs(obs.states[i].t - expected) > 1e-6) {
        throw InvariantError(
          "states are contiguous in time with the scenario dt",
          "obstacle " + std::to_string(obs.id) + " state " + std::to_string(i) + " at t = " +
            std::to_string(obs.states[i].t));
      }
    }
  }
  for (const auto & obs : sc.static_obstacles) {
    if (obs.footprint.empty() || !geometry::is_simple(obs.footprint) ||
        !(obs.footprint.area() > 0.0)) {
      throw InvariantError(
        "footprint is simple, non-empty area", "static obstacle " + std::to_string(obs.id));
    }
  }
}

}  // namespace blindspot
