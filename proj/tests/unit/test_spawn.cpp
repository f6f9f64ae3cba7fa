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

#include "blindspot/oracles/oracles.hpp"
#include "blindspot/oracles/suites.hpp"
#include "blindspot/scenario/scenario_io.hpp"
#include "blindspot/sensor/sensor_model.hpp"
#include "blindspot/spawn/spawn_identifier.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace blindspot
{
namespace
{

EgoState ego_at(const Scenario & sc, double s, double d = 0.0)
{
  const auto & f = sc.reference_frame();
  const auto p = f.from_curvilinear(s, d);
  return {p.x, p.y, s, d, f.heading(s), sc.ego_initial.v};
}

void expect_valid(const Scenario & sc, const VisibilitySnapshot & snap, const std::vector<SpawnPoint> & sps)
{
  const auto vis = visible_obstacles(sc, snap);
  for (const auto & sp : sps) {
    const auto c = oracles::spawn_clauses(sp, sc, snap, vis);
    EXPECT_TRUE(c.in_drivable_area && c.not_visible && c.clear) << sp.position.x << "," << sp.position.y;
    EXPECT_TRUE(check_spawn_point(sp, sc, snap, vis).all());
  }
}

bool has_kind(const SpawnPoint & sp, AgentKind k)
{
  return std::count(sp.suggested_agent_kinds.begin(), sp.suggested_agent_kinds.end(), k) > 0;
}

TEST(SpawnStatic, NoObstaclesNoPoints)
{
  const auto sc = load_scenario(test::fixture("straight_empty"));
  const auto snap = compute_visibility(sc, sc.ego_initial, 0);
  EXPECT_TRUE(spawn_points_static(sc, sc.ego_initial, snap).empty());
}

TEST(SpawnStatic, ParkedCarStrip)
{
  const auto sc = load_scenario(test::fixture("parked_car"));
  const auto snap = compute_visibility(sc, sc.ego_initial, 0);
  const auto sps = spawn_points_static(sc, sc.ego_initial, snap);
  ASSERT_GE(sps.size(), 1u);
  for (const auto & sp : sps) {
    EXPECT_EQ(sp.cause, SpawnCause::StaticObstacle);
    EXPECT_EQ(sp.source_obstacle_id, std::optional<int>(10));
    EXPECT_TRUE(has_kind(sp, AgentKind::Pedestrian));
    EXPECT_TRUE(snap.occluded.contains(sp.position));
    EXPECT_LT(snap.visible.boundary_distance(sp.position), 1e-3);
  }
  expect_valid(sc, snap, sps);
}

TEST(SpawnStatic, BeyondDistanceThreshold)
{
  auto doc = test::straight_road_doc();
  doc["lanelets"] = nlohmann::json::array({test::straight_lanelet(1, -7.0, 0.0, 150.0)});
  doc["static_obstacles"] = nlohmann::json::array({{{"id", 1}, {"polygon", test::rect_points(30.0, -5.75, 4.5, 2.0)}}});
  auto sc = scenario_from_json(doc);
  auto snap = compute_visibility(sc, sc.ego_initial, 0);
  EXPECT_FALSE(spawn_points_static(sc, sc.ego_initial, snap).empty());
  doc["static_obstacles"] = nlohmann::json::array({{{"id", 1}, {"polygon", test::rect_points(45.0, -5.75, 4.5, 2.0)}}});
  sc = scenario_from_json(doc);
  snap = compute_visibility(sc, sc.ego_initial, 0);
  ASSERT_GT(geometry::min_distance(sc.static_obstacles[0].footprint, sc.ego_initial.position()), 30.0);
  EXPECT_TRUE(spawn_points_static(sc, sc.ego_initial, snap).empty());
}

TEST(SpawnLaneGeometry, FullyVisibleRoad)
{
  auto doc = test::straight_road_doc(20.0);
  doc["lanelets"] = nlohmann::json::array({test::straight_lanelet(1, -3.5, 0.0, 40.0)});
  doc["ego"]["reference_path"] = test::points(test::line(0.0, -1.75, 40.0, -1.75, 8));
  doc["ego"]["goal_s"] = 38.0;
  const auto sc = scenario_from_json(doc);
  const auto snap = compute_visibility(sc, sc.ego_initial, 0);
  EXPECT_TRUE(spawn_points_lane_geometry(sc, sc.ego_initial, snap).empty());
}

TEST(SpawnLaneGeometry, RightBendFirstOccludedPathPoint)
{
  const auto sc = load_scenario(test::fixture("right_bend"));
  const auto ego = ego_at(sc, 56.0, sc.ego_initial.d);
  const auto snap = compute_visibility(sc, ego, 0);
  const auto sps = spawn_points_lane_geometry(sc, ego, snap);
  ASSERT_EQ(sps.size(), 1u);
  const auto & f = sc.reference_frame();
  const double s_sp = f.to_curvilinear(sps[0].position).s;
  EXPECT_GT(s_sp, ego.s);
  double first = INFINITY;
  for (double s = ego.s; s <= f.length(); s += 0.01) {
    if (snap.occluded.contains(f.from_curvilinear(s, 0.0))) {
      first = s;
      break;
    }
  }
  double spacing = 0.0;
  for (std::size_t i = 1; i < f.arc_lengths().size(); ++i) {
    spacing = std::max(spacing, f.arc_lengths()[i] - f.arc_lengths()[i - 1]);
  }
  EXPECT_LE(std::abs(s_sp - first), spacing);
  expect_valid(sc, snap, sps);
}

TEST(SpawnLaneGeometry, OccludedComponentBehindEgoIgnored)
{
  auto doc = test::straight_road_doc(60.0);
  doc["lanelets"] = nlohmann::json::array({test::straight_lanelet(1, -7.0, 0.0, 150.0)});
  doc["static_obstacles"] = nlohmann::json::array({{{"id", 1}, {"polygon", test::rect_points(50.0, -1.75, 4.0, 3.0)}}});
  const auto sc = scenario_from_json(doc);
  const auto snap = compute_visibility(sc, sc.ego_initial, 0);
  ASSERT_TRUE(snap.occluded.contains({40.0, -1.75}));
  for (const auto & sp : spawn_points_lane_geometry(sc, sc.ego_initial, snap)) {
    EXPECT_GT(sc.reference_frame().to_curvilinear(sp.position).s, sc.ego_initial.s);
  }
}

TEST(SpawnDynamic, TruckShadowHidesBicycleLane)
{
  const auto sc = load_scenario(test::fixture("scenario2_truck"));
  bool found = false;
  for (int k = 0; k < 60 && !found; k += 5) {
    const auto ego = ego_at(sc, sc.ego_initial.s + sc.ego_initial.v * k * sc.dt, sc.ego_initial.d);
    const auto snap = compute_visibility(sc, ego, k);
    const auto sps = spawn_points_dynamic(sc, ego, snap);
    if (sps.empty()) {
      continue;
    }
    found = true;
    ASSERT_EQ(sps.size(), 1u);
    const auto & sp = sps[0];
    EXPECT_TRUE(has_kind(sp, AgentKind::Bicycle));
    ASSERT_TRUE(sp.source_obstacle_id.has_value());
    const auto & shadow = snap.dynamic_shadows.at(*sp.source_obstacle_id);
    EXPECT_TRUE(shadow.contains(sp.position));
    const auto fp = spawn_footprint(sp);
    EXPECT_LT(geometry::subtract(fp, snap.occluded).area(), 1e-6);
    expect_valid(sc, snap, sps);
  }
  EXPECT_TRUE(found);
}

TEST(SpawnDynamic, SmallShadowAndFarObstacle)
{
  auto doc = test::straight_road_doc();
  doc["lanelets"] = nlohmann::json::array({test::straight_lanelet(1, -7.0, 0.0, 150.0)});
  auto obstacle = [](int id, double x, double y, double l, double w) {
    nlohmann::json states = nlohmann::json::array();
    for (int k = 0; k <= 60; ++k) {
      states.push_back({{"t", 0.1 * k}, {"x", x}, {"y", y}, {"theta", 0.0}, {"v", 0.0}});
    }
    return nlohmann::json{{"id", id}, {"kind", "car"}, {"shape", {{"length", l}, {"width", w}}}, {"states", states}};
  };
  doc["dynamic_obstacles"] = nlohmann::json::array({obstacle(1, 14.0, -6.85, 0.3, 0.2)});
  auto sc = scenario_from_json(doc);
  auto snap = compute_visibility(sc, sc.ego_initial, 0);
  ASSERT_EQ(snap.dynamic_shadows.count(1), 1u);
  EXPECT_LT(snap.dynamic_shadows.at(1).area(), 2.0);
  EXPECT_TRUE(spawn_points_dynamic(sc, sc.ego_initial, snap).empty());

  doc["dynamic_obstacles"] = nlohmann::json::array({obstacle(2, 55.0, -5.0, 4.5, 2.0)});
  doc["ego"]["params"]["sensor_range"] = 80.0;
  sc = scenario_from_json(doc);
  snap = compute_visibility(sc, sc.ego_initial, 0);
  ASSERT_EQ(snap.dynamic_shadows.count(2), 1u);
  EXPECT_GT(snap.dynamic_shadows.at(2).area(), 2.0);
  EXPECT_TRUE(spawn_points_dynamic(sc, sc.ego_initial, snap).empty());
}

SpawnPoint point(double x, double y, SpawnCause cause = SpawnCause::StaticObstacle)
{
  SpawnPoint sp;
  sp.position = {x, y};
  sp.cause = cause;
  sp.suggested_agent_kinds = {AgentKind::Pedestrian};
  return sp;
}

TEST(SpawnAggregate, Rules)
{
  const auto sc = load_scenario(test::fixture("straight_empty"));
  const auto snap = compute_visibility(sc, sc.ego_initial, 0);
  EXPECT_TRUE(aggregate({}, snap).empty());
  EXPECT_TRUE(aggregate({{}, {}, {}}, snap).empty());
  const auto all = aggregate({{point(0, 0)}, {point(5, 0)}, {point(10, 0)}}, snap);
  EXPECT_EQ(all.size(), 3u);
  const auto merged = aggregate({{point(0, 0)}, {point(0.5, 0.2)}}, snap);
  EXPECT_EQ(merged.size(), 1u);
}

TEST(SpawnFuzz, EveryPointSatisfiesAllClauses)
{
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sc = oracles::make_fuzz_scenario(seed);
    const auto snap = compute_visibility(sc, sc.ego_initial, 0);
    expect_valid(sc, snap, identify_spawn_points(sc, sc.ego_initial, snap));
  }
}

}  // namespace
}  // namespace blindspot
