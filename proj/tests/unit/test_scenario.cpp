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

#include "blindspot/errors.hpp"
#include "blindspot/scenario/scenario.hpp"
#include "blindspot/scenario/scenario_io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

namespace blindspot
{
namespace
{

TEST(ScenarioIo, MinimalStraightLanelet)
{
  const auto sc = scenario_from_json(test::straight_road_doc());
  ASSERT_EQ(sc.network.lanelets().size(), 1u);
  EXPECT_NEAR(sc.network.drivable_area().area(), 150.0 * 3.5, 1e-9);
  EXPECT_NEAR(sc.network.drivable_area().area(), sc.network.polygon(1).area(), 1e-9);
  EXPECT_TRUE(sc.static_obstacles.empty());
  EXPECT_TRUE(sc.dynamic_obstacles.empty());
  EXPECT_NEAR(sc.ego_initial.s, 10.0, 1e-9);
  EXPECT_NEAR(sc.ego_initial.d, 0.0, 1e-9);
}

TEST(ScenarioIo, UnknownSuccessorRejected)
{
  auto doc = test::straight_road_doc();
  doc["lanelets"][0]["successors"] = {99};
  try {
    scenario_from_json(doc);
    FAIL() << "expected an invariant error";
  } catch (const InvariantError & e) {
    EXPECT_NE(std::string(e.what()).find("99"), std::string::npos);
  }
}

TEST(ScenarioIo, ScenarioOneCounts)
{
  const auto sc = load_scenario(test::fixture("scenario1_left_turn"));
  EXPECT_EQ(sc.dynamic_obstacles.size(), 2u);
  EXPECT_EQ(sc.network.lanelets().size(), 8u);
}

TEST(ScenarioIo, ParseErrorsCarryContext)
{
  try {
    parse_scenario("{\n  \"meta\": {\n    \"name\": 3,\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError & e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
  }
  auto doc = test::straight_road_doc();
  doc["ego"]["params"].erase("wheelbase");
  try {
    scenario_from_json(doc);
    FAIL() << "expected a parse error";
  } catch (const ParseError & e) {
    EXPECT_NE(std::string(e.what()).find("wheelbase"), std::string::npos);
  }
}

TEST(ScenarioIo, InvalidFixturesRejected)
{
  EXPECT_THROW(load_scenario(test::fixture("invalid/bad_successor")), InvariantError);
  EXPECT_THROW(load_scenario(test::fixture("invalid/off_road_ego")), InvariantError);
  EXPECT_THROW(load_scenario(test::fixture("invalid/bad_kind")), ParseError);
  EXPECT_THROW(load_scenario(test::fixture("does_not_exist")), Error);
}

TEST(ScenarioIo, EgoParamInvariants)
{
  auto doc = test::straight_road_doc();
  doc["ego"]["params"]["wheelbase"] = 5.0;
  EXPECT_THROW(scenario_from_json(doc), InvariantError);
  doc = test::straight_road_doc();
  doc["ego"]["params"]["a_max"] = 0.0;
  EXPECT_THROW(scenario_from_json(doc), InvariantError);
}

void expect_same(const Scenario & a, const Scenario & b)
{
  EXPECT_EQ(a.name, b.name);
  EXPECT_EQ(a.dt, b.dt);
  EXPECT_EQ(a.horizon_steps, b.horizon_steps);
  EXPECT_EQ(a.goal_s, b.goal_s);
  ASSERT_EQ(a.network.lanelets().size(), b.network.lanelets().size());
  for (std::size_t i = 0; i < a.network.lanelets().size(); ++i) {
    const auto & la = a.network.lanelets()[i];
    const auto & lb = b.network.lanelets()[i];
    EXPECT_EQ(la.id, lb.id);
    EXPECT_EQ(la.successors, lb.successors);
    EXPECT_EQ(la.adjacent_left, lb.adjacent_left);
    EXPECT_EQ(la.adjacent_right, lb.adjacent_right);
    ASSERT_EQ(la.left.size(), lb.left.size());
    for (std::size_t j = 0; j < la.left.size(); ++j) {
      EXPECT_NEAR(la.left[j].x, lb.left[j].x, 1e-12);
      EXPECT_NEAR(la.right[j].y, lb.right[j].y, 1e-12);
    }
  }
  ASSERT_EQ(a.static_obstacles.size(), b.static_obstacles.size());
  for (std::size_t i = 0; i < a.static_obstacles.size(); ++i) {
    EXPECT_NEAR(a.static_obstacles[i].footprint.area(), b.static_obstacles[i].footprint.area(), 1e-12);
  }
  ASSERT_EQ(a.dynamic_obstacles.size(), b.dynamic_obstacles.size());
  for (std::size_t i = 0; i < a.dynamic_obstacles.size(); ++i) {
    const auto & oa = a.dynamic_obstacles[i];
    const auto & ob = b.dynamic_obstacles[i];
    EXPECT_EQ(oa.kind, ob.kind);
    EXPECT_EQ(oa.first_step, ob.first_step);
    ASSERT_EQ(oa.states.size(), ob.states.size());
    for (std::size_t j = 0; j < oa.states.size(); ++j) {
      EXPECT_NEAR(oa.states[j].x, ob.states[j].x, 1e-12);
      EXPECT_NEAR(oa.states[j].y, ob.states[j].y, 1e-12);
      EXPECT_NEAR(oa.states[j].theta, ob.states[j].theta, 1e-12);
      EXPECT_NEAR(oa.states[j].v, ob.states[j].v, 1e-12);
    }
  }
  EXPECT_NEAR(a.ego_initial.x, b.ego_initial.x, 1e-12);
  EXPECT_NEAR(a.ego_initial.v, b.ego_initial.v, 1e-12);
  EXPECT_EQ(a.reference_path.size(), b.reference_path.size());
}

TEST(ScenarioIo, RoundTripAllFixtures)
{
  for (const char * name :
       {"straight_empty", "parked_car", "two_cars", "right_bend", "scenario1_left_turn", "scenario2_truck",
        "scenario4_parked_cars"}) {
    SCOPED_TRACE(name);
    const auto a = load_scenario(test::fixture(name));
    const auto b = parse_scenario(to_json(a).dump());
    expect_same(a, b);
  }
}

TEST(ScenarioModel, DrivableAreaContainsCenterlines)
{
  for (const char * name : {"straight_empty", "right_bend", "scenario1_left_turn", "scenario4_parked_cars"}) {
    SCOPED_TRACE(name);
    const auto sc = load_scenario(test::fixture(name));
    for (const auto & ll : sc.network.lanelets()) {
      for (const auto & p : ll.centerline()) {
        EXPECT_TRUE(sc.network.drivable_area().contains(p) || sc.network.drivable_area().boundary_distance(p) < 1e-9);
      }
    }
  }
}

TEST(ScenarioModel, ObstacleFootprintAreaPoseInvariant)
{
  const auto sc = load_scenario(test::fixture("scenario1_left_turn"));
  for (const auto & o : sc.dynamic_obstacles) {
    for (int k = o.first_step; k < o.first_step + static_cast<int>(o.states.size()); ++k) {
      EXPECT_NEAR(obstacle_footprint(o, k).area(), o.shape.length() * o.shape.width(), 1e-9);
    }
    EXPECT_THROW(o.state_at(o.first_step + static_cast<int>(o.states.size())), OutOfRangeError);
  }
}

TEST(ScenarioModel, ObstacleFootprintCorners)
{
  DynamicObstacle o;
  o.shape = geometry::Shape::rectangle(4.0, 2.0);
  o.states = {{0.0, 0.0, 0.0, 0.0, 0.0}, {0.1, 0.0, 0.0, std::numbers::pi / 2, 0.0}};
  for (const auto & c : obstacle_footprint(o, 0).outer) {
    EXPECT_NEAR(std::abs(c.x), 2.0, 1e-12);
    EXPECT_NEAR(std::abs(c.y), 1.0, 1e-12);
  }
  for (const auto & c : obstacle_footprint(o, 1).outer) {
    EXPECT_NEAR(std::abs(c.x), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(c.y), 2.0, 1e-12);
  }
}

TEST(ScenarioModel, LaneletLookup)
{
  const auto sc = load_scenario(test::fixture("straight_empty"));
  EXPECT_THROW(sc.network.lanelet(42), OutOfRangeError);
  EXPECT_EQ(sc.network.lanelets_containing({20.0, -1.75}), std::vector<int>{1});
  EXPECT_EQ(sc.network.lanelets_containing({20.0, 1.75}), std::vector<int>{2});
  EXPECT_EQ(sc.network.lanelets_containing({20.0, 0.0}), (std::vector<int>{1, 2}));
  EXPECT_TRUE(sc.network.lanelets_containing({20.0, 30.0}).empty());
}

TEST(ScenarioModel, KindNames)
{
  for (auto k : {ObstacleKind::Car, ObstacleKind::Truck, ObstacleKind::Bicycle, ObstacleKind::Pedestrian}) {
    EXPECT_EQ(obstacle_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(obstacle_kind_from_string("hovercraft"), ParseError);
}

}  // namespace
}  // namespace blindspot
