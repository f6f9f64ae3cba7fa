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
#include "blindspot/oracles/suites.hpp"
#include "blindspot/prediction/phantom_prediction.hpp"
#include "blindspot/scenario/scenario_io.hpp"
#include "blindspot/sensor/sensor_model.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace blindspot
{
namespace
{

nlohmann::json segment_lanelet(int id, Point a, Point b, double half_width, std::vector<int> successors)
{
  const Point t = geometry::unit(b - a);
  const Point n = geometry::perp(t);
  std::vector<std::pair<double, double>> left;
  std::vector<std::pair<double, double>> right;
  for (int i = 0; i <= 10; ++i) {
    const Point c = a + (i / 10.0) * (b - a);
    const Point l = c + half_width * n;
    const Point r = c - half_width * n;
    left.emplace_back(l.x, l.y);
    right.emplace_back(r.x, r.y);
  }
  return {{"id", id}, {"left", test::points(left)}, {"right", test::points(right)}, {"successors", successors}};
}

/// Lanelet 1 runs east to (20, 0) and forks into straight (2), left (3) and right (4).
nlohmann::json fork_doc()
{
  auto doc = test::straight_road_doc(2.0, 5.0);
  doc["lanelets"] = nlohmann::json::array(
    {segment_lanelet(1, {0, 0}, {20, 0}, 1.75, {2, 3, 4}), segment_lanelet(2, {20, 0}, {60, 0}, 1.75, {}),
     segment_lanelet(3, {20, 0}, {40, 30}, 1.75, {}), segment_lanelet(4, {20, 0}, {40, -30}, 1.75, {})});
  doc["ego"]["initial"]["y"] = 0.0;
  doc["ego"]["reference_path"] = test::points(test::line(0.0, 0.0, 60.0, 0.0, 12));
  doc["ego"]["goal_s"] = 55.0;
  return doc;
}

TEST(Routes, LeafAndForks)
{
  const auto sc = scenario_from_json(fork_doc());
  EXPECT_EQ(find_possible_routes(sc.network, 2, 3), (std::vector<std::vector<int>>{{2}}));
  const auto routes = find_possible_routes(sc.network, 1, 2);
  EXPECT_EQ(routes.size(), 3u);
  for (const auto & r : routes) {
    EXPECT_EQ(r.front(), 1);
    EXPECT_EQ(r.size(), 2u);
  }
  EXPECT_EQ(find_possible_routes(sc.network, 1, 1), (std::vector<std::vector<int>>{{1}}));
}

TEST(Routes, YSplit)
{
  auto doc = fork_doc();
  doc["lanelets"][0]["successors"] = {3, 4};
  const auto sc = scenario_from_json(doc);
  EXPECT_EQ(find_possible_routes(sc.network, 1, 3).size(), 2u);
}

TEST(Routes, CurrentLanelet)
{
  const auto sc = scenario_from_json(fork_doc());
  EXPECT_EQ(find_current_lanelet(sc.network, {10.0, 0.5}), 1);
  EXPECT_THROW(find_current_lanelet(sc.network, {10.0, 20.0}), PlacementError);
}

TEST(PredictAgent, PedestrianCrossesPerpendicular)
{
  const auto sc = scenario_from_json(test::straight_road_doc());
  SpawnPoint sp;
  sp.position = {30.0, -3.0};
  const auto pa = predict_agent(sp, AgentKind::Pedestrian, sc, 30);
  ASSERT_EQ(pa.predictions.size(), 1u);
  const auto & st = pa.predictions[0].states;
  ASSERT_EQ(st.size(), 31u);
  const Point tangent = sc.reference_frame().tangent(20.0);
  for (std::size_t k = 1; k < st.size(); ++k) {
    const Point step{st[k].x - st[k - 1].x, st[k].y - st[k - 1].y};
    EXPECT_NEAR(geometry::norm(step), 0.14, 1e-12);
    EXPECT_NEAR(geometry::dot(geometry::unit(step), tangent), 0.0, 1e-12);
    EXPECT_GT(step.y, 0.0);
  }
  EXPECT_NEAR(pa.shape.radius(), 0.35, 1e-12);
}

TEST(PredictAgent, BicycleArcLengthWalk)
{
  auto doc = test::straight_road_doc(2.0, 5.0);
  doc["lanelets"] = nlohmann::json::array(
    {segment_lanelet(1, {0, 0}, {25, 0}, 1.75, {2}), segment_lanelet(2, {25, 0}, {50, 10}, 1.75, {3}),
     segment_lanelet(3, {50, 10}, {75, 10}, 1.75, {4}), segment_lanelet(4, {75, 10}, {100, 30}, 1.75, {})});
  doc["ego"]["initial"]["y"] = 0.0;
  doc["ego"]["reference_path"] = test::points(test::line(0.0, 0.0, 25.0, 0.0, 5));
  doc["ego"]["goal_s"] = 24.0;
  const auto sc = scenario_from_json(doc);
  SpawnPoint sp;
  sp.position = {15.0, 0.0};
  const auto pa = predict_agent(sp, AgentKind::Bicycle, sc, 30);
  ASSERT_EQ(pa.predictions.size(), 1u);
  const auto & last = pa.predictions[0].states.back();
  const Point bend{25.0, 0.0};
  const Point dir = geometry::unit(Point{25.0, 10.0});
  const Point expected = bend + 5.0 * dir;
  EXPECT_NEAR(last.x, expected.x, 1e-6);
  EXPECT_NEAR(last.y, expected.y, 1e-6);
  EXPECT_NEAR(last.v, 5.0, 1e-12);
}

TEST(PredictAgent, VehicleAtForkHasThreePredictions)
{
  const auto sc = scenario_from_json(fork_doc());
  SpawnPoint sp;
  sp.position = {5.0, 0.0};
  PredictionConfig cfg;
  cfg.route_depth = 2;
  const auto pa = predict_agent(sp, AgentKind::Vehicle, sc, 30, cfg);
  ASSERT_EQ(pa.predictions.size(), 3u);
  for (const auto & p : pa.predictions) {
    EXPECT_EQ(p.states.front().x, pa.predictions[0].states.front().x);
    EXPECT_EQ(p.states.front().y, pa.predictions[0].states.front().y);
    EXPECT_EQ(p.states.front().theta, pa.predictions[0].states.front().theta);
  }
}

TEST(PredictAgent, ShapesPerKind)
{
  EXPECT_EQ(agent_shape(AgentKind::Pedestrian).type(), geometry::Shape::Type::Disc);
  EXPECT_GT(agent_shape(AgentKind::Vehicle).length(), agent_shape(AgentKind::Bicycle).length());
}

TEST(PredictAgent, PedestrianConstantSpeedFuzz)
{
  int agents = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sc = oracles::make_fuzz_scenario(seed);
    const auto snap = compute_visibility(sc, sc.ego_initial, 0);
    const auto sps = identify_spawn_points(sc, sc.ego_initial, snap);
    for (const auto & pa : predict_agents(sps, sc, 30)) {
      ++agents;
      for (const auto & pred : pa.predictions) {
        ASSERT_EQ(pred.states.size(), 31u);
        for (std::size_t k = 1; k < pred.states.size(); ++k) {
          const double v = pred.states[k - 1].v;
          if (!pred.route_frame) {
            EXPECT_NEAR(
              std::hypot(pred.states[k].x - pred.states[k - 1].x, pred.states[k].y - pred.states[k - 1].y), v * sc.dt,
              1e-6);
          }
        }
      }
    }
  }
  EXPECT_GT(agents, 0);
}

TEST(PredictAgent, ContractSuite)
{
  const auto rep = oracles::prediction_suite(oracles::default_fixtures(), 100, 0);
  EXPECT_TRUE(rep.pass) << rep.summary << (rep.failures.empty() ? "" : "\n" + rep.failures.front());
}

}  // namespace
}  // namespace blindspot
