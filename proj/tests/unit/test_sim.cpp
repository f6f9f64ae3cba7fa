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
#include "blindspot/scenario/scenario_io.hpp"
#include "blindspot/sim/run_config.hpp"
#include "blindspot/sim/simulator.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace blindspot
{
namespace
{

std::string read_file(const std::filesystem::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_dir(const std::string & name)
{
  auto dir = std::filesystem::temp_directory_path() / ("blindspot_unit_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(Simulator, EmptyRoadNeverDecelerates)
{
  const auto sc = load_scenario(test::fixture("straight_empty"));
  RunConfig cfg;
  const auto res = run(sc, cfg);
  EXPECT_FALSE(res.collision);
  EXPECT_TRUE(res.goal_reached);
  ASSERT_TRUE(res.min_velocity.has_value());
  EXPECT_GE(*res.min_velocity, sc.ego_initial.v - 1e-6);
}

TEST(Simulator, MinVelocityIsMinimumOverSteps)
{
  const auto sc = load_scenario(test::fixture("parked_car"));
  const auto res = run(sc, RunConfig{});
  ASSERT_FALSE(res.steps.empty());
  double lo = res.steps.front().v;
  for (const auto & s : res.steps) {
    lo = std::min(lo, s.v);
  }
  EXPECT_EQ(*res.min_velocity, lo);
  if (res.collision_step) {
    EXPECT_LE(*res.collision_step, sc.horizon_steps);
  }
}

TEST(Simulator, OutputsAndDeterminism)
{
  const auto sc = load_scenario(test::fixture("parked_car"));
  RunConfig cfg;
  cfg.profile = true;
  cfg.out_dir = temp_dir("a").string();
  const auto a = run(sc, cfg);
  emit_outputs(a, cfg);
  RunConfig cfg_b = cfg;
  cfg_b.out_dir = temp_dir("b").string();
  emit_outputs(run(sc, cfg_b), cfg_b);
  const auto csv = read_file(std::filesystem::path(cfg.out_dir) / "steps.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,t,x,y,s,d,theta,v,a,R,H,p,BTN,DCE,TTC,rejections");
  EXPECT_EQ(csv, read_file(std::filesystem::path(cfg_b.out_dir) / "steps.csv"));
  EXPECT_EQ(
    read_file(std::filesystem::path(cfg.out_dir) / "result.json"),
    read_file(std::filesystem::path(cfg_b.out_dir) / "result.json"));
  const auto prof = nlohmann::json::parse(read_file(std::filesystem::path(cfg.out_dir) / "profile.json"));
  ASSERT_FALSE(prof.empty());
  for (const auto & [name, q] : prof.items()) {
    for (const char * key : {"min", "p25", "median", "p75", "max"}) {
      EXPECT_TRUE(q.contains(key)) << name << " " << key;
    }
  }
  EXPECT_TRUE(prof.contains("criticality_metrics"));
  EXPECT_TRUE(prof.contains("simulation_step"));
}

TEST(Simulator, ImmediateGoalWritesEmptyFiles)
{
  auto doc = test::straight_road_doc(20.0);
  doc["ego"]["goal_s"] = 5.0;
  const auto sc = scenario_from_json(doc);
  RunConfig cfg;
  cfg.out_dir = temp_dir("empty").string();
  const auto res = run(sc, cfg);
  EXPECT_TRUE(res.goal_reached);
  EXPECT_TRUE(res.steps.empty());
  emit_outputs(res, cfg);
  EXPECT_EQ(read_file(std::filesystem::path(cfg.out_dir) / "steps.csv"), "k,t,x,y,s,d,theta,v,a,R,H,p,BTN,DCE,TTC,rejections\n");
  EXPECT_NO_THROW(nlohmann::json::parse(read_file(std::filesystem::path(cfg.out_dir) / "result.json")));
}

TEST(Simulator, RealCollisionDetection)
{
  auto doc = test::straight_road_doc();
  doc["static_obstacles"] = nlohmann::json::array({{{"id", 9}, {"polygon", test::rect_points(12.0, -1.75, 2.0, 2.0)}}});
  const auto sc = scenario_from_json(doc);
  EXPECT_EQ(real_collision(sc, sc.ego_initial, 0), std::optional<int>(9));
  EgoState far = sc.ego_initial;
  far.x = 40.0;
  EXPECT_FALSE(real_collision(sc, far, 0).has_value());
}

TEST(RunConfig, OverridesAndValidation)
{
  nlohmann::json doc = nlohmann::json::object();
  apply_override(doc, "thresholds.R_max=0.01");
  apply_override(doc, "occlusion_aware=false");
  apply_override(doc, "sampling.durations=[2.0,3.0]");
  const auto cfg = run_config_from_json(doc);
  ASSERT_TRUE(cfg.thresholds.r_max.has_value());
  EXPECT_EQ(*cfg.thresholds.r_max, 0.01);
  EXPECT_FALSE(cfg.occlusion_aware);
  EXPECT_EQ(cfg.sampling.durations, (std::vector<double>{2.0, 3.0}));
  EXPECT_THROW(apply_override(doc, "novalue"), ParseError);
  nlohmann::json bad = {{"thresholds", {{"Q_max", 1.0}}}};
  EXPECT_THROW(run_config_from_json(bad), ParseError);
  nlohmann::json neg = {{"thresholds", {{"R_max", -1.0}}}};
  EXPECT_THROW(run_config_from_json(neg), InvariantError);
}

TEST(RunConfig, ThresholdedRunRecordsVerdicts)
{
  const auto sc = load_scenario(test::fixture("parked_car"));
  RunConfig cfg;
  cfg.thresholds.r_max = 0.05;
  const auto res = run(sc, cfg);
  for (const auto & s : res.steps) {
    EXPECT_TRUE(s.valid || s.fallback) << s.k;
    if (!s.fallback) {
      EXPECT_LT(s.r, 0.05);
    }
  }
}

}  // namespace
}  // namespace blindspot
