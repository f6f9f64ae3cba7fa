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

#include "blindspot/sim/simulator.hpp"

#include "blindspot/errors.hpp"
#include "blindspot/scenario/scenario_io.hpp"
#include "blindspot/sensor/sensor_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace blindspot
{

namespace
{

using nlohmann::json;

json polygon_set_json(const PolygonSet & set)
{
  json arr = json::array();
  for (const auto & p : set.polygons) {
    arr.push_back(to_json(p));
  }
  return arr;
}

json area_dump(
  int k, const VisibilitySnapshot & snap, const std::vector<SpawnPoint> & sps,
  const std::vector<PhantomAgent> & agents)
{
  json j;
  j["k"] = k;
  j["origin"] = {snap.origin.x, snap.origin.y};
  j["visible"] = polygon_set_json(snap.visible);
  j["occluded"] = polygon_set_json(snap.occluded);
  json sp_arr = json::array();
  for (const auto & sp : sps) {
    json kinds = json::array();
    for (auto kind : sp.suggested_agent_kinds) {
      kinds.push_back(to_string(kind));
    }
    sp_arr.push_back(
      {{"position", {sp.position.x, sp.position.y}},
       {"cause", to_string(sp.cause)},
       {"source_obstacle_id", sp.source_obstacle_id ? json(*sp.source_obstacle_id) : json(nullptr)},
       {"kinds", kinds}});
  }
  j["spawn_points"] = sp_arr;
  json pa_arr = json::array();
  for (const auto & a : agents) {
    json preds = json::array();
    for (const auto & pred : a.predictions) {
      json pts = json::array();
      for (const auto & s : pred.states) {
        pts.push_back({s.x, s.y});
      }
      preds.push_back(pts);
    }
    pa_arr.push_back({{"id", a.id}, {"kind", to_string(a.kind)}, {"routes", a.routes}, {"predictions", preds}});
  }
  j["phantom_agents"] = pa_arr;
  return j;
}

std::string fmt_double(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt_optional(const std::optional<double> & v) { return v ? fmt_double(*v) : std::string(); }

}  // namespace

std::vector<ObstacleTrack> visible_tracks(
  const Scenario & scenario, const VisibleObstacles & visible, int k, int horizon_steps)
{
  std::vector<ObstacleTrack> tracks;
  for (const auto & o : scenario.static_obstacles) {
    if (std::find(visible.static_ids.begin(), visible.static_ids.end(), o.id) != visible.static_ids.end()) {
      ObstacleTrack t;
      t.id = o.id;
      t.is_static = true;
      t.footprint = o.footprint;
      tracks.push_back(std::move(t));
    }
  }
  for (const auto & o : scenario.dynamic_obstacles) {
    if (std::find(visible.dynamic_ids.begin(), visible.dynamic_ids.end(), o.id) == visible.dynamic_ids.end()) {
      continue;
    }
    const auto & st = o.state_at(k);
    ObstacleTrack t;
    t.id = o.id;
    t.shape = o.shape;
    t.speed = st.v;
    const geometry::Point dir = geometry::from_angle(st.theta);
    for (int j = 0; j <= horizon_steps; ++j) {
      const geometry::Point p = geometry::Point{st.x, st.y} + (st.v * j * scenario.dt) * dir;
      t.poses.push_back({p.x, p.y, st.theta});
    }
    t.footprint = t.shape.footprint(t.poses.front());
    tracks.push_back(std::move(t));
  }
  return tracks;
}

double target_speed(const Scenario & scenario, const EgoState & ego, double fallback)
{
  try {
    const int id = find_current_lanelet(scenario.network, ego.position());
    if (const auto & l = scenario.network.lanelet(id); l.speed_limit) {
      return *l.speed_limit;
    }
  } catch (const PlacementError &) {
  }
  return fallback;
}

std::optional<int> real_collision(const Scenario & scenario, const EgoState & ego, int k)
{
  const Polygon fp = scenario.ego_params.footprint({ego.x, ego.y, ego.theta});
  for (const auto & o : scenario.static_obstacles) {
    if (geometry::min_distance(fp, o.footprint) <= 0.0) {
      return o.id;
    }
  }
  for (const auto & o : scenario.dynamic_obstacles) {
    if (o.present_at(k) && geometry::clearance(fp, o.shape, o.state_at(k).pose()) <= 0.0) {
      return o.id;
    }
  }
  return std::nullopt;
}

RunResult run(const Scenario & sc, const RunConfig & cfg)
{
  cfg.thresholds.validate();
  cfg.sampling.validate(sc.dt);
  Profiler::global().clear();
  Profiler::global().set_enabled(cfg.profile);

  RunResult result;
  result.scenario = sc.name;
  const auto & frame = sc.reference_frame();
  const int steps = cfg.sampling.horizon_steps(sc.dt);
  EgoState ego = sc.ego_initial;
  FrenetState fs = frenet_state(ego, frame);
  std::optional<EgoTrajectory> previous;

  for (int k = 0;; ++k) {
    if (ego.s >= sc.goal_s) {
      result.goal_reached = true;
      break;
    }
    if (k >= sc.horizon_steps) {
      break;
    }
    ScopedTimer step_timer("simulation_step");
    const auto snap = compute_visibility(sc, ego, k);
    const auto visible = visible_obstacles(sc, snap);
    std::vector<SpawnPoint> sps;
    std::vector<PhantomAgent> agents;
    if (cfg.occlusion_aware) {
      ScopedTimer t("occlusion_pipeline");
      sps = identify_spawn_points(sc, ego, snap, cfg.spawn);
      agents = predict_agents(sps, sc, steps, cfg.agents);
    }

    PlanRequest req;
    req.start = fs;
    req.frame = &frame;
    req.params = sc.ego_params;
    req.dt = sc.dt;
    req.v_target = target_speed(sc, ego);
    req.sampling = cfg.sampling;
    req.weights = cfg.weights;
    req.thresholds = cfg.thresholds;
    req.visible_obstacles = visible_tracks(sc, visible, k, steps);
    req.previous = previous ? &*previous : nullptr;
    if (cfg.occlusion_aware) {
      req.evaluator = [&](const EgoTrajectory & traj) {
        return evaluate(traj, sc.ego_params, agents, cfg.metrics);
      };
    }
    const PlanResult plan = plan_step(req);

    StepRecord rec;
    rec.k = k;
    rec.t = k * sc.dt;
    rec.x = ego.x;
    rec.y = ego.y;
    rec.s = ego.s;
    rec.d = ego.d;
    rec.theta = ego.theta;
    rec.v = ego.v;
    rec.a = fs.s_dd;
    if (plan.report) {
      rec.r = plan.report->r;
      rec.h = plan.report->h;
      rec.p = plan.report->cp;
      rec.btn = plan.report->btn;
      rec.dce = plan.report->dce;
      rec.ttc = plan.report->ttc;
    }
    rec.rejections = plan.rejections;
    rec.fallback = plan.fallback;
    rec.valid = plan.verdict.valid;
    rec.chosen_rank = plan.chosen_rank;
    rec.chosen_sample = plan.chosen.sample_index;
    rec.spawn_points = static_cast<int>(sps.size());
    rec.phantom_agents = static_cast<int>(agents.size());
    result.steps.push_back(rec);
    if (cfg.dump_areas) {
      result.areas.push_back(area_dump(k, snap, sps, agents));
    }

    const auto & next = plan.chosen.states.at(1);
    ego = {next.x, next.y, next.s, next.d, next.theta, next.v};
    fs = {next.s, next.s_d, next.s_dd, next.d, next.d_d, next.d_dd};
    previous = plan.chosen;

    if (auto hit = real_collision(sc, ego, k + 1)) {
      result.collision = true;
      result.collision_obstacle_id = hit;
      result.collision_step = k + 1;
      break;
    }
  }

  for (const auto & r : result.steps) {
    result.min_velocity = result.min_velocity ? std::min(*result.min_velocity, r.v) : r.v;
  }
  result.profile = Profiler::global().summary();
  Profiler::global().set_enabled(false);
  return result;
}

RunResult run(const RunConfig & cfg) { return run(load_scenario(cfg.scenario_path), cfg); }

std::string steps_csv(const RunResult & result)
{
  std::ostringstream out;
  out << "k,t,x,y,s,d,theta,v,a,R,H,p,BTN,DCE,TTC,rejections\n";
  for (const auto & r : result.steps) {
    out << r.k << ',' << fmt_double(r.t) << ',' << fmt_double(r.x) << ',' << fmt_double(r.y) << ','
        << fmt_double(r.s) << ',' << fmt_double(r.d) << ',' << fmt_double(r.theta) << ','
        << fmt_double(r.v) << ',' << fmt_double(r.a) << ',' << fmt_double(r.r) << ','
        << fmt_double(r.h) << ',' << fmt_double(r.p) << ',' << fmt_double(r.btn) << ','
        << fmt_optional(r.dce) << ',' << fmt_optional(r.ttc) << ',' << r.rejections << '\n';
  }
  return out.str();
}

json result_json(const RunResult & result, const RunConfig & cfg)
{
  json j;
  j["scenario"] = result.scenario;
  j["collision"] = result.collision;
  j["collision_obstacle_id"] = result.collision_obstacle_id ? json(*result.collision_obstacle_id) : json(nullptr);
  j["collision_step"] = result.collision_step ? json(*result.collision_step) : json(nullptr);
  j["goal_reached"] = result.goal_reached;
  j["min_velocity"] = result.min_velocity ? json(*result.min_velocity) : json(nullptr);
  j["steps"] = result.steps.size();
  int fallbacks = 0;
  for (const auto & r : result.steps) {
    fallbacks += r.fallback ? 1 : 0;
  }
  j["fallback_steps"] = fallbacks;
  json th = json::object();
  auto put = [&](const char * key, const std::optional<double> & v) {
    if (v) {
      th[key] = *v;
    }
  };
  put("R_max", cfg.thresholds.r_max);
  put("H_max", cfg.thresholds.h_max);
  put("p_max", cfg.thresholds.p_max);
  put("BTN_max", cfg.thresholds.btn_max);
  put("CP_max", cfg.thresholds.cp_max);
  put("DCE_min", cfg.thresholds.dce_min);
  put("TTC_min", cfg.thresholds.ttc_min);
  j["thresholds"] = th;
  j["occlusion_aware"] = cfg.occlusion_aware;
  return j;
}

json profile_json(const RunResult & result)
{
  json j = json::object();
  for (const auto & [name, q] : result.profile) {
    j[name] = {{"min", q.min}, {"p25", q.p25}, {"median", q.median}, {"p75", q.p75}, {"max", q.max}, {"count", q.count}};
  }
  return j;
}

void emit_outputs(const RunResult & result, const RunConfig & cfg)
{
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) {
    throw Error("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  }
  auto write = [&](const fs::path & path, const std::string & text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw Error("cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out) {
      throw Error("write failed for '" + path.string() + "'");
    }
  };
  const fs::path dir(cfg.out_dir);
  write(dir / "result.json", result_json(result, cfg).dump(2) + "\n");
  write(dir / "steps.csv", steps_csv(result));
  write(dir / "profile.json", profile_json(result).dump(2) + "\n");
  std::ostringstream plot;
  plot << "s,v\n";
  for (const auto & r : result.steps) {
    plot << fmt_double(r.s) << ',' << fmt_double(r.v) << '\n';
  }
  write(dir / "profile_plot.csv", plot.str());
  if (!result.areas.empty()) {
    fs::create_directories(dir / "areas", ec);
    for (const auto & a : result.areas) {
      write(dir / "areas" / ("step_" + std::to_string(a["k"].get<int>()) + ".json"), a.dump() + "\n");
    }
  }
}

}  // namespace blindspot
