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

#include "blindspot/oracles/suites.hpp"

#include "blindspot/errors.hpp"
#include "blindspot/metrics/criticality.hpp"
#include "blindspot/oracles/oracles.hpp"
#include "blindspot/planner/frenet_planner.hpp"
#include "blindspot/prediction/phantom_prediction.hpp"
#include "blindspot/scenario/scenario_io.hpp"
#include "blindspot/sensor/sensor_model.hpp"
#include "blindspot/sim/simulator.hpp"
#include "blindspot/spawn/spawn_identifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#ifndef BLINDSPOT_FIXTURE_DIR
#define BLINDSPOT_FIXTURE_DIR "tests/fixtures"
#endif

namespace blindspot::oracles
{

namespace
{

constexpr std::size_t kMaxFailures = 8;
constexpr int kHorizon = 30;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v)
{
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double shoelace(const std::vector<Point> & r)
{
  double a = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto & p = r[i];
    const auto & q = r[(i + 1) % r.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

double set_area(const PolygonSet & s)
{
  double a = 0.0;
  for (const auto & p : s.polygons) {
    a += std::abs(shoelace(p.outer));
    for (const auto & h : p.holes) {
      a -= std::abs(shoelace(h));
    }
  }
  return a;
}

std::string tag(const std::string & path, int k)
{
  return std::filesystem::path(path).filename().string() + "@k=" + std::to_string(k);
}

// Polyline offset by `w` along mitred vertex normals.
std::vector<Point> offset_polyline(const std::vector<Point> & c, double w)
{
  std::vector<Point> out;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point d0 = geometry::unit(c[std::min(i + 1, n - 1)] - c[i == 0 ? 0 : i - 1]);
    Point nrm = geometry::perp(d0);
    double scale = 1.0;
    if (i > 0 && i + 1 < n) {
      const Point na = geometry::perp(geometry::unit(c[i] - c[i - 1]));
      const Point nb = geometry::perp(geometry::unit(c[i + 1] - c[i]));
      nrm = geometry::unit(na + nb);
      scale = 1.0 / geometry::dot(nrm, na);
    }
    out.push_back(c[i] + (w * scale) * nrm);
  }
  return out;
}

std::vector<Point> slice(const std::vector<Point> & v, std::size_t a, std::size_t b)
{
  return {v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b) + 1};
}

Scenario load_or_throw(const std::string & path) { return load_scenario(path); }

// Segment direction(s) of the reference path at arc length s; two at a vertex.
std::vector<Point> path_tangents(const std::vector<Point> & path, double s)
{
  std::vector<Point> out;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double len = geometry::distance(path[i], path[i + 1]);
    if (s >= acc - 1e-9 && s <= acc + len + 1e-9) {
      out.push_back((path[i + 1] - path[i]) / len);
    }
    acc += len;
  }
  if (out.empty()) {
    out.push_back(geometry::unit(s <= 0.0 ? path[1] - path[0] : path.back() - path[path.size() - 2]));
  }
  return out;
}

bool near_lanelets(const Scenario & sc, const std::vector<int> & ids, const Point & p, double tol)
{
  for (int id : ids) {
    const auto & l = sc.network.lanelet(id);
    std::vector<Point> ring(l.right.begin(), l.right.end());
    ring.insert(ring.end(), l.left.rbegin(), l.left.rend());
    if (point_in_ring(ring, p)) {
      return true;
    }
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (point_segment(p, ring[i], ring[(i + 1) % ring.size()]) <= tol) {
        return true;
      }
    }
  }
  return false;
}

struct PredictionStats
{
  int pedestrians{0};
  int lane_bound{0};
  int points{0};
  int exited{0};
  double worst_dot{0.0};
  double worst_step{0.0};
};

void check_predictions(
  const Scenario & sc, const std::vector<PhantomAgent> & agents, const std::string & where,
  SuiteReport & rep, PredictionStats & st)
{
  const double dt = sc.dt;
  for (const auto & a : agents) {
    if (!(a.initial.v > 0.0)) {
      rep.fail(where + ": agent " + std::to_string(a.id) + " has non-positive speed");
    }
    if (a.kind == AgentKind::Pedestrian) {
      ++st.pedestrians;
      if (a.predictions.size() != 1) {
        rep.fail(where + ": pedestrian with " + std::to_string(a.predictions.size()) + " predictions");
        continue;
      }
      const auto & ps = a.predictions.front().states;
      const Point dir = geometry::unit(Point{ps[1].x - ps[0].x, ps[1].y - ps[0].y});
      const double s = sc.reference_frame().to_curvilinear(a.spawn.position).s;
      double best = 1.0;
      for (const auto & t : path_tangents(sc.reference_path, s)) {
        best = std::min(best, std::abs(geometry::dot(dir, t)));
      }
      st.worst_dot = std::max(st.worst_dot, best);
      if (!(best < 1e-6)) {
        rep.fail(where + ": pedestrian " + std::to_string(a.id) + " |dot| = " + fmt(best));
      }
      for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
        const double step = std::hypot(ps[k + 1].x - ps[k].x, ps[k + 1].y - ps[k].y);
        const double err = std::abs(step - a.initial.v * dt);
        st.worst_step = std::max(st.worst_step, err);
        if (!(err < 1e-6) || std::abs(ps[k].v - a.initial.v) >= 1e-9) {
          rep.fail(where + ": pedestrian " + std::to_string(a.id) + " step error " + fmt(err));
          break;
        }
      }
      continue;
    }
    ++st.lane_bound;
    for (std::size_t r = 0; r < a.predictions.size(); ++r) {
      const auto & pred = a.predictions[r];
      const auto & route = a.routes.at(r);
      const bool terminal = sc.network.lanelet(route.back()).successors.empty();
      const double length = pred.route_frame->length();
      const Point end_point = pred.route_frame->from_curvilinear(length, 0.0);
      const Point end_tangent = pred.route_frame->segment_tangent(length);
      double prev_s = 0.0;
      for (std::size_t k = 0; k < pred.states.size(); ++k) {
        const auto & q = pred.states[k];
        ++st.points;
        if (std::abs(q.v - a.initial.v) >= 1e-9) {
          rep.fail(where + ": agent " + std::to_string(a.id) + " speed changes at k=" + std::to_string(k));
        }
        const Point qp{q.x, q.y};
        const double along = geometry::dot(qp - end_point, end_tangent);
        const bool past_terminal = terminal && along > 0.0;
        if (past_terminal) {
          ++st.exited;
        } else if (!near_lanelets(sc, route, qp, 1e-3)) {
          rep.fail(
            where + ": agent " + std::to_string(a.id) + " route " + std::to_string(r) + " leaves its lanelets at k=" +
            std::to_string(k));
          break;
        }
        const double s = past_terminal ? length + along : pred.route_frame->to_curvilinear(qp).s;
        if (k > 0) {
          const double err = std::abs((s - prev_s) - a.initial.v * dt);
          st.worst_step = std::max(st.worst_step, err);
          if (!(err < 1e-6)) {
            rep.fail(where + ": agent " + std::to_string(a.id) + " arc step error " + fmt(err));
            break;
          }
        }
        prev_s = s;
      }
      const auto & l0 = sc.network.lanelet(route.front());
      if (l0.speed_limit && a.initial.v > *l0.speed_limit + 1e-12) {
        rep.fail(where + ": agent " + std::to_string(a.id) + " exceeds the speed limit");
      }
    }
  }
}

std::vector<EgoTrajectory> candidate_trajectories(const Scenario & sc, const EgoState & ego)
{
  SamplingConfig cfg;
  const auto fs = frenet_state(ego, sc.reference_frame());
  const auto all =
    sample_trajectories(fs, cfg, sc.reference_frame(), sc.dt, cfg.horizon_steps(sc.dt), target_speed(sc, ego));
  return feasibility_filter(all, sc.ego_params, cfg);
}

}  // namespace

void SuiteReport::fail(const std::string & what)
{
  pass = false;
  if (failures.size() < kMaxFailures) {
    failures.push_back(what);
  }
}

std::vector<std::string> suite_names() { return {"visibility", "spawn", "prediction", "metrics", "planner"}; }

std::vector<std::string> default_fixtures()
{
  std::vector<std::string> out;
  for (const auto & e : std::filesystem::directory_iterator(BLINDSPOT_FIXTURE_DIR)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      out.push_back(e.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Scenario make_fuzz_scenario(std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };

  // Road centre: straight, optional arc, straight; 1 m vertex spacing.
  std::vector<Point> centre{{0.0, 0.0}};
  double heading = 0.0;
  auto advance = [&](double length, double curvature) {
    const int n = std::max(1, static_cast<int>(std::ceil(length)));
    const double ds = length / n;
    for (int i = 0; i < n; ++i) {
      const double dh = curvature * ds;
      centre.push_back(centre.back() + ds * geometry::from_angle(heading + 0.5 * dh));
      heading += dh;
    }
  };
  advance(uni(30.0, 60.0), 0.0);
  if (pick(0, 9) < 7) {
    const double radius = uni(15.0, 60.0);
    const double turn = uni(0.3, 1.5) * (pick(0, 1) ? 1.0 : -1.0);
    advance(radius * std::abs(turn), (turn > 0 ? 1.0 : -1.0) / radius);
  }
  advance(uni(30.0, 50.0), 0.0);

  const auto right_edge = offset_polyline(centre, -3.5);
  const auto middle = centre;
  const auto left_edge = offset_polyline(centre, 3.5);
  const std::size_t n = centre.size() - 1;
  const std::size_t cut1 = n / 3;
  const std::size_t cut2 = 2 * n / 3;
  const std::array<std::pair<std::size_t, std::size_t>, 3> pieces{{{0, cut1}, {cut1, cut2}, {cut2, n}}};

  std::optional<double> limit;
  if (const int l = pick(0, 2); l > 0) {
    limit = l == 1 ? 8.33 : 13.9;
  }
  std::vector<Lanelet> lanelets;
  for (int i = 0; i < 3; ++i) {
    Lanelet fwd;
    fwd.id = 1 + i;
    fwd.right = slice(right_edge, pieces[i].first, pieces[i].second);
    fwd.left = slice(middle, pieces[i].first, pieces[i].second);
    if (i < 2) {
      fwd.successors = {2 + i};
    }
    fwd.adjacent_left = 4 + i;
    fwd.speed_limit = limit;
    lanelets.push_back(fwd);

    Lanelet back;
    back.id = 4 + i;
    back.right = slice(left_edge, pieces[i].first, pieces[i].second);
    back.left = slice(middle, pieces[i].first, pieces[i].second);
    std::reverse(back.right.begin(), back.right.end());
    std::reverse(back.left.begin(), back.left.end());
    if (i > 0) {
      back.successors = {3 + i};
    }
    back.speed_limit = limit;
    lanelets.push_back(back);
  }
  const bool bike_lane = pick(0, 9) < 4;
  if (bike_lane) {
    const auto outer = offset_polyline(centre, -5.5);
    for (int i = 0; i < 3; ++i) {
      Lanelet b;
      b.id = 7 + i;
      b.right = slice(outer, pieces[i].first, pieces[i].second);
      b.left = slice(right_edge, pieces[i].first, pieces[i].second);
      if (i < 2) {
        b.successors = {8 + i};
      }
      lanelets.push_back(b);
    }
  }

  Scenario sc;
  sc.name = "fuzz_" + std::to_string(seed);
  sc.network = LaneletNetwork(lanelets);
  sc.dt = 0.1;
  sc.horizon_steps = 40;
  sc.reference_path = offset_polyline(centre, -1.75);
  const geometry::CurvilinearFrame road(centre, 8.0);

  const double s_ego = uni(6.0, 15.0);
  const Point ego_pos = road.from_curvilinear(s_ego, -1.75);
  sc.ego_initial = {ego_pos.x, ego_pos.y, 0.0, 0.0, road.heading(s_ego), uni(0.0, 10.0)};
  const Polygon ego_fp = sc.ego_params.footprint({ego_pos.x, ego_pos.y, sc.ego_initial.theta});

  std::vector<Polygon> placed;
  auto free_of = [&](const Polygon & fp) {
    if (geometry::min_distance(fp, ego_fp) < 1.0) {
      return false;
    }
    return std::all_of(placed.begin(), placed.end(), [&](const Polygon & q) { return geometry::min_distance(fp, q) > 0.3; });
  };
  const int n_static = pick(0, 4);
  int next_id = 100;
  for (int i = 0, tries = 0; i < n_static && tries < 40; ++tries) {
    const double s = std::min(s_ego + uni(8.0, 45.0), road.length() - 6.0);
    const double d = uni(-4.5, 4.5);
    const Point c = road.from_curvilinear(s, d);
    const Polygon fp =
      geometry::make_rectangle(c, road.heading(s) + uni(-0.3, 0.3), uni(2.0, 8.0), uni(1.5, 2.6));
    if (!free_of(fp)) {
      continue;
    }
    placed.push_back(fp);
    sc.static_obstacles.push_back({next_id++, fp});
    ++i;
  }
  const int n_dynamic = pick(0, 3);
  for (int i = 0, tries = 0; i < n_dynamic && tries < 40; ++tries) {
    const bool oncoming = pick(0, 1) == 1;
    const double d = oncoming ? 1.75 : -1.75;
    const double s_start = std::clamp(s_ego + uni(-10.0, 50.0), 3.0, road.length() - 3.0);
    const double v = uni(0.0, 10.0);
    const bool truck = pick(0, 4) == 0;
    DynamicObstacle o;
    o.id = next_id;
    o.kind = truck ? ObstacleKind::Truck : ObstacleKind::Car;
    o.shape = truck ? geometry::Shape::rectangle(10.0, 2.5) : geometry::Shape::rectangle(4.5, 2.0);
    for (int k = 0; k <= sc.horizon_steps; ++k) {
      const double s = s_start + (oncoming ? -1.0 : 1.0) * v * k * sc.dt;
      const Point p = road.from_curvilinear_extended(s, d);
      const double th = road.heading(std::clamp(s, 0.0, road.length())) + (oncoming ? std::numbers::pi : 0.0);
      o.states.push_back({k * sc.dt, p.x, p.y, geometry::normalize_angle(th), v});
    }
    const Polygon fp0 = o.shape.footprint(o.states.front().pose());
    if (!free_of(fp0)) {
      continue;
    }
    placed.push_back(fp0);
    sc.dynamic_obstacles.push_back(std::move(o));
    ++next_id;
    ++i;
  }
  sc.goal_s = geometry::CurvilinearFrame(sc.reference_path).length() - 5.0;
  finalize(sc);
  return sc;
}

std::vector<std::pair<int, EgoState>> probe_states(const Scenario & sc)
{
  std::vector<std::pair<int, EgoState>> out;
  const auto & frame = sc.reference_frame();
  for (int k : {0, 10, 20}) {
    if (k == 0) {
      out.emplace_back(0, sc.ego_initial);
      continue;
    }
    const double v = std::max(sc.ego_initial.v, 2.0);
    const double s = sc.ego_initial.s + v * k * sc.dt;
    if (s > frame.length()) {
      break;
    }
    const Point p = frame.from_curvilinear(s, sc.ego_initial.d);
    if (!in_drivable_area(sc, p)) {
      continue;
    }
    out.emplace_back(k, EgoState{p.x, p.y, s, sc.ego_initial.d, frame.heading(s), sc.ego_initial.v});
  }
  return out;
}

SuiteReport visibility_suite(const std::vector<std::string> & fixtures, std::uint64_t seed, int grid_points)
{
  SuiteReport rep;
  rep.name = "visibility";
  const auto t_all = Clock::now();
  double worst_partition = 0.0;
  double worst_agreement = 1.0;
  double slowest = 0.0;
  int snapshots = 0;
  int obstacle_mismatches = 0;
  for (const auto & path : fixtures) {
    const auto t0 = Clock::now();
    const Scenario sc = load_or_throw(path);
    for (const auto & [k, ego] : probe_states(sc)) {
      const auto snap = compute_visibility(sc, ego, k);
      ++snapshots;
      const double err = std::abs(set_area(snap.visible) + set_area(snap.occluded) - set_area(snap.sensed));
      worst_partition = std::max(worst_partition, err);
      if (!(err <= 1e-6)) {
        rep.fail(tag(path, k) + ": partition error " + fmt(err) + " m^2");
      }
      const auto g = grid_visibility(sc, snap, grid_points, 1e-3, seed + static_cast<std::uint64_t>(k));
      worst_agreement = std::min(worst_agreement, g.fraction());
      if (!(g.fraction() >= 0.995)) {
        rep.fail(tag(path, k) + ": grid agreement " + fmt(100.0 * g.fraction()) + "%");
      }
      const auto vis = visible_obstacles(sc, snap);
      for (const auto & o : sc.static_obstacles) {
        const bool lib = std::count(vis.static_ids.begin(), vis.static_ids.end(), o.id) > 0;
        if (lib != obstacle_truly_visible(sc, ego.position(), k, o.footprint)) {
          ++obstacle_mismatches;
        }
      }
      for (const auto & o : sc.dynamic_obstacles) {
        if (!o.present_at(k)) {
          continue;
        }
        const bool lib = std::count(vis.dynamic_ids.begin(), vis.dynamic_ids.end(), o.id) > 0;
        if (lib != obstacle_truly_visible(sc, ego.position(), k, o.footprint(k))) {
          ++obstacle_mismatches;
        }
      }
    }
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    if (!(secs < 5.0)) {
      rep.fail(std::filesystem::path(path).filename().string() + ": " + fmt(secs) + " s");
    }
  }
  rep.seconds = seconds_since(t_all);
  rep.summary = std::to_string(fixtures.size()) + " fixtures, " + std::to_string(snapshots) +
                " snapshots, worst partition error " + fmt(worst_partition) + " m^2, worst agreement " +
                fmt(100.0 * worst_agreement) + "%, slowest fixture " + fmt(slowest) +
                " s, obstacle-visibility disagreements " + std::to_string(obstacle_mismatches);
  return rep;
}

namespace
{

void check_spawn_snapshot(
  const Scenario & sc, const EgoState & ego, int k, const std::string & where, SuiteReport & rep,
  std::map<std::string, int> & counts)
{
  const auto snap = compute_visibility(sc, ego, k);
  const auto vis = visible_obstacles(sc, snap);
  for (const auto & sp : identify_spawn_points(sc, ego, snap)) {
    ++counts[to_string(sp.cause)];
    const auto c = spawn_clauses(sp, sc, snap, vis);
    if (!(c.in_drivable_area && c.not_visible && c.clear)) {
      rep.fail(
        where + ": " + to_string(sp.cause) + " point (" + fmt(sp.position.x) + ", " + fmt(sp.position.y) +
        ") road=" + std::to_string(c.in_drivable_area) + " hidden=" + std::to_string(c.not_visible) +
        " clear=" + std::to_string(c.clear));
    }
  }
}

std::string count_summary(const std::map<std::string, int> & counts)
{
  std::string s;
  int total = 0;
  for (const auto & [k, v] : counts) {
    s += (s.empty() ? "" : ", ") + k + " " + std::to_string(v);
    total += v;
  }
  return std::to_string(total) + " spawn points (" + s + ")";
}

}  // namespace

SuiteReport spawn_suite(int fuzz_count, std::uint64_t seed)
{
  SuiteReport rep;
  rep.name = "spawn";
  const auto t0 = Clock::now();
  std::map<std::string, int> counts;
  for (int i = 0; i < fuzz_count; ++i) {
    const Scenario sc = make_fuzz_scenario(seed + static_cast<std::uint64_t>(i));
    check_spawn_snapshot(sc, sc.ego_initial, 0, sc.name, rep, counts);
  }
  rep.seconds = seconds_since(t0);
  if (!(rep.seconds < 10.0)) {
    rep.fail("runtime " + fmt(rep.seconds) + " s");
  }
  rep.summary = std::to_string(fuzz_count) + " fuzzed scenarios, " + count_summary(counts);
  return rep;
}

SuiteReport spawn_fixture_suite(const std::vector<std::string> & fixtures)
{
  SuiteReport rep;
  rep.name = "spawn";
  const auto t0 = Clock::now();
  std::map<std::string, int> counts;
  for (const auto & path : fixtures) {
    const Scenario sc = load_or_throw(path);
    for (const auto & [k, ego] : probe_states(sc)) {
      check_spawn_snapshot(sc, ego, k, tag(path, k), rep, counts);
    }
  }
  rep.seconds = seconds_since(t0);
  rep.summary = std::to_string(fixtures.size()) + " fixtures, " + count_summary(counts);
  return rep;
}

SuiteReport prediction_suite(const std::vector<std::string> & fixtures, int fuzz_count, std::uint64_t seed)
{
  SuiteReport rep;
  rep.name = "prediction";
  const auto t0 = Clock::now();
  PredictionStats st;
  auto probe = [&](const Scenario & sc, const std::string & label) {
    for (const auto & [k, ego] : probe_states(sc)) {
      const auto snap = compute_visibility(sc, ego, k);
      const auto sps = identify_spawn_points(sc, ego, snap);
      check_predictions(sc, predict_agents(sps, sc, kHorizon), label + "@k=" + std::to_string(k), rep, st);
    }
  };
  for (const auto & path : fixtures) {
    probe(load_or_throw(path), std::filesystem::path(path).filename().string());
  }
  for (int i = 0; i < fuzz_count; ++i) {
    const Scenario sc = make_fuzz_scenario(seed + static_cast<std::uint64_t>(i));
    probe(sc, sc.name);
  }
  rep.seconds = seconds_since(t0);
  if (!(rep.seconds < 5.0)) {
    rep.fail("runtime " + fmt(rep.seconds) + " s");
  }
  rep.summary = std::to_string(st.pedestrians) + " pedestrian and " + std::to_string(st.lane_bound) +
                " lane-bound agents, " + std::to_string(st.points) + " lane points (" + std::to_string(st.exited) + " past a terminal), worst |dot| " +
                fmt(st.worst_dot) + ", worst step error " + fmt(st.worst_step) + " m";
  return rep;
}

SuiteReport metrics_suite(const std::vector<std::string> & fixtures, std::uint64_t seed, std::size_t mc_samples)
{
  SuiteReport rep;
  rep.name = "metrics";
  const auto t0 = Clock::now();
  int encounters = 0;
  int brakes = 0;
  int mcs = 0;
  double worst_dce = 0.0;
  double worst_ttce = 0.0;
  double worst_ttc = 0.0;
  double worst_btn = 0.0;
  double worst_cp = 0.0;
  double worst_wttc = 0.0;
  for (const auto & path : fixtures) {
    const Scenario sc = load_or_throw(path);
    const std::string name = std::filesystem::path(path).filename().string();
    for (const auto & [k, ego] : probe_states(sc)) {
      const auto snap = compute_visibility(sc, ego, k);
      const auto agents = predict_agents(identify_spawn_points(sc, ego, snap), sc, kHorizon);
      if (agents.empty()) {
        continue;
      }
      const auto trajs = candidate_trajectories(sc, ego);
      if (trajs.empty()) {
        continue;
      }
      std::vector<const EgoTrajectory *> chosen{&trajs.front(), &trajs.back(), &trajs[trajs.size() / 2]};
      const std::string where = tag(path, k);
      struct McCase
      {
        double p;
        const EgoTrajectory * traj;
        const PhantomAgent * agent;
      };
      std::vector<McCase> mc_cases;
      for (const auto * traj : chosen) {
        const auto report = evaluate(*traj, sc.ego_params, agents);
        for (std::size_t i = 0; i < agents.size(); ++i) {
          const auto & a = agents[i];
          for (const auto & pred : a.predictions) {
            ++encounters;
            const auto enc = dce_ttce(*traj, sc.ego_params, pred, a.shape);
            const auto lib_ttc = ttc(*traj, sc.ego_params, pred, a.shape);
            const auto fine = fine_encounter(*traj, sc.ego_params, pred, a.shape, 10);
            const double fine_ttce = fine.ttce;
            const double ddce = std::abs(enc.dce - fine.dce);
            const double dttce = std::abs(enc.ttce - fine_ttce);
            worst_dce = std::max(worst_dce, ddce);
            worst_ttce = std::max(worst_ttce, dttce);
            if (!(ddce <= 0.05)) {
              rep.fail(where + ": DCE " + fmt(enc.dce) + " vs fine " + fmt(fine.dce));
            }
            if (!(dttce <= traj->dt + 1e-9)) {
              rep.fail(where + ": TTCE " + fmt(enc.ttce) + " vs fine " + fmt(fine_ttce));
            }
            if (lib_ttc.has_value() != fine.first_overlap.has_value()) {
              rep.fail(where + ": TTC presence differs from the fine oracle");
            } else if (lib_ttc) {
              const double d = std::abs(*lib_ttc - *fine.first_overlap);
              worst_ttc = std::max(worst_ttc, d);
              if (!(d <= traj->dt + 1e-9)) {
                rep.fail(where + ": TTC " + fmt(*lib_ttc) + " vs fine " + fmt(*fine.first_overlap));
              }
            }
          }
          const auto & m = report.agents[i];
          const auto w = growing_discs(
            traj->states.front().position(), 0.5 * std::hypot(sc.ego_params.length, sc.ego_params.width),
            {a.initial.x, a.initial.y}, a.shape.bounding_radius(), sc.ego_params.v_max, a.initial.v);
          if (m.wttc.has_value() != w.has_value()) {
            rep.fail(where + ": WTTC presence differs");
          } else if (w) {
            const double d = std::abs(*m.wttc - *w);
            worst_wttc = std::max(worst_wttc, d);
            if (!(d <= 1e-3 + 1e-9)) {
              rep.fail(where + ": WTTC " + fmt(*m.wttc) + " vs growth " + fmt(*w));
            }
          }
          mc_cases.push_back({m.p, traj, &a});
        }
        std::vector<double> ps;
        std::vector<double> hs;
        for (const auto & m : report.agents) {
          ps.push_back(m.p);
          hs.push_back(m.h);
        }
        if (report.r != exhaustive_risk(ps, hs)) {
          rep.fail(where + ": risk " + fmt(report.r) + " differs from the exhaustive max");
        }
        ++brakes;
        const double a_grid = grid_brake(*traj, sc.ego_params, agents, 0.01, 12.0);
        const double dbtn = std::abs(report.btn - a_grid / sc.ego_params.a_max);
        worst_btn = std::max(worst_btn, dbtn * sc.ego_params.a_max);
        if (!(dbtn <= 0.02 / sc.ego_params.a_max + 1e-12)) {
          rep.fail(where + ": BTN " + fmt(report.btn) + " vs grid " + fmt(a_grid / sc.ego_params.a_max));
        }
      }
      std::stable_sort(mc_cases.begin(), mc_cases.end(), [](const auto & a, const auto & b) { return a.p > b.p; });
      for (std::size_t i = 0; i < std::min<std::size_t>(2, mc_cases.size()); ++i) {
        ++mcs;
        const auto & c = mc_cases[i];
        const double mc = monte_carlo_cp(*c.traj, sc.ego_params, *c.agent, mc_samples, seed + static_cast<std::uint64_t>(mcs));
        const double d = std::abs(mc - c.p);
        worst_cp = std::max(worst_cp, d);
        if (!(d <= 0.01)) {
          rep.fail(where + ": CP " + fmt(c.p) + " vs Monte Carlo " + fmt(mc));
        }
      }
    }
  }
  rep.seconds = seconds_since(t0);
  if (!(rep.seconds < 60.0)) {
    rep.fail("runtime " + fmt(rep.seconds) + " s");
  }
  rep.summary = std::to_string(encounters) + " encounters, " + std::to_string(brakes) + " brake searches, " +
                std::to_string(mcs) + " Monte-Carlo runs; worst |dDCE| " + fmt(worst_dce) + " m, |dTTCE| " +
                fmt(worst_ttce) + " s, |dTTC| " + fmt(worst_ttc) + " s, |da_req| " + fmt(worst_btn) +
                " m/s^2, |dCP| " + fmt(worst_cp) + ", |dWTTC| " + fmt(worst_wttc) + " s";
  return rep;
}

SuiteReport planner_suite(const std::vector<std::string> & fixtures)
{
  SuiteReport rep;
  rep.name = "planner";
  const auto t0 = Clock::now();
  int checked = 0;
  double worst_rel = 0.0;
  for (const auto & path : fixtures) {
    const Scenario sc = load_or_throw(path);
    for (const auto & [k, ego] : probe_states(sc)) {
      SamplingConfig cfg;
      const auto fs = frenet_state(ego, sc.reference_frame());
      const double v_target = target_speed(sc, ego);
      const auto all = sample_trajectories(fs, cfg, sc.reference_frame(), sc.dt, cfg.horizon_steps(sc.dt), v_target);
      const auto snap = compute_visibility(sc, ego, k);
      const auto tracks = visible_tracks(sc, visible_obstacles(sc, snap), k, cfg.horizon_steps(sc.dt));
      const CostContext ctx{&sc.ego_params, &tracks, v_target, cfg.epsilon};
      const CostWeights w;
      for (const auto & t : all) {
        ++checked;
        if (is_feasible(t, sc.ego_params, cfg) != brute_force_feasible(t, sc.ego_params, cfg.delta_max)) {
          rep.fail(tag(path, k) + ": feasibility of sample " + std::to_string(t.sample_index));
        }
        const double lib = trajectory_cost(t, ctx, w);
        const double ref = brute_force_cost(t, sc.ego_params, tracks, w, v_target, cfg.epsilon);
        const double rel = std::abs(lib - ref) / std::max(1.0, std::abs(ref));
        worst_rel = std::max(worst_rel, rel);
        if (!(rel <= 1e-6)) {
          rep.fail(tag(path, k) + ": cost of sample " + std::to_string(t.sample_index) + " " + fmt(lib) + " vs " + fmt(ref));
        }
      }
    }
  }
  rep.seconds = seconds_since(t0);
  rep.summary = std::to_string(checked) + " sampled trajectories, worst relative cost error " + fmt(worst_rel);
  return rep;
}

void print(const SuiteReport & r, std::ostream & os)
{
  os << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.summary << " [" << fmt(r.seconds) << " s]\n";
  for (const auto & f : r.failures) {
    os << "  - " << f << "\n";
  }
}

bool run_suite(const std::string & name, const std::string & scenario_path, std::uint64_t seed, std::ostream & os)
{
  const auto fixtures = scenario_path.empty() ? default_fixtures() : std::vector<std::string>{scenario_path};
  SuiteReport r;
  if (name == "visibility") {
    r = visibility_suite(fixtures, seed);
  } else if (name == "spawn") {
    r = scenario_path.empty() ? spawn_suite(50, seed) : spawn_fixture_suite(fixtures);
  } else if (name == "prediction") {
    r = prediction_suite(fixtures, scenario_path.empty() ? 100 : 0, seed);
  } else if (name == "metrics") {
    r = metrics_suite(fixtures, seed);
  } else if (name == "planner") {
    r = planner_suite(fixtures);
  } else {
    throw OutOfRangeError("unknown oracle suite '" + name + "'");
  }
  print(r, os);
  return r.pass;
}

}  // namespace blindspot::oracles
