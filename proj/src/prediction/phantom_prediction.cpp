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

#include "blindspot/prediction/phantom_prediction.hpp"

#include "blindspot/errors.hpp"
#include "blindspot/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace blindspot
{

geometry::Shape agent_shape(AgentKind kind)
{
  switch (kind) {
    case AgentKind::Pedestrian:
      return geometry::Shape::disc(0.35);
    case AgentKind::Bicycle:
      return geometry::Shape::rectangle(1.8, 0.6);
    case AgentKind::Vehicle:
      return geometry::Shape::rectangle(4.5, 2.0);
  }
  return geometry::Shape::disc(0.35);
}

namespace
{

void extend_routes(
  const LaneletNetwork & network, std::vector<int> & route, int max_depth,
  std::vector<std::vector<int>> & out)
{
  const auto & last = network.lanelet(route.back());
  std::vector<int> next;
  for (int s : last.successors) {
    if (std::find(route.begin(), route.end(), s) == route.end()) {
      next.push_back(s);
    }
  }
  if (static_cast<int>(route.size()) >= max_depth || next.empty()) {
    if (std::find(out.begin(), out.end(), route) == out.end()) {
      out.push_back(route);
    }
    return;
  }
  for (int s : next) {
    route.push_back(s);
    extend_routes(network, route, max_depth, out);
    route.pop_back();
  }
}

std::vector<Point> route_polyline(const LaneletNetwork & network, const std::vector<int> & route)
{
  std::vector<Point> pts;
  for (int id : route) {
    for (const auto & p : network.lanelet(id).centerline()) {
      if (pts.empty() || geometry::distance(pts.back(), p) > 1e-6) {
        pts.push_back(p);
      }
    }
  }
  return pts;
}

double route_length(const std::vector<Point> & pts)
{
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    len += geometry::distance(pts[i], pts[i + 1]);
  }
  return len;
}

double heading_at(const geometry::CurvilinearFrame & f, double s)
{
  return f.heading(std::clamp(s, 0.0, f.length()));
}

}  // namespace

std::vector<std::vector<int>> find_possible_routes(
  const LaneletNetwork & network, int lanelet_id, int max_depth)
{
  network.lanelet(lanelet_id);
  std::vector<std::vector<int>> out;
  std::vector<int> route{lanelet_id};
  extend_routes(network, route, std::max(1, max_depth), out);
  return out;
}

int find_current_lanelet(const LaneletNetwork & network, const Point & p)
{
  int best_id = 0;
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int id : network.lanelets_containing(p, 1e-3)) {
    double d = std::numeric_limits<double>::infinity();
    try {
      d = std::abs(network.centerline_frame(id).to_curvilinear(p).d);
    } catch (const OutOfDomainError &) {
      d = geometry::min_distance(network.polygon(id), p) + 1e6;
    }
    if (!found || d < best - 1e-12) {
      best = d;
      best_id = id;
      found = true;
    }
  }
  if (!found) {
    throw PlacementError(
      "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is on no lanelet");
  }
  return best_id;
}

PhantomAgent predict_agent(
  const SpawnPoint & sp, AgentKind kind, const Scenario & scenario, int horizon,
  const PredictionConfig & cfg, int id)
{
  ScopedTimer timer("predict_agent");
  PhantomAgent pa;
  pa.id = id;
  pa.kind = kind;
  pa.shape = agent_shape(kind);
  pa.spawn = sp;
  const double dt = scenario.dt;

  if (kind == AgentKind::Pedestrian) {
    const auto & frame = scenario.reference_frame();
    geometry::FrenetPoint f;
    try {
      f = frame.to_curvilinear(sp.position);
    } catch (const OutOfDomainError & e) {
      throw PlacementError(std::string("pedestrian spawn point off the reference path: ") + e.what());
    }
    const Point n = geometry::perp(frame.segment_tangent(f.s));
    const Point dir = f.d > 1e-9 ? -n : n;
    const double v = cfg.pedestrian_speed;
    const double theta = std::atan2(dir.y, dir.x);
    pa.initial = {0.0, sp.position.x, sp.position.y, theta, v};
    PredictedTrajectory pred;
    for (int k = 0; k <= horizon; ++k) {
      const Point p = sp.position + (v * k * dt) * dir;
      pred.states.push_back({k * dt, p.x, p.y, theta, v});
    }
    pa.predictions.push_back(std::move(pred));
    return pa;
  }

  const int lanelet_id = find_current_lanelet(scenario.network, sp.position);
  const auto & lanelet = scenario.network.lanelet(lanelet_id);
  double v = kind == AgentKind::Bicycle ? cfg.bicycle_speed : cfg.vehicle_speed;
  if (lanelet.speed_limit) {
    v = std::min(v, *lanelet.speed_limit);
  }
  const auto & own = scenario.network.centerline_frame(lanelet_id);
  double theta = 0.0;
  try {
    theta = own.heading(own.to_curvilinear(sp.position).s);
  } catch (const OutOfDomainError &) {
    theta = own.heading(0.0);
  }
  pa.initial = {0.0, sp.position.x, sp.position.y, theta, v};

  const double needed = v * horizon * dt;
  struct Candidate
  {
    std::vector<int> route;
    std::shared_ptr<const geometry::CurvilinearFrame> frame;
    double s0;
    double d0;
    double remaining;
    bool valid;
  };
  std::vector<Candidate> candidates;
  for (auto & route : find_possible_routes(scenario.network, lanelet_id, cfg.route_depth)) {
    const auto pts = route_polyline(scenario.network, route);
    double half = 0.0;
    for (int lid : route) {
      const auto & l = scenario.network.lanelet(lid);
      for (std::size_t i = 0; i < l.left.size(); ++i) {
        half = std::max(half, geometry::distance(l.left[i], l.right[i]));
      }
    }
    auto frame = std::make_shared<const geometry::CurvilinearFrame>(pts, half + 1.0);
    geometry::FrenetPoint f;
    try {
      f = frame->to_curvilinear(sp.position);
    } catch (const OutOfDomainError &) {
      continue;
    }
    const double remaining = route_length(pts) - f.s;
    const bool terminal = scenario.network.lanelet(route.back()).successors.empty();
    candidates.push_back({route, frame, f.s, f.d, remaining, remaining >= needed || terminal});
  }
  if (candidates.empty()) {
    throw PlacementError("spawn point cannot be projected onto any route from lanelet " +
                         std::to_string(lanelet_id));
  }
  const bool any_valid =
    std::any_of(candidates.begin(), candidates.end(), [](const auto & c) { return c.valid; });
  if (!any_valid) {
    auto longest = std::max_element(
      candidates.begin(), candidates.end(),
      [](const auto & a, const auto & b) { return a.remaining < b.remaining; });
    longest->valid = true;
  }
  for (const auto & c : candidates) {
    if (!c.valid) {
      continue;
    }
    PredictedTrajectory pred;
    pred.route_frame = c.frame;
    pred.s0 = c.s0;
    for (int k = 0; k <= horizon; ++k) {
      const double s = c.s0 + v * k * dt;
      const Point p = k == 0 ? sp.position : c.frame->from_curvilinear_extended(s, c.d0);
      const double th = k == 0 ? theta : heading_at(*c.frame, s);
      pred.states.push_back({k * dt, p.x, p.y, th, v});
    }
    pa.routes.push_back(c.route);
    pa.predictions.push_back(std::move(pred));
  }
  return pa;
}

std::vector<PhantomAgent> predict_agents(
  const std::vector<SpawnPoint> & spawn_points, const Scenario & scenario, int horizon,
  const PredictionConfig & cfg)
{
  ScopedTimer timer("phantom_prediction");
  std::vector<PhantomAgent> out;
  int next_id = 0;
  for (const auto & sp : spawn_points) {
    for (AgentKind kind : sp.suggested_agent_kinds) {
      try {
        out.push_back(predict_agent(sp, kind, scenario, horizon, cfg, next_id));
        ++next_id;
      } catch (const PlacementError &) {
      }
    }
  }
  return out;
}

}  // namespace blindspot
