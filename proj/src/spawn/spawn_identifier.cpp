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

#include "blindspot/spawn/spawn_identifier.hpp"

#include "blindspot/errors.hpp"
#include "blindspot/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace blindspot
{

const char * to_string(AgentKind kind)
{
  switch (kind) {
    case AgentKind::Pedestrian:
      return "pedestrian";
    case AgentKind::Bicycle:
      return "bicycle";
    case AgentKind::Vehicle:
      return "vehicle";
  }
  return "pedestrian";
}

const char * to_string(SpawnCause cause)
{
  switch (cause) {
    case SpawnCause::StaticObstacle:
      return "static_obstacle";
    case SpawnCause::LaneGeometry:
      return "lane_geometry";
    case SpawnCause::DynamicObstacle:
      return "dynamic_obstacle";
  }
  return "lane_geometry";
}

namespace
{

std::vector<Polygon> visible_footprints(
  const Scenario & scenario, int k, const VisibleObstacles & visible)
{
  std::vector<Polygon> out;
  for (const auto & o : scenario.static_obstacles) {
    if (std::find(visible.static_ids.begin(), visible.static_ids.end(), o.id) !=
        visible.static_ids.end()) {
      out.push_back(o.footprint);
    }
  }
  for (const auto & o : scenario.dynamic_obstacles) {
    if (std::find(visible.dynamic_ids.begin(), visible.dynamic_ids.end(), o.id) !=
        visible.dynamic_ids.end()) {
      out.push_back(o.footprint(k));
    }
  }
  return out;
}

bool is_pedestrian_only(const SpawnPoint & sp)
{
  return sp.cause != SpawnCause::DynamicObstacle;
}

// Crossing parameters (in [0, 1]) of segment `line` with the given edges.
std::vector<double> crossings(const geometry::Segment & line, const std::vector<geometry::Segment> & edges)
{
  std::vector<double> ts;
  const Point dir = line.b - line.a;
  for (const auto & e : edges) {
    if (auto u = geometry::ray_segment_hit(line.a, dir, e); u && *u >= 0.0 && *u <= 1.0) {
      ts.push_back(*u);
    }
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

bool strictly_occluded(const Point & p, const VisibilitySnapshot & snap)
{
  return !snap.visible.contains(p) && snap.occluded.contains(p);
}

}  // namespace

Polygon spawn_footprint(const SpawnPoint & sp, const SpawnConfig & cfg)
{
  if (is_pedestrian_only(sp)) {
    return geometry::make_disc(sp.position, cfg.pedestrian_radius, 24);
  }
  return geometry::make_rectangle(sp.position, sp.heading, cfg.min_pa_length, cfg.min_pa_width);
}

SpawnChecks check_spawn_point(
  const SpawnPoint & sp, const Scenario & scenario, const VisibilitySnapshot & snapshot,
  const VisibleObstacles & visible, const SpawnConfig & cfg)
{
  SpawnChecks c;
  c.in_drivable_area = scenario.network.drivable_area().contains(sp.position);
  c.occluded = !snapshot.visible.contains(sp.position) &&
               (snapshot.occluded.contains(sp.position) ||
                snapshot.occluded.boundary_distance(sp.position) <= 1e-3);
  c.clear_of_visible_obstacles = true;
  const auto shape = is_pedestrian_only(sp)
                       ? geometry::Shape::disc(cfg.pedestrian_radius)
                       : geometry::Shape::rectangle(cfg.min_pa_length, cfg.min_pa_width);
  const geometry::Pose pose{sp.position.x, sp.position.y, sp.heading};
  for (const auto & fp : visible_footprints(scenario, snapshot.k, visible)) {
    if (geometry::clearance(fp, shape, pose) <= 0.0) {
      c.clear_of_visible_obstacles = false;
      break;
    }
  }
  return c;
}

std::vector<SpawnPoint> spawn_points_static(
  const Scenario & scenario, const EgoState & ego, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg)
{
  ScopedTimer timer("spawn_points_static");
  std::vector<SpawnPoint> out;
  const auto visible = visible_obstacles(scenario, snapshot);
  const auto & frame = scenario.reference_frame();
  const auto vis_edges = snapshot.visible.edges();

  std::vector<const StaticObstacle *> near;
  for (const auto & o : scenario.static_obstacles) {
    if (std::find(visible.static_ids.begin(), visible.static_ids.end(), o.id) ==
        visible.static_ids.end()) {
      continue;
    }
    if (geometry::min_distance(o.footprint, ego.position()) <= cfg.static_distance) {
      near.push_back(&o);
    }
  }
  std::stable_sort(near.begin(), near.end(), [&](const auto * a, const auto * b) {
    return geometry::min_distance(a->footprint, ego.position()) <
           geometry::min_distance(b->footprint, ego.position());
  });

  for (const auto * o : near) {
    double s_min = std::numeric_limits<double>::infinity();
    double s_max = -s_min;
    for (const auto & v : o->footprint.outer) {
      try {
        const auto f = frame.to_curvilinear(v);
        s_min = std::min(s_min, f.s);
        s_max = std::max(s_max, f.s);
      } catch (const OutOfDomainError &) {
      }
    }
    if (!(s_min <= s_max)) {
      continue;
    }
    for (double s_line : {s_min - cfg.lateral_margin, s_max + cfg.lateral_margin}) {
      s_line = std::clamp(s_line, 0.0, frame.length());
      const double hw = frame.half_width();
      const geometry::Segment line{frame.from_curvilinear(s_line, -hw), frame.from_curvilinear(s_line, hw)};
      const double len = geometry::distance(line.a, line.b);
      const Point u = (line.b - line.a) / len;
      std::optional<SpawnPoint> best;
      double best_dist = std::numeric_limits<double>::infinity();
      for (double t : crossings(line, vis_edges)) {
        const Point x = line.a + t * (line.b - line.a);
        const Point before = x - 1e-3 * u;
        const Point after = x + 1e-3 * u;
        Point candidate;
        if (snapshot.visible.contains(before) && strictly_occluded(after, snapshot)) {
          candidate = x + cfg.inset * u;
        } else if (snapshot.visible.contains(after) && strictly_occluded(before, snapshot)) {
          candidate = x - cfg.inset * u;
        } else {
          continue;
        }
        SpawnPoint sp{candidate, SpawnCause::StaticObstacle, o->id, {AgentKind::Pedestrian}, 0.0};
        if (!check_spawn_point(sp, scenario, snapshot, visible, cfg).all()) {
          continue;
        }
        const double dist = geometry::min_distance(o->footprint, candidate);
        if (dist < best_dist) {
          best_dist = dist;
          best = sp;
        }
      }
      if (best) {
        out.push_back(*best);
      }
    }
  }
  return out;
}

std::vector<SpawnPoint> spawn_points_lane_geometry(
  const Scenario & scenario, const EgoState & ego, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg)
{
  ScopedTimer timer("spawn_points_lane_geometry");
  std::vector<SpawnPoint> out;
  const auto visible = visible_obstacles(scenario, snapshot);
  const auto & frame = scenario.reference_frame();
  const auto & path = frame.path();
  const auto & arc = frame.arc_lengths();
  const double min_area = std::numbers::pi * cfg.pedestrian_radius * cfg.pedestrian_radius;

  for (const auto & component : snapshot.occluded.polygons) {
    if (component.area() < min_area) {
      continue;
    }
    const auto edges = component.edges();
    std::vector<double> entries;
    const double s_start = std::max(0.0, ego.s);
    if (component.contains(frame.from_curvilinear(std::min(s_start + cfg.inset, frame.length()), 0.0))) {
      entries.push_back(s_start);
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (arc[i + 1] <= s_start) {
        continue;
      }
      const geometry::Segment seg{path[i], path[i + 1]};
      for (double t : crossings(seg, edges)) {
        const double s = arc[i] + t * (arc[i + 1] - arc[i]);
        if (s > s_start) {
          entries.push_back(s);
        }
      }
    }
    std::sort(entries.begin(), entries.end());
    for (double s : entries) {
      const double s_in = s + cfg.inset;
      if (s_in > frame.length()) {
        break;
      }
      const Point p = frame.from_curvilinear(s_in, 0.0);
      if (!component.contains(p)) {
        continue;
      }
      SpawnPoint sp{p, SpawnCause::LaneGeometry, std::nullopt, {AgentKind::Pedestrian}, 0.0};
      if (check_spawn_point(sp, scenario, snapshot, visible, cfg).all()) {
        out.push_back(sp);
        break;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](const SpawnPoint & a, const SpawnPoint & b) {
    return frame.to_curvilinear(a.position).s < frame.to_curvilinear(b.position).s;
  });
  return out;
}

namespace
{

std::optional<double> lanelet_heading(const LaneletNetwork & network, const Point & p)
{
  std::optional<double> heading;
  double best = std::numeric_limits<double>::infinity();
  for (int id : network.lanelets_containing(p)) {
    try {
      const auto & f = network.centerline_frame(id);
      const auto fp = f.to_curvilinear(p);
      if (std::abs(fp.d) < best) {
        best = std::abs(fp.d);
        heading = f.heading(fp.s);
      }
    } catch (const OutOfDomainError &) {
    }
  }
  return heading;
}

}  // namespace

std::vector<SpawnPoint> spawn_points_dynamic(
  const Scenario & scenario, const EgoState & ego, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg)
{
  ScopedTimer timer("spawn_points_dynamic");
  std::vector<SpawnPoint> out;
  const auto visible = visible_obstacles(scenario, snapshot);
  const auto & frame = scenario.reference_frame();
  for (int id : visible.dynamic_ids) {
    auto it = std::find_if(
      scenario.dynamic_obstacles.begin(), scenario.dynamic_obstacles.end(),
      [id](const auto & o) { return o.id == id; });
    const auto & obs = *it;
    const auto & st = obs.state_at(snapshot.k);
    double s_o = 0.0;
    try {
      s_o = frame.to_curvilinear({st.x, st.y}).s;
    } catch (const OutOfDomainError &) {
      continue;
    }
    if (std::abs(s_o - ego.s) > cfg.dynamic_distance) {
      continue;
    }
    auto sh = snapshot.dynamic_shadows.find(id);
    if (sh == snapshot.dynamic_shadows.end() || sh->second.empty()) {
      continue;
    }
    const Polygon * largest = nullptr;
    for (const auto & c : sh->second.polygons) {
      if (!largest || c.area() > largest->area()) {
        largest = &c;
      }
    }
    if (largest->area() < cfg.min_pa_length * cfg.min_pa_width) {
      continue;
    }
    const Point c = largest->centroid();
    if (!largest->contains(c)) {
      continue;
    }
    const auto heading = lanelet_heading(scenario.network, c);
    if (!heading) {
      continue;
    }
    SpawnPoint sp{c, SpawnCause::DynamicObstacle, id, {AgentKind::Bicycle, AgentKind::Vehicle}, *heading};
    const Polygon body = spawn_footprint(sp, cfg);
    if (geometry::subtract(body, *largest).area() > 1e-6) {
      continue;
    }
    if (check_spawn_point(sp, scenario, snapshot, visible, cfg).all()) {
      out.push_back(sp);
    }
  }
  return out;
}

std::vector<SpawnPoint> aggregate(
  const std::vector<std::vector<SpawnPoint>> & lists, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg)
{
  std::vector<SpawnPoint> out;
  std::vector<double> boundary;
  for (const auto & list : lists) {
    for (const auto & sp : list) {
      const double b = snapshot.visible.boundary_distance(sp.position);
      bool merged = false;
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].cause == sp.cause &&
            geometry::distance(out[i].position, sp.position) < cfg.dedup_radius) {
          if (b < boundary[i]) {
            out[i] = sp;
            boundary[i] = b;
          }
          merged = true;
          break;
        }
      }
      if (!merged) {
        out.push_back(sp);
        boundary.push_back(b);
      }
    }
  }
  return out;
}

std::vector<SpawnPoint> identify_spawn_points(
  const Scenario & scenario, const EgoState & ego, const VisibilitySnapshot & snapshot,
  const SpawnConfig & cfg)
{
  ScopedTimer timer("spawn_identifier");
  return aggregate(
    {spawn_points_static(scenario, ego, snapshot, cfg),
     spawn_points_lane_geometry(scenario, ego, snapshot, cfg),
     spawn_points_dynamic(scenario, ego, snapshot, cfg)},
    snapshot, cfg);
}

}  // namespace blindspot
