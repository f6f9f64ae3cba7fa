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

#include "blindspot/sensor/sensor_model.hpp"

#include "blindspot/profiler.hpp"

#include <algorithm>
#include <cmath>

namespace blindspot
{

namespace
{

void append_edges(const Polygon & p, std::vector<geometry::Segment> & out)
{
  const auto e = p.edges();
  out.insert(out.end(), e.begin(), e.end());
}

PolygonSet shadow_of(
  const Polygon & footprint, const VisibilitySnapshot & snap, const SensorOptions & options)
{
  const auto edges = footprint.edges();
  const Polygon seen = geometry::visibility_region(snap.origin, edges, snap.range, options.visibility);
  PolygonSet shadow = geometry::subtract(snap.occluded, seen);
  return geometry::subtract(shadow, footprint);
}

}  // namespace

VisibilitySnapshot compute_visibility(
  const Scenario & scenario, const EgoState & ego, int k, const SensorOptions & options)
{
  ScopedTimer timer("sensor_model");
  VisibilitySnapshot snap;
  snap.k = k;
  snap.origin = ego.position();
  snap.range = scenario.ego_params.sensor_range;

  std::vector<Polygon> footprints;
  std::vector<std::pair<bool, int>> owners;
  for (const auto & o : scenario.static_obstacles) {
    footprints.push_back(o.footprint);
    owners.emplace_back(true, o.id);
  }
  for (const auto & o : scenario.dynamic_obstacles) {
    if (o.present_at(k)) {
      footprints.push_back(o.footprint(k));
      owners.emplace_back(false, o.id);
    }
  }

  snap.occluders = scenario.network.boundary();
  for (const auto & f : footprints) {
    append_edges(f, snap.occluders);
  }

  const Polygon disc = geometry::sensor_disc(snap.origin, snap.range, options.visibility);
  snap.sensed = geometry::intersect(disc, scenario.network.drivable_area());
  const Polygon region =
    geometry::visibility_region(snap.origin, snap.occluders, snap.range, options.visibility);
  PolygonSet visible = geometry::intersect(region, snap.sensed);
  if (!footprints.empty()) {
    visible = geometry::subtract(visible, geometry::unite_all(footprints));
  }
  snap.visible = std::move(visible);
  snap.occluded = geometry::subtract(snap.sensed, snap.visible);

  if (options.compute_shadows) {
    for (std::size_t i = 0; i < footprints.size(); ++i) {
      if (geometry::min_distance(footprints[i], snap.origin) > snap.range) {
        continue;
      }
      auto shadow = shadow_of(footprints[i], snap, options);
      if (owners[i].first) {
        snap.static_shadows[owners[i].second] = std::move(shadow);
      } else {
        snap.dynamic_shadows[owners[i].second] = std::move(shadow);
      }
    }
  }
  return snap;
}

std::vector<Point> boundary_samples(const Polygon & footprint, double spacing)
{
  std::vector<Point> pts;
  for (const auto & e : footprint.edges()) {
    const double len = geometry::distance(e.a, e.b);
    const int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int i = 0; i < n; ++i) {
      pts.push_back(e.a + (static_cast<double>(i) / n) * (e.b - e.a));
    }
  }
  return pts;
}

namespace
{

bool footprint_visible(const Polygon & footprint, const VisibilitySnapshot & snap)
{
  if (geometry::min_distance(footprint, snap.origin) > snap.range) {
    return false;
  }
  for (const auto & p : boundary_samples(footprint, 0.25)) {
    if (geometry::distance(p, snap.origin) > snap.range) {
      continue;
    }
    if (geometry::line_of_sight(snap.origin, p, snap.occluders, 1e-6)) {
      return true;
    }
  }
  return false;
}

}  // namespace

VisibleObstacles visible_obstacles(const Scenario & scenario, const VisibilitySnapshot & snapshot)
{
  VisibleObstacles out;
  for (const auto & o : scenario.static_obstacles) {
    if (footprint_visible(o.footprint, snapshot)) {
      out.static_ids.push_back(o.id);
    }
  }
  for (const auto & o : scenario.dynamic_obstacles) {
    if (o.present_at(snapshot.k) && footprint_visible(o.footprint(snapshot.k), snapshot)) {
      out.dynamic_ids.push_back(o.id);
    }
  }
  return out;
}

}  // namespace blindspot
