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

#include "blindspot/geometry/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace blindspot::geometry
{

namespace
{

struct Ray
{
  double angle;
  double range;
};

int fixed_ray_count(const VisibilityOptions & options)
{
  return std::max(8, static_cast<int>(std::lround(2.0 * std::numbers::pi / options.angular_resolution)));
}

double wrap_positive(double a)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  return a < 0.0 ? a + two_pi : a;
}

std::optional<Point> segment_intersection(const Segment & s, const Segment & t)
{
  const Point r = s.b - s.a;
  const Point q = t.b - t.a;
  const double denom = cross(r, q);
  if (std::abs(denom) < 1e-18) {
    return std::nullopt;
  }
  const Point w = t.a - s.a;
  const double u = cross(w, q) / denom;
  const double v = cross(w, r) / denom;
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) {
    return std::nullopt;
  }
  return s.a + u * r;
}

// Distance from the origin to the disc polygon boundary along `angle`.
double chord_range(double angle, double radius, double step)
{
  const double a = wrap_positive(angle);
  const double centre = (std::floor(a / step) + 0.5) * step;
  return radius * std::cos(0.5 * step) / std::cos(a - centre);
}

// Angles where a segment crosses the disc polygon near the range circle.
void circle_crossings(
  const Point & origin, const Segment & s, double radius, double step,
  std::vector<double> & angles)
{
  const Point d = s.b - s.a;
  const Point f = s.a - origin;
  const double a = dot(d, d);
  if (a <= 0.0) {
    return;
  }
  const double b = 2.0 * dot(f, d);
  const double c = dot(f, f) - radius * radius;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    return;
  }
  const double sq = std::sqrt(disc);
  for (double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
    if (t >= 0.0 && t <= 1.0) {
      const Point p = s.a + t * d - origin;
      const auto sector = static_cast<long>(std::floor(wrap_positive(std::atan2(p.y, p.x)) / step));
      for (long j = sector - 1; j <= sector + 1; ++j) {
        const Segment chord{
          origin + radius * from_angle(j * step), origin + radius * from_angle((j + 1) * step)};
        if (const auto hit = segment_intersection(s, chord)) {
          const Point q = *hit - origin;
          angles.push_back(std::atan2(q.y, q.x));
        }
      }
    }
  }
}

}  // namespace

Polygon visibility_region(
  const Point & origin, std::span<const Segment> occluders, double radius,
  const VisibilityOptions & options)
{
  std::vector<Segment> relevant;
  relevant.reserve(occluders.size());
  for (const auto & s : occluders) {
    const double dist = point_segment_distance(origin, s);
    if (dist <= radius && dist > 1e-12) {
      relevant.push_back(s);
    }
  }

  const int n_fixed = fixed_ray_count(options);
  const double step = 2.0 * std::numbers::pi / n_fixed;
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(n_fixed) + 6 * relevant.size());
  for (int i = 0; i < n_fixed; ++i) {
    angles.push_back(i * step);
  }
  std::vector<double> critical;
  for (const auto & s : relevant) {
    for (const Point & e : {s.a, s.b}) {
      const Point v = e - origin;
      if (norm(v) <= radius) {
        critical.push_back(std::atan2(v.y, v.x));
      }
    }
    circle_crossings(origin, s, radius, step, critical);
  }
  for (double a : critical) {
    angles.push_back(wrap_positive(a));
    angles.push_back(wrap_positive(a - options.endpoint_offset));
    angles.push_back(wrap_positive(a + options.endpoint_offset));
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(
    std::unique(angles.begin(), angles.end(), [](double a, double b) { return b - a < 1e-13; }),
    angles.end());

  std::vector<Ray> rays;
  rays.reserve(angles.size());
  for (double a : angles) {
    const Point dir = from_angle(a);
    const double limit = chord_range(a, radius, step);
    double range = limit;
    for (const auto & s : relevant) {
      if (const auto u = ray_segment_hit(origin, dir, s); u && *u > 1e-12 && *u < range) {
        range = *u;
      }
    }
    rays.push_back({a, range});
  }

  Polygon region;
  region.outer.reserve(rays.size());
  for (const auto & r : rays) {
    const Point p = origin + r.range * from_angle(r.angle);
    if (!region.outer.empty() && distance(region.outer.back(), p) < options.coincidence_eps) {
      continue;
    }
    region.outer.push_back(p);
  }
  while (region.outer.size() > 1 &&
         distance(region.outer.front(), region.outer.back()) < options.coincidence_eps) {
    region.outer.pop_back();
  }
  return region;
}

Polygon sensor_disc(const Point & origin, double radius, const VisibilityOptions & options)
{
  return make_disc(origin, radius, fixed_ray_count(options));
}

bool line_of_sight(
  const Point & origin, const Point & target, std::span<const Segment> occluders,
  double end_tolerance)
{
  const Segment sight{origin, target};
  for (const auto & s : occluders) {
    if (!segments_intersect(sight, s)) {
      continue;
    }
    if (point_segment_distance(target, s) <= end_tolerance) {
      continue;
    }
    return false;
  }
  return true;
}

}  // namespace blindspot::geometry
