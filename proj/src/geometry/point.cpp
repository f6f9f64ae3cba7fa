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

#include "blindspot/geometry/point.hpp"

#include <algorithm>

namespace blindspot::geometry
{

namespace
{

int orientation(const Point & a, const Point & b, const Point & c)
{
  const double v = cross(b - a, c - a);
  constexpr double eps = 1e-15;
  if (v > eps) {
    return 1;
  }
  if (v < -eps) {
    return -1;
  }
  return 0;
}

bool on_segment(const Point & a, const Point & b, const Point & p)
{
  return std::min(a.x, b.x) - 1e-15 <= p.x && p.x <= std::max(a.x, b.x) + 1e-15 &&
         std::min(a.y, b.y) - 1e-15 <= p.y && p.y <= std::max(a.y, b.y) + 1e-15;
}

}  // namespace

bool segments_intersect(const Segment & s, const Segment & t)
{
  if (std::max(s.a.x, s.b.x) < std::min(t.a.x, t.b.x) || std::max(t.a.x, t.b.x) < std::min(s.a.x, s.b.x) ||
      std::max(s.a.y, s.b.y) < std::min(t.a.y, t.b.y) || std::max(t.a.y, t.b.y) < std::min(s.a.y, s.b.y)) {
    return false;
  }
  const int o1 = orientation(s.a, s.b, t.a);
  const int o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a);
  const int o4 = orientation(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) {
    return true;
  }
  return (o1 == 0 && on_segment(s.a, s.b, t.a)) || (o2 == 0 && on_segment(s.a, s.b, t.b)) ||
         (o3 == 0 && on_segment(t.a, t.b, s.a)) || (o4 == 0 && on_segment(t.a, t.b, s.b));
}

double segment_segment_distance(const Segment & s, const Segment & t)
{
  if (segments_intersect(s, t)) {
    return 0.0;
  }
  return std::min(
    {point_segment_distance(s.a, t), point_segment_distance(s.b, t),
     point_segment_distance(t.a, s), point_segment_distance(t.b, s)});
}

std::optional<double> ray_segment_hit(const Point & origin, const Point & dir, const Segment & s)
{
  const Point e = s.b - s.a;
  const double denom = cross(dir, e);
  if (std::abs(denom) < 1e-18) {
    return std::nullopt;  // parallel; endpoints are caught by their own rays
  }
  const Point w = s.a - origin;
  const double u = cross(w, e) / denom;
  const double v = cross(w, dir) / denom;
  if (u < 0.0 || v < -1e-12 || v > 1.0 + 1e-12) {
    return std::nullopt;
  }
  return u;
}

}  // namespace blindspot::geometry
