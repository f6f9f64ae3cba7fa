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

#ifndef BLINDSPOT__GEOMETRY__POINT_HPP_
#define BLINDSPOT__GEOMETRY__POINT_HPP_

#include <cmath>
#include <numbers>
#include <optional>

namespace blindspot::geometry
{

struct Point
{
  double x{0.0};
  double y{0.0};

  constexpr Point & operator+=(const Point & o)
  {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point & operator-=(const Point & o)
  {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Point operator+(Point a, const Point & b) { return a += b; }
  friend constexpr Point operator-(Point a, const Point & b) { return a -= b; }
  friend constexpr Point operator*(double k, const Point & p) { return {k * p.x, k * p.y}; }
  friend constexpr Point operator*(const Point & p, double k) { return {k * p.x, k * p.y}; }
  friend constexpr Point operator/(const Point & p, double k) { return {p.x / k, p.y / k}; }
  friend constexpr Point operator-(const Point & p) { return {-p.x, -p.y}; }
  friend constexpr bool operator==(const Point &, const Point &) = default;
};

constexpr double dot(const Point & a, const Point & b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point & a, const Point & b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point & p) { return std::hypot(p.x, p.y); }
inline double distance(const Point & a, const Point & b) { return norm(a - b); }

/// Counter-clockwise quarter turn.
constexpr Point perp(const Point & p) { return {-p.y, p.x}; }

inline Point unit(const Point & p)
{
  const double n = norm(p);
  return n > 0.0 ? p / n : Point{};
}

inline Point from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline Point rotate(const Point & p, double theta)
{
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a + std::numbers::pi, two_pi);
  if (a <= 0.0) {
    a += two_pi;
  }
  return a - std::numbers::pi;
}

struct Segment
{
  Point a;
  Point b;
};

/// Closest point on segment [a, b] to p.
inline Point closest_point(const Segment & s, const Point & p)
{
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 <= 0.0) {
    return s.a;
  }
  double t = dot(p - s.a, d) / len2;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return s.a + t * d;
}

inline double point_segment_distance(const Point & p, const Segment & s)
{
  return distance(p, closest_point(s, p));
}

/// True if the closed segments share at least one point.
bool segments_intersect(const Segment & s, const Segment & t);

double segment_segment_distance(const Segment & s, const Segment & t);

/// Parameter u along the ray origin + u * dir where it meets the segment, if any.
/// `dir` need not be unit length; u is in units of |dir|.
std::optional<double> ray_segment_hit(const Point & origin, const Point & dir, const Segment & s);

}  // namespace blindspot::geometry

#endif  // BLINDSPOT__GEOMETRY__POINT_HPP_
