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

#ifndef BLINDSPOT__GEOMETRY__POLYGON_HPP_
#define BLINDSPOT__GEOMETRY__POLYGON_HPP_

#include "blindspot/geometry/point.hpp"

#include <span>
#include <vector>

namespace blindspot::geometry
{

/// Open ring: the closing edge from back() to front() is implicit.
using Ring = std::vector<Point>;

/// Signed shoelace area, positive for counter-clockwise rings.
double signed_area(std::span<const Point> ring);

/// Exterior ring counter-clockwise, holes clockwise.
struct Polygon
{
  Ring outer;
  std::vector<Ring> holes;

  double area() const;
  bool empty() const { return outer.size() < 3; }
  /// Closed-set membership (boundary counts as inside).
  bool contains(const Point & p) const;
  std::vector<Segment> edges() const;
  Point centroid() const;
};

/// Members are pairwise interior-disjoint.
struct PolygonSet
{
  std::vector<Polygon> polygons;

  PolygonSet() = default;
  PolygonSet(Polygon p)  // NOLINT(google-explicit-constructor)
  {
    if (!p.empty()) {
      polygons.push_back(std::move(p));
    }
  }
  explicit PolygonSet(std::vector<Polygon> ps) : polygons(std::move(ps)) {}

  double area() const;
  bool empty() const { return polygons.empty(); }
  bool contains(const Point & p) const;
  std::vector<Segment> edges() const;
  /// Distance from p to the nearest boundary edge; +inf for an empty set.
  double boundary_distance(const Point & p) const;
};

enum class BooleanOp { Union, Intersection, Difference };

/// Polygon set algebra. Inputs are snapped to a 1e-9 m grid first.
/// Throws DegenerateGeometryError for self-intersecting input rings.
PolygonSet boolean(const PolygonSet & a, const PolygonSet & b, BooleanOp op);

inline PolygonSet unite(const PolygonSet & a, const PolygonSet & b)
{
  return boolean(a, b, BooleanOp::Union);
}
inline PolygonSet intersect(const PolygonSet & a, const PolygonSet & b)
{
  return boolean(a, b, BooleanOp::Intersection);
}
inline PolygonSet subtract(const PolygonSet & a, const PolygonSet & b)
{
  return boolean(a, b, BooleanOp::Difference);
}

/// Union of many polygons (each may overlap the others).
PolygonSet unite_all(std::span<const Polygon> polygons);

/// True if the exterior and every hole are simple rings.
bool is_simple(const Polygon & p);

/// Reorients rings (outer CCW, holes CW) and drops repeated vertices.
Polygon normalized(Polygon p);

/// 0 when the polygons overlap or touch; otherwise the smallest edge-pair distance.
double min_distance(const Polygon & a, const Polygon & b);

/// 0 when p is inside or on the polygon.
double min_distance(const Polygon & a, const Point & p);

/// Rectangle centred at `center`, long axis along `heading`.
Polygon make_rectangle(const Point & center, double heading, double length, double width);

/// Regular polygon inscribed in the circle, first vertex at angle 0.
Polygon make_disc(const Point & center, double radius, int vertices);

}  // namespace blindspot::geometry

#endif  // BLINDSPOT__GEOMETRY__POLYGON_HPP_
