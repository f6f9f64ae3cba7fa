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

#ifndef BLINDSPOT__GEOMETRY__SHAPE_HPP_
#define BLINDSPOT__GEOMETRY__SHAPE_HPP_

#include "blindspot/geometry/polygon.hpp"

namespace blindspot::geometry
{

struct Pose
{
  double x{0.0};
  double y{0.0};
  double theta{0.0};

  Point position() const { return {x, y}; }
};

/// Body shape of a road user: a centred rectangle or a disc.
class Shape
{
public:
  enum class Type { Rectangle, Disc };

  static Shape rectangle(double length, double width) { return Shape{Type::Rectangle, length, width}; }
  static Shape disc(double radius) { return Shape{Type::Disc, radius, radius}; }

  Type type() const { return type_; }
  double length() const { return type_ == Type::Rectangle ? a_ : 2.0 * a_; }
  double width() const { return type_ == Type::Rectangle ? b_ : 2.0 * a_; }
  double radius() const { return a_; }

  /// Polygon at `pose`; discs are approximated by an inscribed 24-gon.
  Polygon footprint(const Pose & pose) const;
  /// Radius of the smallest circle about the centre enclosing the shape.
  double bounding_radius() const;
  double area() const;

private:
  Shape(Type t, double a, double b) : type_(t), a_(a), b_(b) {}

  Type type_;
  double a_;
  double b_;
};

/// Exact clearance between a polygon and a placed shape (discs are treated as
/// true circles); 0 when they touch or overlap.
double clearance(const Polygon & body, const Shape & shape, const Pose & pose);

}  // namespace blindspot::geometry

#endif  // BLINDSPOT__GEOMETRY__SHAPE_HPP_
