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

#ifndef BLINDSPOT__GEOMETRY__CURVILINEAR_HPP_
#define BLINDSPOT__GEOMETRY__CURVILINEAR_HPP_

#include "blindspot/geometry/point.hpp"

#include <vector>

namespace blindspot::geometry
{

struct FrenetPoint
{
  double s{0.0};
  double d{0.0};
};

/// Frenet (s, d) coordinates over a piecewise-linear reference path.
///
/// Each vertex carries a unit normal (the bisector of its adjacent segment
/// normals) and normals are linearly interpolated along every segment, so the
/// mapping (s, d) -> point is continuous across vertices and its inverse is
/// exact inside the projection domain. `d` is positive to the left of the
/// direction of travel.
class CurvilinearFrame
{
public:
  /// Throws InvariantError for fewer than 2 points or a zero-length segment.
  explicit CurvilinearFrame(std::vector<Point> path, double half_width = 15.0);

  double length() const { return arc_.back(); }
  double half_width() const { return half_width_; }
  const std::vector<Point> & path() const { return path_; }
  const std::vector<double> & arc_lengths() const { return arc_; }

  /// Throws OutOfDomainError when p has no projection with |d| <= half_width
  /// inside [0, length]. Equidistant candidates resolve to the smaller s.
  FrenetPoint to_curvilinear(const Point & p) const;

  /// Throws OutOfDomainError for s outside [0, length].
  Point from_curvilinear(double s, double d) const;

  /// Like from_curvilinear, but continues straight past either end of the path.
  Point from_curvilinear_extended(double s, double d) const;

  /// Unit normal (left) at s.
  Point normal(double s) const;
  /// Unit tangent at s, perpendicular to normal(s).
  Point tangent(double s) const;
  double heading(double s) const;
  /// Direction of the path segment holding s (the later one at a vertex).
  Point segment_tangent(double s) const;

private:
  struct Locator
  {
    std::size_t segment;
    double lambda;
  };
  Locator locate(double s) const;
  Point interpolated_normal(std::size_t segment, double lambda) const;

  std::vector<Point> path_;
  std::vector<double> arc_;
  std::vector<Point> vertex_normals_;
  double half_width_;
};

}  // namespace blindspot::geometry

#endif  // BLINDSPOT__GEOMETRY__CURVILINEAR_HPP_
