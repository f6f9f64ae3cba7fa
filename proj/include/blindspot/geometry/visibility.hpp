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

#ifndef BLINDSPOT__GEOMETRY__VISIBILITY_HPP_
#define BLINDSPOT__GEOMETRY__VISIBILITY_HPP_

#include "blindspot/geometry/polygon.hpp"

#include <span>

namespace blindspot::geometry
{

struct VisibilityOptions
{
  /// Spacing of the rays that approximate the range arc [rad]; 0.5 deg.
  double angular_resolution{0.5 * std::numbers::pi / 180.0};
  /// Offset of the extra rays cast either side of every occluder endpoint [rad].
  double endpoint_offset{1e-7};
  /// Endpoints closer than this to each other are treated as one [m].
  double coincidence_eps{1e-9};
};

/// Star-shaped region seen from `origin` within `radius`, blocked by `occluders`.
///
/// Angular sweep: rays are cast at a fixed resolution plus at each occluder
/// endpoint (and just either side of it); each ray stops at the nearest
/// occluder hit or at `radius`. Vertices are ordered by angle, ties keep the
/// nearer hit first. Occluder segments passing through the origin are ignored.
Polygon visibility_region(
  const Point & origin, std::span<const Segment> occluders, double radius,
  const VisibilityOptions & options = {});

/// Disc polygon whose vertices coincide with the sweep's fixed-resolution rays.
Polygon sensor_disc(const Point & origin, double radius, const VisibilityOptions & options = {});

/// True if the open segment origin -> target crosses no occluder.
/// Contacts within `end_tolerance` of `target` do not block.
bool line_of_sight(
  const Point & origin, const Point & target, std::span<const Segment> occluders,
  double end_tolerance = 1e-9);

}  // namespace blindspot::geometry

#endif  // BLINDSPOT__GEOMETRY__VISIBILITY_HPP_
