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

#include "blindspot/geometry/shape.hpp"

#include <algorithm>
#include <cmath>

namespace blindspot::geometry
{

Polygon Shape::footprint(const Pose & pose) const
{
  if (type_ == Type::Disc) {
    return make_disc(pose.position(), a_, 24);
  }
  return make_rectangle(pose.position(), pose.theta, a_, b_);
}

double Shape::bounding_radius() const
{
  return type_ == Type::Disc ? a_ : 0.5 * std::hypot(a_, b_);
}

double Shape::area() const
{
  return type_ == Type::Disc ? std::numbers::pi * a_ * a_ : a_ * b_;
}

double clearance(const Polygon & body, const Shape & shape, const Pose & pose)
{
  if (shape.type() == Shape::Type::Disc) {
    return std::max(0.0, min_distance(body, pose.position()) - shape.radius());
  }
  return min_distance(body, shape.footprint(pose));
}

}  // namespace blindspot::geometry
