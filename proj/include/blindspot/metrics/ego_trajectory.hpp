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

#ifndef BLINDSPOT__METRICS__EGO_TRAJECTORY_HPP_
#define BLINDSPOT__METRICS__EGO_TRAJECTORY_HPP_

#include "blindspot/geometry/shape.hpp"

#include <vector>

namespace blindspot
{

struct TrajectoryState
{
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double s{0.0};
  double d{0.0};
  double theta{0.0};
  double v{0.0};
  double a{0.0};
  double kappa{0.0};
  /// Frenet derivatives: s', s'', d', d''.
  double s_d{0.0};
  double s_dd{0.0};
  double d_d{0.0};
  double d_dd{0.0};

  geometry::Pose pose() const { return {x, y, theta}; }
  geometry::Point position() const { return {x, y}; }
};

/// Time-stamped candidate motion; states[0] is the current ego state.
struct EgoTrajectory
{
  double dt{0.1};
  std::vector<TrajectoryState> states;
  /// Per-state Frenet jerks (d''' and s'''), used by the cost terms.
  std::vector<double> lateral_jerk;
  std::vector<double> longitudinal_jerk;
  /// Index in the sampled set; -1 for trajectories not produced by sampling.
  int sample_index{-1};
  /// Sampling parameters (end offset, duration, end velocity).
  double d_end{0.0};
  double duration{0.0};
  double v_end{0.0};

  int steps() const { return static_cast<int>(states.size()) - 1; }
  double horizon() const { return steps() * dt; }
};

}  // namespace blindspot

#endif  // BLINDSPOT__METRICS__EGO_TRAJECTORY_HPP_
