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

#ifndef BLINDSPOT__PLANNER__FRENET_PLANNER_HPP_
#define BLINDSPOT__PLANNER__FRENET_PLANNER_HPP_

#include "blindspot/assessment/safety_assessor.hpp"
#include "blindspot/geometry/curvilinear.hpp"
#include "blindspot/metrics/criticality.hpp"
#include "blindspot/metrics/ego_trajectory.hpp"
#include "blindspot/scenario/scenario.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace blindspot
{

struct FrenetState
{
  double s{0.0};
  double s_d{0.0};
  double s_dd{0.0};
  double d{0.0};
  double d_d{0.0};
  double d_dd{0.0};
};

struct SamplingConfig
{
  std::vector<double> d_end{-1.5, -0.75, 0.0, 0.75, 1.5};
  std::vector<double> durations{2.0, 3.0};
  /// Absolute end velocities; when empty, v_end_fractions * v_target is used.
  std::vector<double> v_end;
  std::vector<double> v_end_fractions{0.0, 0.25, 0.5, 0.75, 1.0};
  /// Steering limit for the curvature bound [rad].
  double delta_max{0.7};
  /// Distance regulariser of the obstacle cost [m].
  double epsilon{0.1};

  /// Throws InvariantError for an empty list or a duration that is not a
  /// positive multiple of dt.
  void validate(double dt) const;
  int horizon_steps(double dt) const;
};

struct CostWeights
{
  double lateral_jerk{1.0};
  double longitudinal_jerk{1.0};
  double dist_to_reference{3.0};
  double velocity{0.1};
  double dist_to_obstacles{0.1};
  double collision_probability{200.0};
};

/// An obstacle known to the planner, with its footprint pose per trajectory step.
struct ObstacleTrack
{
  int id{0};
  bool is_static{false};
  geometry::Shape shape{geometry::Shape::rectangle(4.5, 2.0)};
  /// Static obstacles use `footprint` and leave poses empty.
  Polygon footprint;
  std::vector<geometry::Pose> poses;
  double speed{0.0};

  Polygon footprint_at(std::size_t k) const;
};

/// Frenet state of a Cartesian ego state (zero accelerations).
FrenetState frenet_state(const EgoState & ego, const geometry::CurvilinearFrame & frame);

/// Fills x, y, theta, v, kappa of every state from its Frenet fields.
void to_cartesian(EgoTrajectory & traj, const geometry::CurvilinearFrame & frame);

/// One trajectory per (d_end, duration, v_end); every sample covers
/// `horizon_steps` steps, holding d_end and v_end after its duration.
std::vector<EgoTrajectory> sample_trajectories(
  const FrenetState & start, const SamplingConfig & cfg, const geometry::CurvilinearFrame & frame,
  double dt, int horizon_steps, double v_target);

bool is_feasible(const EgoTrajectory & traj, const EgoParams & params, const SamplingConfig & cfg);

std::vector<EgoTrajectory> feasibility_filter(
  const std::vector<EgoTrajectory> & trajs, const EgoParams & params, const SamplingConfig & cfg);

struct RankedTrajectory
{
  EgoTrajectory trajectory;
  double cost{0.0};
};

struct CostContext
{
  const EgoParams * params{nullptr};
  const std::vector<ObstacleTrack> * obstacles{nullptr};
  double v_target{8.33};
  double epsilon{0.1};
};

double trajectory_cost(const EgoTrajectory & traj, const CostContext & ctx, const CostWeights & w);

/// Ascending cost, stable in input order.
std::vector<RankedTrajectory> rank(
  const std::vector<EgoTrajectory> & trajs, const CostContext & ctx, const CostWeights & w);

/// True if the ego footprint overlaps any track at any step.
bool collides_with(
  const EgoTrajectory & traj, const EgoParams & params, const std::vector<ObstacleTrack> & tracks);

using OcclusionEvaluator = std::function<CriticalityReport(const EgoTrajectory &)>;

struct PlanRequest
{
  FrenetState start;
  const geometry::CurvilinearFrame * frame{nullptr};
  EgoParams params;
  double dt{0.1};
  double v_target{8.33};
  SamplingConfig sampling;
  CostWeights weights;
  ThresholdConfig thresholds;
  std::vector<ObstacleTrack> visible_obstacles;
  OcclusionEvaluator evaluator;
  /// Trajectory executed at the previous step (its state 1 is `start`).
  const EgoTrajectory * previous{nullptr};
};

struct PlanResult
{
  EgoTrajectory chosen;
  std::optional<CriticalityReport> report;
  Verdict verdict;
  int rejections{0};
  int baseline_rejections{0};
  int occlusion_rejections{0};
  int candidates{0};
  int feasible{0};
  /// Rank of the chosen trajectory, -1 for the fallback.
  int chosen_rank{-1};
  bool fallback{false};
};

/// Maximal braking from `start` along the previous lateral profile.
EgoTrajectory fallback_trajectory(
  const FrenetState & start, const geometry::CurvilinearFrame & frame, double dt, int horizon_steps,
  double a_max, const EgoTrajectory * previous);

/// Evaluation funnel: sample, feasibility, rank, baseline collision check,
/// occlusion gate. Falls back to maximal braking when no candidate survives.
PlanResult plan_step(const PlanRequest & request);

}  // namespace blindspot

#endif  // BLINDSPOT__PLANNER__FRENET_PLANNER_HPP_
