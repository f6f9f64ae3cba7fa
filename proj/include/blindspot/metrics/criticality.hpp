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

#ifndef BLINDSPOT__METRICS__CRITICALITY_HPP_
#define BLINDSPOT__METRICS__CRITICALITY_HPP_

#include "blindspot/metrics/ego_trajectory.hpp"
#include "blindspot/prediction/phantom_prediction.hpp"
#include "blindspot/scenario/scenario.hpp"

#include <optional>
#include <vector>

namespace blindspot
{

struct MetricsConfig
{
  /// Position uncertainty sigma(k) = sigma0 + sigma_rate * k * dt [m].
  double sigma0{0.2};
  double sigma_rate{0.3};
  double a_search_max{12.0};
  double brake_tolerance{0.01};
  /// Impact angles within this many radians of head-on scale c1 by head_on_gain.
  double head_on_angle{30.0 * std::numbers::pi / 180.0};
  double head_on_gain{1.2};
};

struct Encounter
{
  double dce{0.0};
  double ttce{0.0};
  int k{0};
};

struct BrakeResult
{
  double a_min_req{0.0};
  double btn{0.0};
  bool saturated{false};
};

struct AgentMetrics
{
  int agent_id{0};
  AgentKind kind{AgentKind::Pedestrian};
  double dce{0.0};
  double ttce{0.0};
  std::optional<double> ttc;
  std::optional<double> wttc;
  double p{0.0};
  double h{0.0};
  double r{0.0};
  double relative_speed{0.0};
};

struct CriticalityReport
{
  std::optional<double> ttc;
  std::optional<double> wttc;
  std::optional<double> ttce;
  std::optional<double> dce;
  double cp{0.0};
  double h{0.0};
  double r{0.0};
  double a_min_req{0.0};
  double btn{0.0};
  bool brake_saturated{false};
  std::optional<int> worst_agent_id;
  std::vector<AgentMetrics> agents;
};

/// Ego footprint polygons along the trajectory.
std::vector<Polygon> ego_footprints(const EgoTrajectory & ego, const EgoParams & params);

/// Closest encounter between the ego and one predicted trajectory.
/// Throws InvariantError when horizons differ.
Encounter dce_ttce(
  const EgoTrajectory & ego, const EgoParams & params, const PredictedTrajectory & pa,
  const geometry::Shape & pa_shape);

/// First time the footprints overlap, if ever.
std::optional<double> ttc(
  const EgoTrajectory & ego, const EgoParams & params, const PredictedTrajectory & pa,
  const geometry::Shape & pa_shape);

/// Worst-case first contact time of two discs growing at the given top speeds.
/// Absent when they do not touch and cannot approach.
std::optional<double> wttc(
  const geometry::Point & ego_position, double ego_radius, const geometry::Point & pa_position,
  double pa_radius, double v_max_ego, double v_max_pa);

/// Gaussian mass of an isotropic normal (mean, sigma) over a rectangle.
double gaussian_rectangle_mass(
  const geometry::Point & mean, double sigma, const geometry::Pose & rect_pose, double length,
  double width);

/// Max over routes and timesteps of the PA position mass over the ego footprint.
double collision_probability(
  const EgoTrajectory & ego, const EgoParams & params, const PhantomAgent & pa,
  const MetricsConfig & cfg = {});

/// MAIS3+ probability for a collision at `relative_speed`; throws OutOfDomainError
/// for a negative speed.
double harm(AgentKind kind, double relative_speed, bool head_on = false, const MetricsConfig & cfg = {});

struct RiskResult
{
  double r{0.0};
  double h{0.0};
  double p{0.0};
  std::optional<std::size_t> worst;
};

/// Max of p * H over agents; h and p belong to the maximising agent and are zero when no agent has positive risk.
RiskResult risk(const std::vector<double> & p, const std::vector<double> & h);

/// Ego poses when a constant deceleration `a` is superimposed on the planned
/// speed profile along the same path (speed floor 0).
std::vector<geometry::Pose> braked_poses(const EgoTrajectory & ego, double a);

/// Smallest deceleration that keeps the ego clear of every prediction.
BrakeResult brake_evaluation(
  const EgoTrajectory & ego, const EgoParams & params, const std::vector<PhantomAgent> & agents,
  const MetricsConfig & cfg = {});

/// Full metric suite for one trajectory against all phantom agents.
CriticalityReport evaluate(
  const EgoTrajectory & ego, const EgoParams & params, const std::vector<PhantomAgent> & agents,
  const MetricsConfig & cfg = {});

}  // namespace blindspot

#endif  // BLINDSPOT__METRICS__CRITICALITY_HPP_
