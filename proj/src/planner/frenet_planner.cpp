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

#include "blindspot/planner/frenet_planner.hpp"

#include "blindspot/errors.hpp"
#include "blindspot/planner/polynomial.hpp"
#include "blindspot/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace blindspot
{

namespace
{

constexpr double kJacobianStep = 1e-4;
constexpr double kCurvatureWindow = 1.0;
constexpr double kMinArc = 0.1;
constexpr double kStandstill = 1e-6;

}  // namespace

void SamplingConfig::validate(double dt) const
{
  if (d_end.empty() || durations.empty() || (v_end.empty() && v_end_fractions.empty())) {
    throw InvariantError("sampling lists are non-empty", "an offset, duration or velocity list is empty");
  }
  for (double t : durations) {
    const double n = t / dt;
    if (!(t > 0.0) || std::abs(n - std::round(n)) > 1e-6) {
      throw InvariantError("durations are multiples of dt", "T = " + std::to_string(t));
    }
  }
}

int SamplingConfig::horizon_steps(double dt) const
{
  const double t_max = *std::max_element(durations.begin(), durations.end());
  return static_cast<int>(std::lround(t_max / dt));
}

Polygon ObstacleTrack::footprint_at(std::size_t k) const
{
  if (is_static || poses.empty()) {
    return footprint;
  }
  return shape.footprint(poses[std::min(k, poses.size() - 1)]);
}

FrenetState frenet_state(const EgoState & ego, const geometry::CurvilinearFrame & frame)
{
  const auto f = frame.to_curvilinear(ego.position());
  const double rel = ego.theta - frame.heading(std::clamp(f.s, 0.0, frame.length()));
  return {f.s, ego.v * std::cos(rel), 0.0, f.d, ego.v * std::sin(rel), 0.0};
}

void to_cartesian(EgoTrajectory & traj, const geometry::CurvilinearFrame & frame)
{
  const double h = kJacobianStep;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    auto & st = traj.states[i];
    const geometry::Point p = frame.from_curvilinear_extended(st.s, st.d);
    const geometry::Point ps =
      (frame.from_curvilinear_extended(st.s + h, st.d) - frame.from_curvilinear_extended(st.s - h, st.d)) /
      (2.0 * h);
    const geometry::Point pd =
      (frame.from_curvilinear_extended(st.s, st.d + h) - frame.from_curvilinear_extended(st.s, st.d - h)) /
      (2.0 * h);
    const geometry::Point vel = st.s_d * ps + st.d_d * pd;
    st.x = p.x;
    st.y = p.y;
    st.v = geometry::norm(vel);
    if (st.v > kStandstill) {
      st.theta = std::atan2(vel.y, vel.x);
    } else {
      st.theta = i > 0 ? traj.states[i - 1].theta : std::atan2(ps.y, ps.x);
    }
    st.a = st.s_dd;
  }
  const auto n = traj.states.size();
  for (std::size_t k = 0; k < n; ++k) {
    double dist = 0.0;
    std::size_t j = k;
    while (j + 1 < n && dist < kCurvatureWindow) {
      dist += geometry::distance(traj.states[j].position(), traj.states[j + 1].position());
      ++j;
    }
    traj.states[k].kappa =
      geometry::normalize_angle(traj.states[j].theta - traj.states[k].theta) / std::max(dist, kMinArc);
  }
}

std::vector<EgoTrajectory> sample_trajectories(
  const FrenetState & start, const SamplingConfig & cfg, const geometry::CurvilinearFrame & frame,
  double dt, int horizon_steps, double v_target)
{
  ScopedTimer timer("sample_trajectories");
  cfg.validate(dt);
  std::vector<double> v_ends = cfg.v_end;
  if (v_ends.empty()) {
    for (double f : cfg.v_end_fractions) {
      v_ends.push_back(f * v_target);
    }
  }
  std::vector<EgoTrajectory> out;
  int index = 0;
  for (double d_end : cfg.d_end) {
    for (double T : cfg.durations) {
      const auto lat = Polynomial::quintic(start.d, start.d_d, start.d_dd, d_end, 0.0, 0.0, T);
      for (double v_end : v_ends) {
        const auto lon_v = Polynomial::quartic(start.s, start.s_d, start.s_dd, v_end, 0.0, T);
        EgoTrajectory traj;
        traj.dt = dt;
        traj.sample_index = index++;
        traj.d_end = d_end;
        traj.duration = T;
        traj.v_end = v_end;
        const double s_T = lon_v.value(T);
        for (int k = 0; k <= horizon_steps; ++k) {
          const double t = k * dt;
          TrajectoryState st;
          st.t = t;
          double jd = 0.0;
          double js = 0.0;
          if (t <= T + 1e-12) {
            st.d = lat.value(t);
            st.d_d = lat.first(t);
            st.d_dd = lat.second(t);
            st.s = lon_v.value(t);
            st.s_d = lon_v.first(t);
            st.s_dd = lon_v.second(t);
            jd = lat.third(t);
            js = lon_v.third(t);
          } else {
            st.d = d_end;
            st.s = s_T + v_end * (t - T);
            st.s_d = v_end;
          }
          traj.states.push_back(st);
          traj.lateral_jerk.push_back(jd);
          traj.longitudinal_jerk.push_back(js);
        }
        traj.states.front().s = start.s;
        traj.states.front().d = start.d;
        traj.states.front().s_d = start.s_d;
        traj.states.front().d_d = start.d_d;
        traj.states.front().s_dd = start.s_dd;
        traj.states.front().d_dd = start.d_dd;
        to_cartesian(traj, frame);
        out.push_back(std::move(traj));
      }
    }
  }
  return out;
}

bool is_feasible(const EgoTrajectory & traj, const EgoParams & params, const SamplingConfig & cfg)
{
  const double kappa_max = std::tan(cfg.delta_max) / params.wheelbase;
  for (const auto & st : traj.states) {
    if (std::abs(st.a) > params.a_max + 1e-9 || st.s_d < -1e-6 || st.v > params.v_max + 1e-9 ||
        std::abs(st.kappa) > kappa_max + 1e-9) {
      return false;
    }
  }
  return true;
}

std::vector<EgoTrajectory> feasibility_filter(
  const std::vector<EgoTrajectory> & trajs, const EgoParams & params, const SamplingConfig & cfg)
{
  ScopedTimer timer("feasibility_filter");
  std::vector<EgoTrajectory> out;
  for (const auto & t : trajs) {
    if (is_feasible(t, params, cfg)) {
      out.push_back(t);
    }
  }
  return out;
}

double trajectory_cost(const EgoTrajectory & traj, const CostContext & ctx, const CostWeights & w)
{
  const double dt = traj.dt;
  double lj = 0.0;
  double sj = 0.0;
  double ref = 0.0;
  double vel = 0.0;
  double obs = 0.0;
  double cp = 0.0;
  const MetricsConfig mc;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto & st = traj.states[k];
    lj += traj.lateral_jerk[k] * traj.lateral_jerk[k] * dt;
    sj += traj.longitudinal_jerk[k] * traj.longitudinal_jerk[k] * dt;
    ref += st.d * st.d * dt;
    vel += (st.v - ctx.v_target) * (st.v - ctx.v_target) * dt;
    if (ctx.obstacles && !ctx.obstacles->empty()) {
      const Polygon fp = ctx.params->footprint(st.pose());
      double dmin = std::numeric_limits<double>::infinity();
      for (const auto & o : *ctx.obstacles) {
        dmin = std::min(dmin, geometry::min_distance(fp, o.footprint_at(k)));
        if (!o.is_static && !o.poses.empty()) {
          const auto & pose = o.poses[std::min(k, o.poses.size() - 1)];
          const double sigma = mc.sigma0 + mc.sigma_rate * static_cast<double>(k) * dt;
          cp = std::max(
            cp, gaussian_rectangle_mass(
                  pose.position(), sigma, st.pose(), ctx.params->length, ctx.params->width));
        }
      }
      obs += dt / (ctx.epsilon + dmin);
    }
  }
  return w.lateral_jerk * lj + w.longitudinal_jerk * sj + w.dist_to_reference * ref +
         w.velocity * vel + w.dist_to_obstacles * obs + w.collision_probability * cp;
}

std::vector<RankedTrajectory> rank(
  const std::vector<EgoTrajectory> & trajs, const CostContext & ctx, const CostWeights & w)
{
  ScopedTimer timer("rank");
  std::vector<RankedTrajectory> out;
  out.reserve(trajs.size());
  for (const auto & t : trajs) {
    out.push_back({t, trajectory_cost(t, ctx, w)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto & a, const auto & b) { return a.cost < b.cost; });
  return out;
}

bool collides_with(
  const EgoTrajectory & traj, const EgoParams & params, const std::vector<ObstacleTrack> & tracks)
{
  const double r_ego = 0.5 * std::hypot(params.length, params.width);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto & st = traj.states[k];
    std::optional<Polygon> fp;
    for (const auto & o : tracks) {
      if (!o.is_static && !o.poses.empty()) {
        const auto & pose = o.poses[std::min(k, o.poses.size() - 1)];
        if (geometry::distance(pose.position(), st.position()) > r_ego + o.shape.bounding_radius()) {
          continue;
        }
        if (!fp) {
          fp = params.footprint(st.pose());
        }
        if (geometry::clearance(*fp, o.shape, pose) <= 0.0) {
          return true;
        }
      } else {
        if (!fp) {
          fp = params.footprint(st.pose());
        }
        if (geometry::min_distance(*fp, o.footprint) <= 0.0) {
          return true;
        }
      }
    }
  }
  return false;
}

EgoTrajectory fallback_trajectory(
  const FrenetState & start, const geometry::CurvilinearFrame & frame, double dt, int horizon_steps,
  double a_max, const EgoTrajectory * previous)
{
  EgoTrajectory traj;
  traj.dt = dt;
  const double v0 = std::max(0.0, start.s_d);
  const double t_stop = v0 / a_max;
  for (int k = 0; k <= horizon_steps; ++k) {
    const double t = k * dt;
    TrajectoryState st;
    st.t = t;
    if (t < t_stop) {
      st.s = start.s + v0 * t - 0.5 * a_max * t * t;
      st.s_d = v0 - a_max * t;
      st.s_dd = -a_max;
    } else {
      st.s = start.s + 0.5 * v0 * t_stop;
      st.s_d = 0.0;
      st.s_dd = 0.0;
    }
    if (previous && previous->states.size() >= 2) {
      // lateral offset follows the previous path as a function of s
      const auto & pv = previous->states;
      std::size_t i = 0;
      while (i + 2 < pv.size() && pv[i + 1].s < st.s) {
        ++i;
      }
      const double ds = pv[i + 1].s - pv[i].s;
      if (ds > 1e-9 && st.s >= pv[i].s && st.s <= pv[i + 1].s) {
        const double slope = (pv[i + 1].d - pv[i].d) / ds;
        st.d = pv[i].d + slope * (st.s - pv[i].s);
        st.d_d = slope * st.s_d;
      } else {
        st.d = st.s < pv.front().s ? pv.front().d : pv[i + 1].d;
      }
    } else {
      st.d = start.d;
    }
    traj.states.push_back(st);
    traj.lateral_jerk.push_back(0.0);
    traj.longitudinal_jerk.push_back(0.0);
  }
  auto & s0 = traj.states.front();
  s0.s = start.s;
  s0.s_d = start.s_d;
  s0.s_dd = start.s_dd;
  s0.d = start.d;
  s0.d_d = start.d_d;
  s0.d_dd = start.d_dd;
  to_cartesian(traj, frame);
  return traj;
}

PlanResult plan_step(const PlanRequest & req)
{
  ScopedTimer timer("plan_step");
  if (!req.frame) {
    throw InvariantError("plan request has a reference frame", "frame is null");
  }
  PlanResult res;
  const int steps = req.sampling.horizon_steps(req.dt);
  const auto samples =
    sample_trajectories(req.start, req.sampling, *req.frame, req.dt, steps, req.v_target);
  res.candidates = static_cast<int>(samples.size());
  const auto feasible = feasibility_filter(samples, req.params, req.sampling);
  res.feasible = static_cast<int>(feasible.size());
  const CostContext ctx{&req.params, &req.visible_obstacles, req.v_target, req.sampling.epsilon};
  const auto ranked = rank(feasible, ctx, req.weights);

  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto & cand = ranked[i].trajectory;
    bool hit = false;
    {
      ScopedTimer t("baseline_collision_check");
      hit = collides_with(cand, req.params, req.visible_obstacles);
    }
    if (hit) {
      ++res.baseline_rejections;
      continue;
    }
    std::optional<CriticalityReport> report;
    Verdict verdict;
    if (req.evaluator) {
      ScopedTimer t("occlusion_evaluation");
      report = req.evaluator(cand);
      verdict = assess(*report, req.thresholds);
    }
    if (!verdict.valid) {
      ++res.occlusion_rejections;
      continue;
    }
    res.chosen = cand;
    res.report = std::move(report);
    res.verdict = std::move(verdict);
    res.chosen_rank = static_cast<int>(i);
    res.rejections = res.baseline_rejections + res.occlusion_rejections;
    return res;
  }

  res.fallback = true;
  res.rejections = res.baseline_rejections + res.occlusion_rejections;
  res.chosen =
    fallback_trajectory(req.start, *req.frame, req.dt, steps, req.params.a_max, req.previous);
  if (req.evaluator) {
    res.report = req.evaluator(res.chosen);
    res.verdict = assess(*res.report, req.thresholds);
  }
  return res;
}

}  // namespace blindspot
