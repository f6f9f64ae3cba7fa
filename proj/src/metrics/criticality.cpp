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

#include "blindspot/metrics/criticality.hpp"

#include "blindspot/errors.hpp"
#include "blindspot/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace blindspot
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_horizon(const EgoTrajectory & ego, const PredictedTrajectory & pa)
{
  if (ego.states.size() != pa.states.size()) {
    throw InvariantError(
      "equal horizon and dt", "ego has " + std::to_string(ego.states.size()) +
                                " states, prediction has " + std::to_string(pa.states.size()));
  }
}

double ego_radius(const EgoParams & params) { return 0.5 * std::hypot(params.length, params.width); }

// Clearance at one step, or +inf when it provably exceeds `bound`.
double step_clearance(
  const Polygon & ego_fp, const geometry::Point & ego_center, double r_ego,
  const geometry::Shape & shape, const geometry::Pose & pose, double bound)
{
  const double lower =
    geometry::distance(ego_center, pose.position()) - r_ego - shape.bounding_radius();
  if (lower > bound) {
    return kInf;
  }
  return geometry::clearance(ego_fp, shape, pose);
}

bool collides(
  const std::vector<geometry::Pose> & poses, const EgoParams & params,
  const std::vector<PhantomAgent> & agents)
{
  const double r_ego = ego_radius(params);
  for (std::size_t k = 0; k < poses.size(); ++k) {
    const Polygon fp = params.footprint(poses[k]);
    for (const auto & a : agents) {
      for (const auto & pred : a.predictions) {
        if (k >= pred.states.size()) {
          continue;
        }
        if (step_clearance(fp, poses[k].position(), r_ego, a.shape, pred.states[k].pose(), 0.0) <= 0.0) {
          return true;
        }
      }
    }
  }
  return false;
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

constexpr int kSubsteps = 10;
constexpr double kTieTolerance = 1e-6;

geometry::Pose lerp(const geometry::Pose & a, const geometry::Pose & b, double f)
{
  const double dth = std::remainder(b.theta - a.theta, 2.0 * std::numbers::pi);
  return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y), a.theta + f * dth};
}

// Largest displacement of any point of a body of `radius` between two poses.
double motion_bound(const geometry::Pose & a, const geometry::Pose & b, double radius)
{
  return geometry::distance(a.position(), b.position()) +
         radius * std::abs(std::remainder(b.theta - a.theta, 2.0 * std::numbers::pi));
}

// Visits clearance samples in time order: every step, plus kSubsteps-1 interior
// samples of each interval whose motion bound admits a value below `target`.
// `visit(t, c)` returns the current target; scanning stops below -inf.
template <typename Visit>
void scan_clearance(
  const EgoTrajectory & ego, const EgoParams & params, const PredictedTrajectory & pa,
  const geometry::Shape & shape, Visit && visit)
{
  const std::size_t n = ego.states.size();
  const double r_ego = ego_radius(params);
  const double r_pa = shape.bounding_radius();
  auto clearance_at = [&](const geometry::Pose & e, const geometry::Pose & q) {
    return geometry::clearance(params.footprint(e), shape, q);
  };
  std::vector<double> coarse(n);
  double target = kInf;
  for (std::size_t k = 0; k < n; ++k) {
    coarse[k] = clearance_at(ego.states[k].pose(), pa.states[k].pose());
    target = std::min(target, coarse[k]);
  }
  target = std::max(target, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double limit = visit(static_cast<double>(k) * ego.dt, coarse[k]);
    if (limit == -kInf) {
      return;
    }
    if (k + 1 == n) {
      break;
    }
    const geometry::Pose e0 = ego.states[k].pose();
    const geometry::Pose e1 = ego.states[k + 1].pose();
    const geometry::Pose q0 = pa.states[k].pose();
    const geometry::Pose q1 = pa.states[k + 1].pose();
    const double sweep = motion_bound(e0, e1, r_ego) + motion_bound(q0, q1, r_pa);
    if (0.5 * (coarse[k] + coarse[k + 1] - sweep) > target) {
      continue;
    }
    for (int j = 1; j < kSubsteps; ++j) {
      const double f = static_cast<double>(j) / kSubsteps;
      const double c = clearance_at(lerp(e0, e1, f), lerp(q0, q1, f));
      if (visit((static_cast<double>(k) + f) * ego.dt, c) == -kInf) {
        return;
      }
    }
  }
}

}  // namespace

std::vector<Polygon> ego_footprints(const EgoTrajectory & ego, const EgoParams & params)
{
  std::vector<Polygon> out;
  out.reserve(ego.states.size());
  for (const auto & s : ego.states) {
    out.push_back(params.footprint(s.pose()));
  }
  return out;
}

Encounter dce_ttce(
  const EgoTrajectory & ego, const EgoParams & params, const PredictedTrajectory & pa,
  const geometry::Shape & pa_shape)
{
  check_horizon(ego, pa);
  std::vector<std::pair<double, double>> samples;
  double dce = kInf;
  scan_clearance(ego, params, pa, pa_shape, [&](double t, double c) {
    samples.emplace_back(t, c);
    dce = std::min(dce, c);
    return c;
  });
  for (const auto & [t, c] : samples) {
    if (c <= dce + kTieTolerance) {
      return {dce, t, static_cast<int>(std::lround(t / ego.dt))};
    }
  }
  return {dce, 0.0, 0};
}

std::optional<double> ttc(
  const EgoTrajectory & ego, const EgoParams & params, const PredictedTrajectory & pa,
  const geometry::Shape & pa_shape)
{
  check_horizon(ego, pa);
  std::optional<double> first;
  scan_clearance(ego, params, pa, pa_shape, [&](double t, double c) {
    if (c <= 0.0 && !first) {
      first = t;
    }
    return first ? -kInf : 0.0;
  });
  return first;
}

std::optional<double> wttc(
  const geometry::Point & ego_position, double ego_radius, const geometry::Point & pa_position,
  double pa_radius, double v_max_ego, double v_max_pa)
{
  if (v_max_ego < 0.0 || v_max_pa < 0.0) {
    throw OutOfDomainError("wttc speeds must be non-negative");
  }
  const double gap = geometry::distance(ego_position, pa_position) - ego_radius - pa_radius;
  if (gap <= 0.0) {
    return 0.0;
  }
  const double closing = v_max_ego + v_max_pa;
  if (closing <= 0.0) {
    return std::nullopt;
  }
  return gap / closing;
}

double gaussian_rectangle_mass(
  const geometry::Point & mean, double sigma, const geometry::Pose & rect_pose, double length,
  double width)
{
  const geometry::Point u = geometry::rotate(mean - rect_pose.position(), -rect_pose.theta);
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  const double mx = std_normal_cdf((hl - u.x) / sigma) - std_normal_cdf((-hl - u.x) / sigma);
  const double my = std_normal_cdf((hw - u.y) / sigma) - std_normal_cdf((-hw - u.y) / sigma);
  return std::clamp(mx * my, 0.0, 1.0);
}

double collision_probability(
  const EgoTrajectory & ego, const EgoParams & params, const PhantomAgent & pa,
  const MetricsConfig & cfg)
{
  double p = 0.0;
  for (const auto & pred : pa.predictions) {
    check_horizon(ego, pred);
    for (std::size_t k = 0; k < ego.states.size(); ++k) {
      const double sigma = cfg.sigma0 + cfg.sigma_rate * static_cast<double>(k) * ego.dt;
      const auto & st = pred.states[k];
      p = std::max(
        p, gaussian_rectangle_mass(
             {st.x, st.y}, sigma, ego.states[k].pose(), params.length, params.width));
    }
  }
  return std::clamp(p, 0.0, 1.0);
}

double harm(AgentKind kind, double relative_speed, bool head_on, const MetricsConfig & cfg)
{
  if (relative_speed < 0.0 || !std::isfinite(relative_speed)) {
    throw OutOfDomainError("relative speed must be a non-negative number");
  }
  double c0 = -4.0;
  double c1 = 0.4;
  if (kind == AgentKind::Vehicle) {
    c0 = -6.0;
    c1 = 0.3;
  }
  if (head_on) {
    c1 *= cfg.head_on_gain;
  }
  return 1.0 / (1.0 + std::exp(-(c0 + c1 * relative_speed)));
}

RiskResult risk(const std::vector<double> & p, const std::vector<double> & h)
{
  RiskResult out;
  const std::size_t n = std::min(p.size(), h.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double r = p[i] * h[i];
    if (!out.worst || r > out.r) {
      out.r = r;
      out.worst = i;
    }
  }
  if (out.worst && out.r > 0.0) {
    out.h = h[*out.worst];
    out.p = p[*out.worst];
  }
  return out;
}

std::vector<geometry::Pose> braked_poses(const EgoTrajectory & ego, double a)
{
  const auto & st = ego.states;
  std::vector<geometry::Pose> poses;
  poses.reserve(st.size());
  if (st.empty()) {
    return poses;
  }
  std::vector<double> arc(st.size(), 0.0);
  for (std::size_t j = 1; j < st.size(); ++j) {
    arc[j] = arc[j - 1] + geometry::distance(st[j - 1].position(), st[j].position());
  }
  poses.push_back(st[0].pose());
  double travelled = 0.0;
  bool stopped = false;
  std::size_t seg = 0;
  for (std::size_t j = 1; j < st.size(); ++j) {
    if (!stopped) {
      const double t_mid = (static_cast<double>(j) - 0.5) * ego.dt;
      const double step = (arc[j] - arc[j - 1]) - a * t_mid * ego.dt;
      if (step <= 0.0 && a > 0.0) {
        stopped = true;
      } else {
        travelled += std::max(0.0, step);
      }
    }
    while (seg + 2 < st.size() && arc[seg + 1] < travelled) {
      ++seg;
    }
    const double len = arc[seg + 1] - arc[seg];
    const double lambda = len > 1e-12 ? std::clamp((travelled - arc[seg]) / len, 0.0, 1.0) : 0.0;
    const auto & s0 = st[seg];
    const auto & s1 = st[seg + 1];
    const double dth = geometry::normalize_angle(s1.theta - s0.theta);
    poses.push_back(
      {s0.x + lambda * (s1.x - s0.x), s0.y + lambda * (s1.y - s0.y), s0.theta + lambda * dth});
  }
  return poses;
}

BrakeResult brake_evaluation(
  const EgoTrajectory & ego, const EgoParams & params, const std::vector<PhantomAgent> & agents,
  const MetricsConfig & cfg)
{
  ScopedTimer timer("brake_evaluation");
  BrakeResult out;
  auto fails = [&](double a) { return collides(braked_poses(ego, a), params, agents); };
  if (!fails(0.0)) {
    return out;
  }
  double lo = 0.0;
  double hi = cfg.a_search_max;
  if (fails(hi)) {
    out.a_min_req = hi;
    out.saturated = true;
  } else {
    while (hi - lo > cfg.brake_tolerance) {
      const double mid = 0.5 * (lo + hi);
      (fails(mid) ? lo : hi) = mid;
    }
    out.a_min_req = hi;
  }
  out.btn = out.a_min_req / params.a_max;
  return out;
}

CriticalityReport evaluate(
  const EgoTrajectory & ego, const EgoParams & params, const std::vector<PhantomAgent> & agents,
  const MetricsConfig & cfg)
{
  ScopedTimer timer("criticality_metrics");
  CriticalityReport rep;
  std::vector<double> ps;
  std::vector<double> hs;
  const auto & e0 = ego.states.front();
  for (const auto & a : agents) {
    AgentMetrics m;
    m.agent_id = a.id;
    m.kind = a.kind;
    m.dce = kInf;
    const PredictedTrajectory * closest = nullptr;
    int k_star = 0;
    {
      ScopedTimer t("dce_ttce");
      for (const auto & pred : a.predictions) {
        const auto enc = dce_ttce(ego, params, pred, a.shape);
        if (enc.dce < m.dce) {
          m.dce = enc.dce;
          m.ttce = enc.ttce;
          k_star = enc.k;
          closest = &pred;
        }
      }
    }
    {
      ScopedTimer t("ttc");
      for (const auto & pred : a.predictions) {
        if (auto t_c = ttc(ego, params, pred, a.shape); t_c && (!m.ttc || *t_c < *m.ttc)) {
          m.ttc = t_c;
        }
      }
    }
    {
      ScopedTimer t("wttc");
      m.wttc = wttc(
        e0.position(), ego_radius(params), {a.initial.x, a.initial.y}, a.shape.bounding_radius(),
        params.v_max, a.initial.v);
    }
    {
      ScopedTimer t("collision_probability");
      m.p = collision_probability(ego, params, a, cfg);
    }
    {
      ScopedTimer t("harm");
      if (closest) {
        const auto & es = ego.states[static_cast<std::size_t>(k_star)];
        const auto & ps_k = closest->states[static_cast<std::size_t>(k_star)];
        const geometry::Point ve = es.v * geometry::from_angle(es.theta);
        const geometry::Point vp = ps_k.v * geometry::from_angle(ps_k.theta);
        m.relative_speed = geometry::norm(ve - vp);
        bool head_on = false;
        if (es.v > 1e-9 && ps_k.v > 1e-9) {
          const double ang = std::abs(geometry::normalize_angle(es.theta - (ps_k.theta + std::numbers::pi)));
          head_on = ang <= cfg.head_on_angle;
        }
        m.h = harm(a.kind, m.relative_speed, head_on, cfg);
      }
    }
    m.r = m.p * m.h;
    ps.push_back(m.p);
    hs.push_back(m.h);
    if (closest && (!rep.dce || m.dce < *rep.dce)) {
      rep.dce = m.dce;
      rep.ttce = m.ttce;
    }
    if (m.ttc && (!rep.ttc || *m.ttc < *rep.ttc)) {
      rep.ttc = m.ttc;
    }
    if (m.wttc && (!rep.wttc || *m.wttc < *rep.wttc)) {
      rep.wttc = m.wttc;
    }
    rep.agents.push_back(m);
  }
  {
    ScopedTimer t("risk");
    const auto rr = risk(ps, hs);
    rep.r = rr.r;
    rep.h = rr.h;
    rep.cp = rr.p;
    if (rr.worst) {
      rep.worst_agent_id = agents[*rr.worst].id;
    }
  }
  const auto be = brake_evaluation(ego, params, agents, cfg);
  rep.a_min_req = be.a_min_req;
  rep.btn = be.btn;
  rep.brake_saturated = be.saturated;
  return rep;
}

}  // namespace blindspot
