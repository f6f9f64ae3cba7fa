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

#include "blindspot/oracles/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace blindspot::oracles
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

double cr(const Point & o, const Point & a, const Point & b)
{
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point & p, const Point & a, const Point & b)
{
  return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
         std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

bool in_polygon(const Polygon & poly, const Point & p)
{
  if (!point_in_ring(poly.outer, p)) {
    return false;
  }
  for (const auto & h : poly.holes) {
    if (point_in_ring(h, p)) {
      // Hole boundary still belongs to the polygon.
      for (std::size_t i = 0; i < h.size(); ++i) {
        if (point_segment(p, h[i], h[(i + 1) % h.size()]) == 0.0) {
          return true;
        }
      }
      return false;
    }
  }
  return true;
}

bool in_set(const PolygonSet & set, const Point & p)
{
  return std::any_of(set.polygons.begin(), set.polygons.end(), [&](const auto & q) { return in_polygon(q, p); });
}

std::vector<std::array<Point, 2>> ring_edges(const Polygon & poly)
{
  std::vector<std::array<Point, 2>> out;
  auto add = [&](const std::vector<Point> & r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out.push_back({r[i], r[(i + 1) % r.size()]});
    }
  };
  add(poly.outer);
  for (const auto & h : poly.holes) {
    add(h);
  }
  return out;
}

double set_boundary_distance(const PolygonSet & set, const Point & p)
{
  double d = kInf;
  for (const auto & poly : set.polygons) {
    for (const auto & e : ring_edges(poly)) {
      d = std::min(d, point_segment(p, e[0], e[1]));
    }
  }
  return d;
}

// Distance between two simple polygons given as vertex lists; 0 on contact.
double polygon_distance(const std::vector<Point> & a, const std::vector<Point> & b)
{
  if (point_in_ring(b, a.front()) || point_in_ring(a, b.front())) {
    return 0.0;
  }
  double d = kInf;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point & a0 = a[i];
    const Point & a1 = a[(i + 1) % a.size()];
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Point & b0 = b[j];
      const Point & b1 = b[(j + 1) % b.size()];
      if (segments_cross(a0, a1, b0, b1)) {
        return 0.0;
      }
      d = std::min({d, point_segment(a0, b0, b1), point_segment(b0, a0, a1)});
    }
  }
  return d;
}

std::vector<Point> obstacle_ring(const Polygon & p) { return p.outer; }

std::vector<Polygon> obstacle_footprints(const Scenario & sc, int k)
{
  std::vector<Polygon> out;
  for (const auto & o : sc.static_obstacles) {
    out.push_back(o.footprint);
  }
  for (const auto & o : sc.dynamic_obstacles) {
    if (o.present_at(k)) {
      out.push_back(o.footprint(k));
    }
  }
  return out;
}

bool sight_clear(
  const Point & origin, const Point & target, const std::vector<std::array<Point, 2>> & walls,
  double end_tol)
{
  const Point dir = target - origin;
  const double len = std::hypot(dir.x, dir.y);
  Point end = target;
  if (len > end_tol) {
    end = target - (end_tol / len) * dir;
  }
  for (const auto & w : walls) {
    if (segments_cross(origin, end, w[0], w[1])) {
      // Walls through the viewpoint itself do not block.
      if (point_segment(origin, w[0], w[1]) < 1e-12) {
        continue;
      }
      return false;
    }
  }
  return true;
}

std::vector<std::array<Point, 2>> walls_at(const Scenario & sc, int k)
{
  std::vector<std::array<Point, 2>> walls;
  for (const auto & s : sc.network.boundary()) {
    walls.push_back({s.a, s.b});
  }
  for (const auto & fp : obstacle_footprints(sc, k)) {
    for (const auto & e : ring_edges(fp)) {
      walls.push_back(e);
    }
  }
  return walls;
}

struct Interp
{
  double x;
  double y;
  double theta;
};

Interp lerp_pose(double x0, double y0, double th0, double x1, double y1, double th1, double f)
{
  double dth = std::remainder(th1 - th0, 2.0 * std::numbers::pi);
  return {x0 + f * (x1 - x0), y0 + f * (y1 - y0), th0 + f * dth};
}

// Normal CDF via the error function.
double phi(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

// Solves the dense system m * x = rhs by Gaussian elimination with partial pivoting.
std::vector<double> solve(std::vector<std::vector<double>> m, std::vector<double> rhs)
{
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) {
        piv = r;
      }
    }
    std::swap(m[c], m[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) {
        m[r][j] -= f * m[c][j];
      }
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      acc -= m[i][j] * x[j];
    }
    x[i] = acc / m[i][i];
  }
  return x;
}

// Row of the derivative `order` of the monomial basis t^0..t^(n-1) at t.
std::vector<double> basis_row(std::size_t n, int order, double t)
{
  std::vector<double> row(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double c = 1.0;
    int p = static_cast<int>(i);
    for (int o = 0; o < order; ++o) {
      c *= p;
      --p;
    }
    if (p >= 0 && c != 0.0) {
      row[i] = c * std::pow(t, p);
    }
  }
  return row;
}

double third_derivative(const std::vector<double> & c, double t)
{
  double acc = 0.0;
  for (std::size_t i = 3; i < c.size(); ++i) {
    acc += static_cast<double>(i * (i - 1) * (i - 2)) * c[i] * std::pow(t, static_cast<double>(i) - 3.0);
  }
  return acc;
}

}  // namespace

bool point_in_ring(const std::vector<Point> & ring, const Point & p)
{
  const std::size_t n = ring.size();
  if (n < 3) {
    return false;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point & a = ring[j];
    const Point & b = ring[i];
    if (std::abs(cr(a, b, p)) <= 1e-12 * std::max(1.0, std::hypot(b.x - a.x, b.y - a.y)) &&
        on_segment(p, a, b)) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) {
        inside = !inside;
      }
    }
  }
  return inside;
}

bool segments_cross(const Point & a, const Point & b, const Point & c, const Point & d)
{
  const double d1 = cr(c, d, a);
  const double d2 = cr(c, d, b);
  const double d3 = cr(a, b, c);
  const double d4 = cr(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d)) ||
         (d3 == 0 && on_segment(c, a, b)) || (d4 == 0 && on_segment(d, a, b));
}

double point_segment(const Point & p, const Point & a, const Point & b)
{
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double l2 = vx * vx + vy * vy;
  double t = l2 > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

std::vector<Point> rectangle_corners(const geometry::Pose & pose, double length, double width)
{
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  std::vector<Point> out;
  for (auto [u, v] : std::array<std::array<double, 2>, 4>{{{hl, -hw}, {hl, hw}, {-hl, hw}, {-hl, -hw}}}) {
    out.push_back({pose.x + c * u - s * v, pose.y + s * u + c * v});
  }
  return out;
}

bool convex_overlap(const std::vector<Point> & a, const std::vector<Point> & b)
{
  auto separated = [](const std::vector<Point> & p, const std::vector<Point> & q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Point e = p[(i + 1) % p.size()] - p[i];
      const Point n{-e.y, e.x};
      double pmin = kInf;
      double pmax = -kInf;
      double qmin = kInf;
      double qmax = -kInf;
      for (const auto & v : p) {
        const double x = n.x * v.x + n.y * v.y;
        pmin = std::min(pmin, x);
        pmax = std::max(pmax, x);
      }
      for (const auto & v : q) {
        const double x = n.x * v.x + n.y * v.y;
        qmin = std::min(qmin, x);
        qmax = std::max(qmax, x);
      }
      if (pmax < qmin || qmax < pmin) {
        return true;
      }
    }
    return false;
  };
  return !separated(a, b) && !separated(b, a);
}

double convex_distance(const std::vector<Point> & a, const std::vector<Point> & b)
{
  if (convex_overlap(a, b)) {
    return 0.0;
  }
  double d = kInf;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      d = std::min(
        {d, point_segment(a[i], b[j], b[(j + 1) % b.size()]), point_segment(b[j], a[i], a[(i + 1) % a.size()])});
    }
  }
  return d;
}

double body_distance(
  const std::vector<Point> & rect, const geometry::Shape & shape, const geometry::Pose & pose)
{
  if (shape.type() == geometry::Shape::Type::Disc) {
    const Point c = pose.position();
    if (point_in_ring(rect, c)) {
      return 0.0;
    }
    double d = kInf;
    for (std::size_t i = 0; i < rect.size(); ++i) {
      d = std::min(d, point_segment(c, rect[i], rect[(i + 1) % rect.size()]));
    }
    return std::max(0.0, d - shape.radius());
  }
  return convex_distance(rect, rectangle_corners(pose, shape.length(), shape.width()));
}

bool in_drivable_area(const Scenario & scenario, const Point & p)
{
  for (const auto & l : scenario.network.lanelets()) {
    std::vector<Point> ring(l.right.begin(), l.right.end());
    ring.insert(ring.end(), l.left.rbegin(), l.left.rend());
    if (point_in_ring(ring, p)) {
      return true;
    }
  }
  return false;
}

bool truly_visible(const Scenario & scenario, const Point & origin, int k, const Point & q)
{
  if (std::hypot(q.x - origin.x, q.y - origin.y) > scenario.ego_params.sensor_range) {
    return false;
  }
  if (!in_drivable_area(scenario, q)) {
    return false;
  }
  for (const auto & fp : obstacle_footprints(scenario, k)) {
    if (in_polygon(fp, q)) {
      return false;
    }
  }
  return sight_clear(origin, q, walls_at(scenario, k), 0.0);
}

GridAgreement grid_visibility(
  const Scenario & scenario, const VisibilitySnapshot & snapshot, int n_points, double band,
  std::uint64_t seed)
{
  GridAgreement out;
  double x0 = kInf;
  double y0 = kInf;
  double x1 = -kInf;
  double y1 = -kInf;
  for (const auto & poly : snapshot.sensed.polygons) {
    for (const auto & p : poly.outer) {
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
  }
  if (!(x1 > x0 && y1 > y0)) {
    return out;
  }
  const auto walls = walls_at(scenario, snapshot.k);
  const auto obstacles = obstacle_footprints(scenario, snapshot.k);
  const double range = scenario.ego_params.sensor_range;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(x0, x1);
  std::uniform_real_distribution<double> uy(y0, y1);
  for (int i = 0; i < n_points; ++i) {
    const Point q{ux(rng), uy(rng)};
    ++out.samples;
    if (set_boundary_distance(snapshot.visible, q) < band ||
        set_boundary_distance(snapshot.occluded, q) < band) {
      continue;
    }
    // 0 outside the sensed road, 1 visible, 2 occluded.
    int truth = 0;
    const Point o = snapshot.origin;
    if (std::hypot(q.x - o.x, q.y - o.y) <= range && in_drivable_area(scenario, q)) {
      bool blocked = false;
      for (const auto & fp : obstacles) {
        if (in_polygon(fp, q)) {
          blocked = true;
          break;
        }
      }
      truth = (!blocked && sight_clear(o, q, walls, 0.0)) ? 1 : 2;
    }
    const int lib = in_set(snapshot.visible, q) ? 1 : (in_set(snapshot.occluded, q) ? 2 : 0);
    ++out.compared;
    if (lib == truth) {
      ++out.agree;
    }
  }
  return out;
}

bool obstacle_truly_visible(const Scenario & scenario, const Point & origin, int k, const Polygon & footprint)
{
  const auto walls = walls_at(scenario, k);
  const double range = scenario.ego_params.sensor_range;
  const auto & r = footprint.outer;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Point a = r[i];
    const Point b = r[(i + 1) % r.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int n = std::max(1, static_cast<int>(std::ceil(len / 0.05)));
    for (int j = 0; j < n; ++j) {
      const Point q = a + (static_cast<double>(j) / n) * (b - a);
      if (std::hypot(q.x - origin.x, q.y - origin.y) <= range && sight_clear(origin, q, walls, 1e-6)) {
        return true;
      }
    }
  }
  return false;
}

SpawnClauses spawn_clauses(
  const SpawnPoint & sp, const Scenario & scenario, const VisibilitySnapshot & snapshot,
  const VisibleObstacles & visible)
{
  SpawnClauses out;
  const Point p = sp.position;
  out.in_drivable_area = in_drivable_area(scenario, p);
  const bool outside_visible = !in_set(snapshot.visible, p) || set_boundary_distance(snapshot.visible, p) <= 1e-3;
  const bool near_occluded = in_set(snapshot.occluded, p) || set_boundary_distance(snapshot.occluded, p) <= 1e-3;
  out.not_visible = outside_visible && near_occluded;

  std::vector<Polygon> seen;
  for (const auto & o : scenario.static_obstacles) {
    if (std::find(visible.static_ids.begin(), visible.static_ids.end(), o.id) != visible.static_ids.end()) {
      seen.push_back(o.footprint);
    }
  }
  for (const auto & o : scenario.dynamic_obstacles) {
    if (std::find(visible.dynamic_ids.begin(), visible.dynamic_ids.end(), o.id) != visible.dynamic_ids.end() &&
        o.present_at(snapshot.k)) {
      seen.push_back(o.footprint(snapshot.k));
    }
  }
  out.clear = true;
  for (const auto & fp : seen) {
    double d = 0.0;
    if (sp.cause == SpawnCause::DynamicObstacle) {
      d = polygon_distance(
        rectangle_corners({p.x, p.y, sp.heading}, 2.0, 1.0), obstacle_ring(fp));
    } else {
      d = kInf;
      if (point_in_ring(fp.outer, p)) {
        d = 0.0;
      } else {
        for (const auto & e : ring_edges(fp)) {
          d = std::min(d, point_segment(p, e[0], e[1]));
        }
        d = std::max(0.0, d - 0.35);
      }
    }
    if (!(d > 0.0)) {
      out.clear = false;
    }
  }
  return out;
}

FineEncounter fine_encounter(
  const EgoTrajectory & ego, const EgoParams & params, const PredictedTrajectory & pa,
  const geometry::Shape & shape, int substeps)
{
  FineEncounter out{kInf, 0.0, std::nullopt};
  std::vector<std::pair<double, double>> samples;
  const std::size_t n = std::min(ego.states.size(), pa.states.size());
  for (std::size_t k = 0; k < n; ++k) {
    const int jmax = (k + 1 < n) ? substeps : 1;
    for (int j = 0; j < jmax; ++j) {
      const double f = static_cast<double>(j) / substeps;
      const std::size_t k1 = std::min(k + 1, n - 1);
      const auto & e0 = ego.states[k];
      const auto & e1 = ego.states[k1];
      const auto & p0 = pa.states[k];
      const auto & p1 = pa.states[k1];
      const Interp e = lerp_pose(e0.x, e0.y, e0.theta, e1.x, e1.y, e1.theta, f);
      const Interp q = lerp_pose(p0.x, p0.y, p0.theta, p1.x, p1.y, p1.theta, f);
      const double t = (static_cast<double>(k) + f) * ego.dt;
      const double d = body_distance(
        rectangle_corners({e.x, e.y, e.theta}, params.length, params.width), shape, {q.x, q.y, q.theta});
      samples.emplace_back(t, d);
      out.dce = std::min(out.dce, d);
      if (d <= 0.0 && !out.first_overlap) {
        out.first_overlap = t;
      }
    }
  }
  for (const auto & [t, d] : samples) {
    if (d <= out.dce + 1e-6) {
      out.ttce = t;
      break;
    }
  }
  return out;
}

double grid_brake(
  const EgoTrajectory & ego, const EgoParams & params, const std::vector<PhantomAgent> & agents,
  double step, double a_max_search)
{
  const auto & st = ego.states;
  const std::size_t n = st.size();
  std::vector<double> cum(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    cum[j] = cum[j - 1] + std::hypot(st[j].x - st[j - 1].x, st[j].y - st[j - 1].y);
  }
  auto pose_at = [&](double dist) -> geometry::Pose {
    std::size_t i = 0;
    while (i + 2 < n && cum[i + 1] < dist) {
      ++i;
    }
    const double seg = cum[i + 1] - cum[i];
    const double f = seg > 1e-12 ? std::clamp((dist - cum[i]) / seg, 0.0, 1.0) : 0.0;
    const auto q = lerp_pose(st[i].x, st[i].y, st[i].theta, st[i + 1].x, st[i + 1].y, st[i + 1].theta, f);
    return {q.x, q.y, q.theta};
  };
  auto hits = [&](double a) {
    double dist = 0.0;
    bool halted = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0 && !halted) {
        const double planned = cum[k] - cum[k - 1];
        const double braked = planned - a * (static_cast<double>(k) - 0.5) * ego.dt * ego.dt;
        if (braked <= 0.0 && a > 0.0) {
          halted = true;
        } else {
          dist += std::max(0.0, braked);
        }
      }
      const geometry::Pose pose = k == 0 ? st[0].pose() : pose_at(dist);
      const auto rect = rectangle_corners(pose, params.length, params.width);
      for (const auto & ag : agents) {
        for (const auto & pred : ag.predictions) {
          if (k < pred.states.size() && body_distance(rect, ag.shape, pred.states[k].pose()) <= 0.0) {
            return true;
          }
        }
      }
    }
    return false;
  };
  const int steps = static_cast<int>(std::lround(a_max_search / step));
  for (int i = 0; i <= steps; ++i) {
    const double a = i * step;
    if (!hits(a)) {
      return a;
    }
  }
  return a_max_search;
}

double monte_carlo_cp(
  const EgoTrajectory & ego, const EgoParams & params, const PhantomAgent & pa, std::size_t samples,
  std::uint64_t seed, double sigma0, double sigma_rate)
{
  // One set of standard normal draws, rescaled per step (common random numbers).
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> zx(samples);
  std::vector<double> zy(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    zx[i] = gauss(rng);
    zy[i] = gauss(rng);
  }
  const double reach = 0.5 * std::hypot(params.length, params.width);
  double best = 0.0;
  for (const auto & pred : pa.predictions) {
    const std::size_t n = std::min(ego.states.size(), pred.states.size());
    for (std::size_t k = 0; k < n; ++k) {
      const double sigma = sigma0 + sigma_rate * static_cast<double>(k) * ego.dt;
      const auto & e = ego.states[k];
      const auto & m = pred.states[k];
      const double gap = std::hypot(m.x - e.x, m.y - e.y) - reach;
      if (gap > 7.0 * sigma) {
        continue;
      }
      const double c = std::cos(e.theta);
      const double s = std::sin(e.theta);
      const double hl = 0.5 * params.length;
      const double hw = 0.5 * params.width;
      const double mx = m.x - e.x;
      const double my = m.y - e.y;
      std::size_t hit = 0;
      for (std::size_t i = 0; i < samples; ++i) {
        const double px = mx + sigma * zx[i];
        const double py = my + sigma * zy[i];
        const double u = c * px + s * py;
        const double v = -s * px + c * py;
        hit += (std::abs(u) <= hl && std::abs(v) <= hw) ? 1 : 0;
      }
      best = std::max(best, static_cast<double>(hit) / static_cast<double>(samples));
    }
  }
  return best;
}

std::optional<double> growing_discs(
  const Point & a, double ra, const Point & b, double rb, double va, double vb, double step, double t_max)
{
  const double gap = std::hypot(a.x - b.x, a.y - b.y);
  const auto n = static_cast<long>(std::ceil(t_max / step));
  for (long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * step;
    if (gap <= ra + rb + (va + vb) * t) {
      return t;
    }
  }
  return std::nullopt;
}

double exhaustive_risk(const std::vector<double> & p, const std::vector<double> & h)
{
  double best = 0.0;
  for (std::size_t i = 0; i < p.size() && i < h.size(); ++i) {
    if (p[i] * h[i] > best) {
      best = p[i] * h[i];
    }
  }
  return best;
}

double brute_force_cost(
  const EgoTrajectory & traj, const EgoParams & params, const std::vector<ObstacleTrack> & tracks,
  const CostWeights & w, double v_target, double epsilon)
{
  const auto & s0 = traj.states.front();
  const double T = traj.duration;
  std::vector<double> lat;
  std::vector<double> lon;
  if (traj.sample_index >= 0) {
    lat = solve(
      {basis_row(6, 0, 0), basis_row(6, 1, 0), basis_row(6, 2, 0), basis_row(6, 0, T), basis_row(6, 1, T),
       basis_row(6, 2, T)},
      {s0.d, s0.d_d, s0.d_dd, traj.d_end, 0.0, 0.0});
    lon = solve(
      {basis_row(5, 0, 0), basis_row(5, 1, 0), basis_row(5, 2, 0), basis_row(5, 1, T), basis_row(5, 2, T)},
      {s0.s, s0.s_d, s0.s_dd, traj.v_end, 0.0});
  }
  double total = 0.0;
  const double dt = traj.dt;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto & st = traj.states[k];
    const double t = static_cast<double>(k) * dt;
    double jd = 0.0;
    double js = 0.0;
    if (traj.sample_index >= 0 && t <= T + 1e-12) {
      jd = third_derivative(lat, t);
      js = third_derivative(lon, t);
    } else if (traj.sample_index < 0) {
      jd = traj.lateral_jerk[k];
      js = traj.longitudinal_jerk[k];
    }
    total += w.lateral_jerk * jd * jd * dt + w.longitudinal_jerk * js * js * dt;
    total += w.dist_to_reference * st.d * st.d * dt;
    total += w.velocity * (st.v - v_target) * (st.v - v_target) * dt;
    if (!tracks.empty()) {
      const auto rect = rectangle_corners(st.pose(), params.length, params.width);
      double dmin = kInf;
      for (const auto & o : tracks) {
        dmin = std::min(dmin, polygon_distance(rect, o.footprint_at(k).outer));
      }
      total += w.dist_to_obstacles * dt / (epsilon + dmin);
    }
  }
  double cp = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto & st = traj.states[k];
    const double sigma = 0.2 + 0.3 * static_cast<double>(k) * dt;
    for (const auto & o : tracks) {
      if (o.is_static || o.poses.empty()) {
        continue;
      }
      const auto & q = o.poses[std::min(k, o.poses.size() - 1)];
      const double dx = q.x - st.x;
      const double dy = q.y - st.y;
      const double u = std::cos(st.theta) * dx + std::sin(st.theta) * dy;
      const double v = -std::sin(st.theta) * dx + std::cos(st.theta) * dy;
      const double hl = 0.5 * params.length;
      const double hw = 0.5 * params.width;
      const double m = (phi((hl - u) / sigma) - phi((-hl - u) / sigma)) * (phi((hw - v) / sigma) - phi((-hw - v) / sigma));
      cp = std::max(cp, m);
    }
  }
  return total + w.collision_probability * cp;
}

bool brute_force_feasible(const EgoTrajectory & traj, const EgoParams & params, double delta_max)
{
  const double kmax = std::tan(delta_max) / params.wheelbase;
  const auto & st = traj.states;
  for (std::size_t k = 0; k < st.size(); ++k) {
    if (std::abs(st[k].s_dd) > params.a_max + 1e-9) {
      return false;
    }
    if (st[k].s_d < -1e-6 || st[k].v > params.v_max + 1e-9) {
      return false;
    }
    // heading change over the next metre of path, at least 0.1 m of arc
    double arc = 0.0;
    std::size_t j = k;
    for (; j + 1 < st.size() && arc < 1.0; ++j) {
      arc += std::hypot(st[j + 1].x - st[j].x, st[j + 1].y - st[j].y);
    }
    const double turn = std::abs(std::remainder(st[j].theta - st[k].theta, 2.0 * std::numbers::pi));
    if (turn / std::max(arc, 0.1) > kmax + 1e-9) {
      return false;
    }
  }
  return true;
}

}  // namespace blindspot::oracles
