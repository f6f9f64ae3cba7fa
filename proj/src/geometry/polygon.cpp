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

#include "blindspot/geometry/polygon.hpp"

#include "blindspot/errors.hpp"

#define BOOST_GEOMETRY_NO_ROBUSTNESS

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace bg = boost::geometry;

namespace blindspot::geometry
{

namespace
{

using BPoint = bg::model::d2::point_xy<double>;
// counter-clockwise, open rings
using BPolygon = bg::model::polygon<BPoint, false, false>;
using BMulti = bg::model::multi_polygon<BPolygon>;

constexpr double kSnap = 1e-9;
constexpr double kSliverArea = 1e-14;
constexpr double kRepairArea = 1e-3;
constexpr double kSpikeArea = 1e-9;
constexpr double kDuplicate = 1e-7;
constexpr double kAreaSlack = 1e-9;
constexpr double kTouch = 1e-7;

double snap(double v) { return std::round(v / kSnap) * kSnap; }

void append_ring(const Ring & ring, BPolygon::ring_type & out)
{
  out.clear();
  out.reserve(ring.size());
  for (const auto & p : ring) {
    BPoint q{snap(p.x), snap(p.y)};
    if (!out.empty() && bg::get<0>(out.back()) == q.x() && bg::get<1>(out.back()) == q.y()) {
      continue;
    }
    out.push_back(q);
  }
  while (out.size() > 1 && bg::get<0>(out.back()) == bg::get<0>(out.front()) &&
         bg::get<1>(out.back()) == bg::get<1>(out.front())) {
    out.pop_back();
  }
}

std::int64_t grid_key(double v) { return static_cast<std::int64_t>(std::llround(v / kSnap)); }

// Splits a ring at its self-intersections into loops that do not cross.
std::vector<Ring> split_ring(const Ring & ring)
{
  const std::size_t n = ring.size();
  std::vector<std::vector<std::pair<double, Point>>> cuts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a0 = ring[i];
    const Point r = ring[(i + 1) % n] - a0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) {
        continue;
      }
      const Point b0 = ring[j];
      const Point q = ring[(j + 1) % n] - b0;
      const double denom = cross(r, q);
      if (std::abs(denom) < 1e-18) {
        continue;
      }
      const Point w = b0 - a0;
      const double t = cross(w, q) / denom;
      const double u = cross(w, r) / denom;
      constexpr double eps = 1e-12;
      if (t < -eps || t > 1.0 + eps || u < -eps || u > 1.0 + eps) {
        continue;
      }
      const Point p = a0 + t * r;
      const Point snapped{snap(p.x), snap(p.y)};
      cuts[i].emplace_back(t, snapped);
      cuts[j].emplace_back(u, snapped);
    }
  }
  // vertices touching a non-adjacent edge
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == v || (i + 1) % n == v) {
        continue;
      }
      const Segment e{ring[i], ring[(i + 1) % n]};
      if (point_segment_distance(ring[v], e) < kTouch) {
        const Point d = e.b - e.a;
        const double t = dot(ring[v] - e.a, d) / dot(d, d);
        cuts[i].emplace_back(t, ring[v]);
      }
    }
  }
  std::vector<Point> sequence;
  for (std::size_t i = 0; i < n; ++i) {
    sequence.push_back(ring[i]);
    std::sort(cuts[i].begin(), cuts[i].end(), [](const auto & x, const auto & y) { return x.first < y.first; });
    for (const auto & c : cuts[i]) {
      sequence.push_back(c.second);
    }
  }
  std::vector<Ring> loops;
  std::vector<Point> stack;
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> position;
  for (const auto & p : sequence) {
    const auto key = std::make_pair(grid_key(p.x), grid_key(p.y));
    const auto it = position.find(key);
    if (it == position.end()) {
      position.emplace(key, stack.size());
      stack.push_back(p);
      continue;
    }
    const std::size_t start = it->second;
    Ring loop(stack.begin() + static_cast<std::ptrdiff_t>(start), stack.end());
    for (std::size_t k = start + 1; k < stack.size(); ++k) {
      position.erase(std::make_pair(grid_key(stack[k].x), grid_key(stack[k].y)));
    }
    stack.resize(start + 1);
    if (loop.size() >= 3) {
      loops.push_back(std::move(loop));
    }
  }
  if (stack.size() >= 3) {
    loops.push_back(std::move(stack));
  }
  return loops;
}

Ring to_ring(const BPolygon::ring_type & r)
{
  Ring ring;
  ring.reserve(r.size());
  for (const auto & p : r) {
    ring.push_back({bg::get<0>(p), bg::get<1>(p)});
  }
  return ring;
}

bool ring_strictly_contains(const Ring & ring, const Point & p);

// Rebuilds a polygon with crossing rings from the loops that keep the
// orientation of their ring; twisted loops are dropped.
std::vector<BPolygon> repair(const BPolygon & bp)
{
  std::vector<Ring> holes;
  for (const auto & inner : bp.inners()) {
    for (auto & loop : split_ring(to_ring(inner))) {
      if (signed_area(loop) < -kSliverArea) {
        holes.push_back(std::move(loop));
      }
    }
  }
  std::vector<BPolygon> out;
  for (auto & loop : split_ring(to_ring(bp.outer()))) {
    if (signed_area(loop) <= kSliverArea) {
      continue;
    }
    BPolygon piece;
    append_ring(loop, piece.outer());
    for (const auto & h : holes) {
      if (ring_strictly_contains(loop, h.front())) {
        BPolygon::ring_type r;
        append_ring(h, r);
        piece.inners().push_back(std::move(r));
      }
    }
    bg::correct(piece);
    out.push_back(std::move(piece));
  }
  return out;
}

BMulti to_boost(const PolygonSet & set)
{
  BMulti multi;
  multi.reserve(set.polygons.size());
  for (const auto & poly : set.polygons) {
    BPolygon bp;
    append_ring(poly.outer, bp.outer());
    if (bp.outer().size() < 3) {
      continue;
    }
    for (const auto & hole : poly.holes) {
      BPolygon::ring_type r;
      append_ring(hole, r);
      if (r.size() >= 3) {
        bp.inners().push_back(std::move(r));
      }
    }
    bg::correct(bp);
    bg::validity_failure_type failure{};
    if (bg::is_valid(bp, failure) || failure != bg::failure_self_intersections) {
      multi.push_back(std::move(bp));
      continue;
    }
    for (auto & piece : repair(bp)) {
      if (!bg::is_valid(piece, failure) && failure == bg::failure_self_intersections) {
        throw DegenerateGeometryError("polygon ring is self-intersecting");
      }
      multi.push_back(std::move(piece));
    }
  }
  return multi;
}

// Removes near duplicates and spikes: vertices spanning a negligible triangle
// with their neighbours where the boundary doubles back.
void drop_flat_vertices(Ring & ring)
{
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
      const Point & a = ring[(i + ring.size() - 1) % ring.size()];
      const Point & b = ring[i];
      const Point & c = ring[(i + 1) % ring.size()];
      const bool duplicate = distance(a, b) < kDuplicate;
      const bool spike = std::abs(cross(b - a, c - a)) < 2.0 * kSpikeArea && dot(b - a, c - b) < 0.0;
      if (duplicate || spike) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
}

Ring from_ring(const BPolygon::ring_type & r)
{
  Ring ring;
  ring.reserve(r.size());
  for (const auto & p : r) {
    ring.push_back({bg::get<0>(p), bg::get<1>(p)});
  }
  drop_flat_vertices(ring);
  return ring;
}

// Drops the near-degenerate slivers that floating-point clipping can leave
// along almost coincident edges; they would not survive as valid inputs.
PolygonSet from_boost(BMulti multi)
{
  PolygonSet out;
  out.polygons.reserve(multi.size());
  for (const auto & bp : multi) {
    Polygon p;
    p.outer = from_ring(bp.outer());
    if (p.outer.size() < 3) {
      continue;
    }
    const double area = std::abs(signed_area(p.outer));
    if (area < kSliverArea) {
      continue;
    }
    if (area < kRepairArea) {
      BPolygon snapped;
      append_ring(p.outer, snapped.outer());
      bg::correct(snapped);
      bg::validity_failure_type failure{};
      if (snapped.outer().size() < 3 ||
          (!bg::is_valid(snapped, failure) && failure == bg::failure_self_intersections)) {
        continue;
      }
    }
    for (const auto & inner : bp.inners()) {
      Ring hole = from_ring(inner);
      if (hole.size() >= 3 && std::abs(signed_area(hole)) >= kSliverArea) {
        p.holes.push_back(std::move(hole));
      }
    }
    out.polygons.push_back(normalized(std::move(p)));
  }
  return out;
}

bool ring_contains(const Ring & ring, const Point & p)
{
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point & a = ring[i];
    const Point & b = ring[j];
    if (point_segment_distance(p, {a, b}) <= 1e-12) {
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

bool ring_strictly_contains(const Ring & ring, const Point & p)
{
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if (point_segment_distance(p, {ring[i], ring[j]}) <= 1e-12) {
      return false;
    }
  }
  return ring_contains(ring, p);
}

void ring_edges(const Ring & ring, std::vector<Segment> & out)
{
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({ring[i], ring[(i + 1) % n]});
  }
}

bool ring_is_simple(const Ring & ring)
{
  const std::size_t n = ring.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Segment s{ring[i], ring[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        continue;
      }
      if (segments_intersect(s, {ring[j], ring[(j + 1) % n]})) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

double signed_area(std::span<const Point> ring)
{
  double a = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    a += cross(ring[i], ring[(i + 1) % n]);
  }
  return 0.5 * a;
}

double Polygon::area() const
{
  double a = std::abs(signed_area(outer));
  for (const auto & h : holes) {
    a -= std::abs(signed_area(h));
  }
  return a;
}

bool Polygon::contains(const Point & p) const
{
  if (empty() || !ring_contains(outer, p)) {
    return false;
  }
  for (const auto & h : holes) {
    if (ring_strictly_contains(h, p)) {
      return false;
    }
  }
  return true;
}

std::vector<Segment> Polygon::edges() const
{
  std::vector<Segment> out;
  ring_edges(outer, out);
  for (const auto & h : holes) {
    ring_edges(h, out);
  }
  return out;
}

Point Polygon::centroid() const
{
  double a_sum = 0.0;
  Point c{};
  auto accumulate = [&](const Ring & ring, double sign) {
    const double a = std::abs(signed_area(ring));
    if (a <= 0.0) {
      return;
    }
    double cx = 0.0;
    double cy = 0.0;
    const double sa = signed_area(ring);
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point & p = ring[i];
      const Point & q = ring[(i + 1) % n];
      const double f = cross(p, q);
      cx += (p.x + q.x) * f;
      cy += (p.y + q.y) * f;
    }
    const Point rc{cx / (6.0 * sa), cy / (6.0 * sa)};
    c += sign * a * rc;
    a_sum += sign * a;
  };
  accumulate(outer, 1.0);
  for (const auto & h : holes) {
    accumulate(h, -1.0);
  }
  return a_sum > 0.0 ? c / a_sum : Point{};
}

double PolygonSet::area() const
{
  double a = 0.0;
  for (const auto & p : polygons) {
    a += p.area();
  }
  return a;
}

bool PolygonSet::contains(const Point & p) const
{
  return std::any_of(
    polygons.begin(), polygons.end(), [&](const Polygon & poly) { return poly.contains(p); });
}

std::vector<Segment> PolygonSet::edges() const
{
  std::vector<Segment> out;
  for (const auto & p : polygons) {
    ring_edges(p.outer, out);
    for (const auto & h : p.holes) {
      ring_edges(h, out);
    }
  }
  return out;
}

double PolygonSet::boundary_distance(const Point & p) const
{
  double best = std::numeric_limits<double>::infinity();
  for (const auto & e : edges()) {
    best = std::min(best, point_segment_distance(p, e));
  }
  return best;
}

namespace
{

BMulti run_boolean(const BMulti & a, const BMulti & b, BooleanOp op)
{
  BMulti out;
  switch (op) {
    case BooleanOp::Union:
      bg::union_(a, b, out);
      break;
    case BooleanOp::Intersection:
      bg::intersection(a, b, out);
      break;
    case BooleanOp::Difference:
      bg::difference(a, b, out);
      break;
  }
  return out;
}

// Area bounds every correct result satisfies.
bool plausible(double area_a, double area_b, double area_out, BooleanOp op)
{
  const double tol = kAreaSlack * (1.0 + area_a + area_b);
  switch (op) {
    case BooleanOp::Union:
      return area_out >= std::max(area_a, area_b) - tol && area_out <= area_a + area_b + tol;
    case BooleanOp::Intersection:
      return area_out <= std::min(area_a, area_b) + tol;
    case BooleanOp::Difference:
      return area_out >= area_a - area_b - tol && area_out <= area_a + tol;
  }
  return false;
}

}  // namespace

PolygonSet boolean(const PolygonSet & a, const PolygonSet & b, BooleanOp op)
{
  const BMulti ba = to_boost(a);
  const BMulti bb = to_boost(b);
  const double area_a = bg::area(ba);
  const double area_b = bg::area(bb);
  BMulti out = run_boolean(ba, bb, op);
  if (plausible(area_a, area_b, bg::area(out), op)) {
    return from_boost(std::move(out));
  }
  if (op != BooleanOp::Difference) {
    out = run_boolean(bb, ba, op);
    if (plausible(area_a, area_b, bg::area(out), op)) {
      return from_boost(std::move(out));
    }
  }
  // One polygon of `b` at a time.
  if (bb.size() > 1 || ba.size() > 1) {
    PolygonSet acc = op == BooleanOp::Intersection ? PolygonSet{} : a;
    for (const auto & piece : bb) {
      BMulti one{piece};
      if (op == BooleanOp::Intersection) {
        acc = unite(acc, from_boost(run_boolean(ba, one, op)));
      } else {
        const BMulti cur = to_boost(acc);
        BMulti step = run_boolean(cur, one, op);
        if (!plausible(bg::area(cur), bg::area(one), bg::area(step), op)) {
          step = op == BooleanOp::Union ? run_boolean(one, cur, op) : step;
        }
        if (!plausible(bg::area(cur), bg::area(one), bg::area(step), op)) {
          throw DegenerateGeometryError("polygon boolean produced an implausible result");
        }
        acc = from_boost(std::move(step));
      }
    }
    if (plausible(area_a, area_b, acc.area(), op)) {
      return acc;
    }
  }
  throw DegenerateGeometryError("polygon boolean produced an implausible result");
}

PolygonSet unite_all(std::span<const Polygon> polygons)
{
  // pairwise tree reduction keeps intermediate results small
  std::vector<PolygonSet> level;
  level.reserve(polygons.size());
  for (const auto & p : polygons) {
    level.emplace_back(p);
  }
  if (level.empty()) {
    return {};
  }
  while (level.size() > 1) {
    std::vector<PolygonSet> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(unite(level[i], level[i + 1]));
    }
    if (level.size() % 2 == 1) {
      next.push_back(std::move(level.back()));
    }
    level = std::move(next);
  }
  return std::move(level.front());
}

bool is_simple(const Polygon & p)
{
  if (!ring_is_simple(p.outer)) {
    return false;
  }
  return std::all_of(p.holes.begin(), p.holes.end(), ring_is_simple);
}

Polygon normalized(Polygon p)
{
  auto dedupe = [](Ring & r) {
    r.erase(
      std::unique(
        r.begin(), r.end(), [](const Point & a, const Point & b) { return distance(a, b) < 1e-12; }),
      r.end());
    while (r.size() > 1 && distance(r.front(), r.back()) < 1e-12) {
      r.pop_back();
    }
  };
  dedupe(p.outer);
  if (signed_area(p.outer) < 0.0) {
    std::reverse(p.outer.begin(), p.outer.end());
  }
  for (auto & h : p.holes) {
    dedupe(h);
    if (signed_area(h) > 0.0) {
      std::reverse(h.begin(), h.end());
    }
  }
  return p;
}

double min_distance(const Polygon & a, const Polygon & b)
{
  if (a.empty() || b.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.contains(b.outer.front()) || b.contains(a.outer.front())) {
    return 0.0;
  }
  const auto ea = a.edges();
  const auto eb = b.edges();
  double best = std::numeric_limits<double>::infinity();
  for (const auto & s : ea) {
    for (const auto & t : eb) {
      best = std::min(best, segment_segment_distance(s, t));
      if (best == 0.0) {
        return 0.0;
      }
    }
  }
  return best;
}

double min_distance(const Polygon & a, const Point & p)
{
  if (a.contains(p)) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto & e : a.edges()) {
    best = std::min(best, point_segment_distance(p, e));
  }
  return best;
}

Polygon make_rectangle(const Point & center, double heading, double length, double width)
{
  const Point u = from_angle(heading) * (0.5 * length);
  const Point v = perp(from_angle(heading)) * (0.5 * width);
  return Polygon{{center - u - v, center + u - v, center + u + v, center - u + v}, {}};
}

Polygon make_disc(const Point & center, double radius, int vertices)
{
  Polygon p;
  p.outer.reserve(static_cast<std::size_t>(vertices));
  for (int i = 0; i < vertices; ++i) {
    const double a = 2.0 * std::numbers::pi * i / vertices;
    p.outer.push_back(center + radius * from_angle(a));
  }
  return p;
}

}  // namespace blindspot::geometry
