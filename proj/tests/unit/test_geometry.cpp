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

#include "blindspot/errors.hpp"
#include "blindspot/geometry/curvilinear.hpp"
#include "blindspot/geometry/point.hpp"
#include "blindspot/geometry/polygon.hpp"
#include "blindspot/geometry/shape.hpp"
#include "blindspot/geometry/visibility.hpp"
#include "blindspot/oracles/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace blindspot::geometry
{
namespace
{

constexpr double kPi = std::numbers::pi;

Polygon square(double x0, double y0, double x1, double y1)
{
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, {}};
}

Polygon random_convex(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> c(-5.0, 5.0);
  std::uniform_real_distribution<double> r(0.5, 4.0);
  std::uniform_int_distribution<int> n(3, 9);
  const Point centre{c(rng), c(rng)};
  const double radius = r(rng);
  const int count = n(rng);
  std::uniform_real_distribution<double> jitter(0.0, 2.0 * kPi);
  std::vector<double> angles(static_cast<std::size_t>(count));
  for (auto & a : angles) {
    a = jitter(rng);
  }
  std::sort(angles.begin(), angles.end());
  Polygon p;
  for (double a : angles) {
    p.outer.push_back(centre + radius * from_angle(a));
  }
  return normalized(p);
}

double boundary_sample_distance(const Polygon & a, const Polygon & b, int per_edge)
{
  std::vector<Point> pa;
  std::vector<Point> pb;
  for (const auto & e : a.edges()) {
    for (int i = 0; i <= per_edge; ++i) {
      pa.push_back(e.a + (static_cast<double>(i) / per_edge) * (e.b - e.a));
    }
  }
  for (const auto & e : b.edges()) {
    for (int i = 0; i <= per_edge; ++i) {
      pb.push_back(e.a + (static_cast<double>(i) / per_edge) * (e.b - e.a));
    }
  }
  double best = INFINITY;
  for (const auto & p : pa) {
    for (const auto & q : pb) {
      best = std::min(best, distance(p, q));
    }
  }
  return best;
}

TEST(Point, NormalizeAngleRange)
{
  EXPECT_NEAR(normalize_angle(3.0 * kPi), kPi, 1e-12);
  EXPECT_NEAR(normalize_angle(-kPi / 2 - 2.0 * kPi), -kPi / 2, 1e-12);
  EXPECT_NEAR(normalize_angle(0.25), 0.25, 1e-15);
}

TEST(Point, SegmentPrimitives)
{
  EXPECT_TRUE(segments_intersect({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}));
  EXPECT_FALSE(segments_intersect({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}));
  EXPECT_NEAR(segment_segment_distance({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}), 1.0, 1e-12);
  const auto hit = ray_segment_hit({0, 0}, {1, 0}, {{5, -5}, {5, 5}});
  ASSERT_TRUE(hit.has_value());
  EXPECT_NEAR(*hit, 5.0, 1e-12);
  EXPECT_FALSE(ray_segment_hit({0, 0}, {-1, 0}, {{5, -5}, {5, 5}}).has_value());
}

TEST(Polygon, DisjointSquaresIntersectionIsEmpty)
{
  const auto out = intersect(square(0, 0, 1, 1), square(3, 0, 4, 1));
  EXPECT_TRUE(out.empty());
  EXPECT_NEAR(out.area(), 0.0, 1e-12);
}

TEST(Polygon, SquareIntersectItself)
{
  const auto out = intersect(square(0, 0, 1, 1), square(0, 0, 1, 1));
  EXPECT_NEAR(out.area(), 1.0, 1e-9);
}

TEST(Polygon, OverlappingSquares)
{
  const auto out = intersect(square(0, 0, 2, 2), square(1, 1, 3, 3));
  ASSERT_EQ(out.polygons.size(), 1u);
  EXPECT_NEAR(out.area(), 1.0, 1e-9);
  EXPECT_TRUE(out.contains({1.5, 1.5}));
  EXPECT_FALSE(out.contains({0.5, 0.5}));
}

TEST(Polygon, DifferenceCreatesHole)
{
  const auto out = subtract(square(0, 0, 4, 4), square(1, 1, 2, 2));
  ASSERT_EQ(out.polygons.size(), 1u);
  EXPECT_EQ(out.polygons[0].holes.size(), 1u);
  EXPECT_NEAR(out.area(), 15.0, 1e-9);
  EXPECT_FALSE(out.contains({1.5, 1.5}));
}

TEST(Polygon, OrientationNormalized)
{
  Polygon cw{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}, {}};
  EXPECT_LT(signed_area(cw.outer), 0.0);
  EXPECT_GT(signed_area(normalized(cw).outer), 0.0);
  EXPECT_NEAR(normalized(cw).area(), 1.0, 1e-12);
}

TEST(Polygon, SimplicityCheck)
{
  EXPECT_TRUE(is_simple(square(0, 0, 1, 1)));
  Polygon bowtie{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {}};
  EXPECT_FALSE(is_simple(bowtie));
}

TEST(Polygon, AreaLawFuzz)
{
  std::mt19937_64 rng(7);
  double worst = 0.0;
  double worst_diff = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_convex(rng);
    const auto b = random_convex(rng);
    const double u = unite(a, b).area();
    const double n = intersect(a, b).area();
    worst = std::max(worst, std::abs(u - (a.area() + b.area() - n)));
    const auto d = subtract(a, b);
    worst_diff = std::max(worst_diff, intersect(d, b).area());
  }
  EXPECT_LT(worst, 1e-6);
  EXPECT_LT(worst_diff, 1e-9);
}

TEST(Polygon, UnionMembersDisjoint)
{
  const std::vector<Polygon> parts{square(0, 0, 1, 1), square(2, 0, 3, 1), square(0.5, 0.5, 2.5, 0.8)};
  const auto u = unite_all(parts);
  for (std::size_t i = 0; i < u.polygons.size(); ++i) {
    for (std::size_t j = i + 1; j < u.polygons.size(); ++j) {
      EXPECT_LT(intersect(u.polygons[i], u.polygons[j]).area(), 1e-9);
    }
  }
  EXPECT_NEAR(u.area(), 1.0 + 1.0 + 2.0 * 0.3 - 2.0 * 0.5 * 0.3, 1e-9);
}

TEST(MinDistance, OverlappingSquaresIsZero)
{
  EXPECT_EQ(min_distance(square(0, 0, 2, 2), square(1, 1, 3, 3)), 0.0);
}

TEST(MinDistance, DiagonalCorners)
{
  const auto a = square(0, 0, 1, 1);
  const auto b = square(3, 3, 4, 4);
  EXPECT_NEAR(min_distance(a, b), std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(min_distance(a, b), boundary_sample_distance(a, b, 200), 1e-4);
}

TEST(MinDistance, FacingEdges)
{
  EXPECT_NEAR(min_distance(square(0, 0, 1, 1), square(5, 0, 6, 1)), 4.0, 1e-12);
}

TEST(MinDistance, ZeroIffIntersecting)
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_convex(rng);
    const auto b = random_convex(rng);
    const double d = min_distance(a, b);
    const double overlap = intersect(a, b).area();
    if (overlap > 1e-9) {
      EXPECT_EQ(d, 0.0);
    }
    if (d > 1e-9) {
      EXPECT_LT(overlap, 1e-12);
    }
    EXPECT_NEAR(d, oracles::convex_distance(a.outer, b.outer), 1e-9);
  }
}

TEST(Shape, RectangleFootprintAtOrigin)
{
  const auto fp = Shape::rectangle(4.0, 2.0).footprint({0, 0, 0});
  ASSERT_EQ(fp.outer.size(), 4u);
  for (const auto & c : fp.outer) {
    EXPECT_NEAR(std::abs(c.x), 2.0, 1e-12);
    EXPECT_NEAR(std::abs(c.y), 1.0, 1e-12);
  }
}

TEST(Shape, RectangleFootprintRotated)
{
  const auto fp = Shape::rectangle(4.0, 2.0).footprint({0, 0, kPi / 2});
  for (const auto & c : fp.outer) {
    EXPECT_NEAR(std::abs(c.x), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(c.y), 2.0, 1e-12);
  }
}

TEST(Shape, RectangleFootprintRigidTransform)
{
  const Pose pose{10, 5, kPi / 4};
  const auto fp = Shape::rectangle(4.0, 2.0).footprint(pose);
  const double c = std::cos(kPi / 4);
  const double s = std::sin(kPi / 4);
  const std::vector<Point> local{{2, -1}, {2, 1}, {-2, 1}, {-2, -1}};
  for (const auto & l : local) {
    const Point expected{10 + c * l.x - s * l.y, 5 + s * l.x + c * l.y};
    double best = INFINITY;
    for (const auto & q : fp.outer) {
      best = std::min(best, distance(q, expected));
    }
    EXPECT_LT(best, 1e-12);
  }
}

TEST(Shape, FootprintAreaPoseInvariant)
{
  const auto rect = Shape::rectangle(4.5, 2.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 100; ++i) {
    EXPECT_NEAR(rect.footprint({u(rng), u(rng), u(rng)}).area(), 9.0, 1e-9);
  }
  EXPECT_NEAR(rect.bounding_radius(), std::hypot(2.25, 1.0), 1e-12);
}

TEST(Shape, ClearanceMatchesBruteForce)
{
  const auto body = square(0, 0, 4, 2);
  const auto shape = Shape::rectangle(2.0, 1.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-8.0, 12.0);
  std::uniform_real_distribution<double> th(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const Pose pose{u(rng), u(rng), th(rng)};
    const double c = clearance(body, shape, pose);
    const double ref = oracles::body_distance(body.outer, shape, pose);
    if (ref > 0.0) {
      EXPECT_NEAR(c, ref, 1e-9);
    } else {
      EXPECT_LE(c, 0.0);
    }
  }
}

TEST(Curvilinear, StraightProjection)
{
  const CurvilinearFrame f({{0, 0}, {10, 0}, {20, 0}});
  const auto p = f.to_curvilinear({3, 2});
  EXPECT_NEAR(p.s, 3.0, 1e-12);
  EXPECT_NEAR(p.d, 2.0, 1e-12);
  EXPECT_NEAR(f.to_curvilinear({12, 0}).d, 0.0, 1e-12);
}

TEST(Curvilinear, StraightInverse)
{
  const CurvilinearFrame f({{0, 0}, {10, 0}, {20, 0}});
  const auto origin = f.from_curvilinear(0.0, 0.0);
  EXPECT_NEAR(origin.x, 0.0, 1e-12);
  EXPECT_NEAR(origin.y, 0.0, 1e-12);
  const auto q = f.from_curvilinear(5.0, -1.0);
  EXPECT_NEAR(q.x, 5.0, 1e-12);
  EXPECT_NEAR(q.y, -1.0, 1e-12);
}

TEST(Curvilinear, CircularArc)
{
  std::vector<Point> path;
  const int n = 3600;
  for (int i = 0; i <= n; ++i) {
    const double a = -kPi / 2 + (kPi / 2) * i / n;
    path.push_back({10.0 * std::cos(a), 10.0 + 10.0 * std::sin(a)});
  }
  const CurvilinearFrame f(path);
  const double a = -kPi / 2 + kPi / 6;
  const auto p = f.to_curvilinear({9.0 * std::cos(a), 10.0 + 9.0 * std::sin(a)});
  EXPECT_NEAR(p.s, 10.0 * kPi / 6, 1e-3);
  EXPECT_NEAR(p.d, 1.0, 1e-3);
}

TEST(Curvilinear, RoundTripFuzz)
{
  std::vector<Point> path;
  for (int i = 0; i <= 60; ++i) {
    const double x = i;
    path.push_back({x, 3.0 * std::sin(x / 10.0)});
  }
  const CurvilinearFrame f(path, 2.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> us(0.0, f.length());
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = us(rng);
    const double d = ud(rng);
    const auto q = f.to_curvilinear(f.from_curvilinear(s, d));
    worst = std::max(worst, std::hypot(q.s - s, q.d - d));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Curvilinear, Errors)
{
  EXPECT_THROW(CurvilinearFrame({{0, 0}}), InvariantError);
  EXPECT_THROW(CurvilinearFrame({{0, 0}, {0, 0}, {1, 0}}), InvariantError);
  const CurvilinearFrame f({{0, 0}, {10, 0}}, 5.0);
  EXPECT_THROW(f.to_curvilinear({5, 50}), OutOfDomainError);
  EXPECT_THROW(f.from_curvilinear(11.0, 0.0), OutOfDomainError);
  const auto ext = f.from_curvilinear_extended(12.0, 1.0);
  EXPECT_NEAR(ext.x, 12.0, 1e-12);
  EXPECT_NEAR(ext.y, 1.0, 1e-12);
}

TEST(Curvilinear, FrameVectorsOrthonormal)
{
  const CurvilinearFrame f({{0, 0}, {10, 0}, {20, 10}, {20, 30}});
  for (double s = 0.0; s <= f.length(); s += 0.37) {
    EXPECT_NEAR(norm(f.normal(s)), 1.0, 1e-12);
    EXPECT_NEAR(dot(f.normal(s), f.tangent(s)), 0.0, 1e-12);
  }
}

TEST(Visibility, FullDisc)
{
  const auto region = visibility_region({0, 0}, {}, 10.0);
  EXPECT_NEAR(region.area(), kPi * 100.0, 0.005 * kPi * 100.0);
}

double grid_agreement(const Polygon & region, const Point & origin, const std::vector<Segment> & walls, double radius)
{
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-radius, radius);
  int compared = 0;
  int agree = 0;
  const PolygonSet set(region);
  for (int i = 0; i < 10000; ++i) {
    const Point q{origin.x + u(rng), origin.y + u(rng)};
    if (set.boundary_distance(q) < 1e-3 || std::abs(distance(q, origin) - radius) < 0.05) {
      continue;
    }
    bool seen = distance(q, origin) < radius;
    for (const auto & w : walls) {
      if (seen && oracles::segments_cross(origin, q, w.a, w.b)) {
        seen = false;
      }
    }
    ++compared;
    agree += (seen == region.contains(q)) ? 1 : 0;
  }
  return static_cast<double>(agree) / compared;
}

TEST(Visibility, WallShadowMatchesGrid)
{
  const std::vector<Segment> walls{{{5, -5}, {5, 5}}};
  const auto region = visibility_region({0, 0}, walls, 10.0);
  EXPECT_FALSE(region.contains({7, 0}));
  EXPECT_TRUE(region.contains({4, 0}));
  EXPECT_GE(grid_agreement(region, {0, 0}, walls, 10.0), 0.995);
}

TEST(Visibility, EnclosingBox)
{
  const std::vector<Segment> box{{{-1, -1}, {1, -1}}, {{1, -1}, {1, 1}}, {{1, 1}, {-1, 1}}, {{-1, 1}, {-1, -1}}};
  const auto region = visibility_region({0, 0}, box, 10.0);
  EXPECT_NEAR(region.area(), 4.0, 1e-6);
  EXPECT_GE(grid_agreement(region, {0, 0}, box, 10.0), 0.995);
}

TEST(Visibility, AddingOccluderNeverGrowsRegion)
{
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  std::vector<Segment> walls;
  double previous = visibility_region({0, 0}, walls, 15.0).area();
  for (int i = 0; i < 15; ++i) {
    Segment s{{u(rng), u(rng)}, {u(rng), u(rng)}};
    if (point_segment_distance({0, 0}, s) < 0.5) {
      continue;
    }
    walls.push_back(s);
    const double a = visibility_region({0, 0}, walls, 15.0).area();
    EXPECT_LE(a, previous + 1e-9);
    previous = a;
  }
}

TEST(Visibility, LineOfSight)
{
  const std::vector<Segment> walls{{{5, -5}, {5, 5}}};
  EXPECT_FALSE(line_of_sight({0, 0}, {7, 0}, walls));
  EXPECT_TRUE(line_of_sight({0, 0}, {4, 0}, walls));
  EXPECT_TRUE(line_of_sight({0, 0}, {7, 10}, walls));
}

}  // namespace
}  // namespace blindspot::geometry
