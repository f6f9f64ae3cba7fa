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

#include "blindspot/geometry/curvilinear.hpp"

#include "blindspot/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace blindspot::geometry
{

CurvilinearFrame::CurvilinearFrame(std::vector<Point> path, double half_width)
: path_(std::move(path)), half_width_(half_width)
{
  if (path_.size() < 2) {
    throw InvariantError("reference path has >= 2 points", "got " + std::to_string(path_.size()));
  }
  arc_.resize(path_.size());
  arc_[0] = 0.0;
  std::vector<Point> seg_normals(path_.size() - 1);
  for (std::size_t i = 0; i + 1 < path_.size(); ++i) {
    const double len = distance(path_[i], path_[i + 1]);
    if (!(len > 1e-9)) {
      throw InvariantError(
        "arc length strictly increasing", "zero-length segment at index " + std::to_string(i));
    }
    arc_[i + 1] = arc_[i] + len;
    seg_normals[i] = perp(unit(path_[i + 1] - path_[i]));
  }
  vertex_normals_.resize(path_.size());
  vertex_normals_.front() = seg_normals.front();
  vertex_normals_.back() = seg_normals.back();
  for (std::size_t i = 1; i + 1 < path_.size(); ++i) {
    const Point bis = seg_normals[i - 1] + seg_normals[i];
    vertex_normals_[i] = norm(bis) > 1e-9 ? unit(bis) : seg_normals[i];
  }
}

Point CurvilinearFrame::interpolated_normal(std::size_t segment, double lambda) const
{
  return unit((1.0 - lambda) * vertex_normals_[segment] + lambda * vertex_normals_[segment + 1]);
}

CurvilinearFrame::Locator CurvilinearFrame::locate(double s) const
{
  auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
  std::size_t seg = it == arc_.begin() ? 0 : static_cast<std::size_t>(it - arc_.begin()) - 1;
  seg = std::min(seg, path_.size() - 2);
  const double len = arc_[seg + 1] - arc_[seg];
  return {seg, std::clamp((s - arc_[seg]) / len, 0.0, 1.0)};
}

FrenetPoint CurvilinearFrame::to_curvilinear(const Point & p) const
{
  constexpr double lambda_tol = 1e-9;
  bool found = false;
  FrenetPoint best{};
  for (std::size_t i = 0; i + 1 < path_.size(); ++i) {
    const Point & p0 = path_[i];
    const Point dir = path_[i + 1] - p0;
    if (point_segment_distance(p, {p0, path_[i + 1]}) > half_width_) {
      continue;
    }
    const Point n0 = vertex_normals_[i];
    const Point dn = vertex_normals_[i + 1] - n0;
    const Point w = p - p0;
    // cross(w - l * dir, n0 + l * dn) = 0
    const double qa = -cross(dir, dn);
    const double qb = cross(w, dn) - cross(dir, n0);
    const double qc = cross(w, n0);
    std::array<double, 2> roots{};
    int n_roots = 0;
    if (std::abs(qa) < 1e-12 * std::max(1.0, std::abs(qb))) {
      if (std::abs(qb) > 0.0) {
        roots[n_roots++] = -qc / qb;
      }
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        // numerically stable pair
        const double q = -0.5 * (qb + std::copysign(sq, qb));
        roots[n_roots++] = q / qa;
        if (q != 0.0) {
          roots[n_roots++] = qc / q;
        }
      }
    }
    for (int r = 0; r < n_roots; ++r) {
      double lambda = roots[r];
      if (lambda < -lambda_tol || lambda > 1.0 + lambda_tol) {
        continue;
      }
      lambda = std::clamp(lambda, 0.0, 1.0);
      const Point foot = p0 + lambda * dir;
      const Point n = interpolated_normal(i, lambda);
      const double d = dot(p - foot, n);
      if (std::abs(d) > half_width_) {
        continue;
      }
      const double s = arc_[i] + lambda * (arc_[i + 1] - arc_[i]);
      const bool better = !found || std::abs(d) < std::abs(best.d) - 1e-12 ||
                          (std::abs(std::abs(d) - std::abs(best.d)) <= 1e-12 && s < best.s);
      if (better) {
        best = {s, d};
        found = true;
      }
    }
  }
  if (!found) {
    throw OutOfDomainError(
      "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
      ") has no projection onto the reference path");
  }
  return best;
}

Point CurvilinearFrame::from_curvilinear(double s, double d) const
{
  if (s < -1e-9 || s > length() + 1e-9) {
    throw OutOfDomainError(
      "s = " + std::to_string(s) + " outside [0, " + std::to_string(length()) + "]");
  }
  const auto [seg, lambda] = locate(s);
  const Point foot = path_[seg] + lambda * (path_[seg + 1] - path_[seg]);
  return foot + d * interpolated_normal(seg, lambda);
}

Point CurvilinearFrame::from_curvilinear_extended(double s, double d) const
{
  if (s < 0.0) {
    const Point t = unit(path_[1] - path_[0]);
    return path_.front() + s * t + d * vertex_normals_.front();
  }
  if (s > length()) {
    const std::size_t n = path_.size();
    const Point t = unit(path_[n - 1] - path_[n - 2]);
    return path_.back() + (s - length()) * t + d * vertex_normals_.back();
  }
  return from_curvilinear(s, d);
}

Point CurvilinearFrame::normal(double s) const
{
  const auto [seg, lambda] = locate(s);
  return interpolated_normal(seg, lambda);
}

Point CurvilinearFrame::tangent(double s) const
{
  const Point n = normal(s);
  return {n.y, -n.x};
}

Point CurvilinearFrame::segment_tangent(double s) const
{
  const auto loc = locate(s);
  return unit(path_[loc.segment + 1] - path_[loc.segment]);
}

double CurvilinearFrame::heading(double s) const
{
  const Point t = tangent(s);
  return std::atan2(t.y, t.x);
}

}  // namespace blindspot::geometry
