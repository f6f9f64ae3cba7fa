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

#ifndef BLINDSPOT__PLANNER__POLYNOMIAL_HPP_
#define BLINDSPOT__PLANNER__POLYNOMIAL_HPP_

#include <array>

namespace blindspot
{

/// x(t) = sum c_i t^i with derivatives up to jerk.
class Polynomial
{
public:
  /// Quintic matching (x, x', x'') at 0 and at t_end.
  static Polynomial quintic(
    double x0, double v0, double a0, double x1, double v1, double a1, double t_end);
  /// Quartic matching (x, x', x'') at 0 and (x', x'') at t_end.
  static Polynomial quartic(double x0, double v0, double a0, double v1, double a1, double t_end);

  double value(double t) const;
  double first(double t) const;
  double second(double t) const;
  double third(double t) const;
  const std::array<double, 6> & coefficients() const { return c_; }

private:
  std::array<double, 6> c_{};
};

}  // namespace blindspot

#endif  // BLINDSPOT__PLANNER__POLYNOMIAL_HPP_
