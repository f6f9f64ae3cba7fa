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

#include "blindspot/planner/polynomial.hpp"

#include "blindspot/errors.hpp"

namespace blindspot
{

Polynomial Polynomial::quintic(
  double x0, double v0, double a0, double x1, double v1, double a1, double t_end)
{
  if (!(t_end > 0.0)) {
    throw InvariantError("polynomial duration > 0", "t_end = " + std::to_string(t_end));
  }
  Polynomial p;
  const double T = t_end;
  const double T2 = T * T;
  const double T3 = T2 * T;
  const double T4 = T3 * T;
  const double T5 = T4 * T;
  p.c_[0] = x0;
  p.c_[1] = v0;
  p.c_[2] = 0.5 * a0;
  const double r0 = x1 - x0 - v0 * T - 0.5 * a0 * T2;
  const double r1 = v1 - v0 - a0 * T;
  const double r2 = a1 - a0;
  p.c_[3] = (10.0 * r0 - 4.0 * r1 * T + 0.5 * r2 * T2) / T3;
  p.c_[4] = (-15.0 * r0 + 7.0 * r1 * T - r2 * T2) / T4;
  p.c_[5] = (6.0 * r0 - 3.0 * r1 * T + 0.5 * r2 * T2) / T5;
  return p;
}

Polynomial Polynomial::quartic(double x0, double v0, double a0, double v1, double a1, double t_end)
{
  if (!(t_end > 0.0)) {
    throw InvariantError("polynomial duration > 0", "t_end = " + std::to_string(t_end));
  }
  Polynomial p;
  const double T = t_end;
  p.c_[0] = x0;
  p.c_[1] = v0;
  p.c_[2] = 0.5 * a0;
  const double r1 = v1 - v0 - a0 * T;
  const double r2 = a1 - a0;
  p.c_[3] = (3.0 * r1 - r2 * T) / (3.0 * T * T);
  p.c_[4] = (-2.0 * r1 + r2 * T) / (4.0 * T * T * T);
  return p;
}

double Polynomial::value(double t) const
{
  return c_[0] + t * (c_[1] + t * (c_[2] + t * (c_[3] + t * (c_[4] + t * c_[5]))));
}

double Polynomial::first(double t) const
{
  return c_[1] + t * (2.0 * c_[2] + t * (3.0 * c_[3] + t * (4.0 * c_[4] + t * 5.0 * c_[5])));
}

double Polynomial::second(double t) const
{
  return 2.0 * c_[2] + t * (6.0 * c_[3] + t * (12.0 * c_[4] + t * 20.0 * c_[5]));
}

double Polynomial::third(double t) const
{
  return 6.0 * c_[3] + t * (24.0 * c_[4] + t * 60.0 * c_[5]);
}

}  // namespace blindspot
