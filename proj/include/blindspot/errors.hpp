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

#ifndef BLINDSPOT__ERRORS_HPP_
#define BLINDSPOT__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace blindspot
{

/// Root of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Self-intersecting or otherwise unusable polygon input.
class DegenerateGeometryError : public Error
{
public:
  using Error::Error;
};

/// Point or arc length outside the domain of a curvilinear frame.
class OutOfDomainError : public Error
{
public:
  using Error::Error;
};

/// Scenario or config text that does not parse under the schema.
class ParseError : public Error
{
public:
  using Error::Error;
};

/// Parsed data that violates a type invariant. `invariant()` names it.
class InvariantError : public Error
{
public:
  InvariantError(std::string invariant, const std::string & detail)
  : Error(invariant + ": " + detail), invariant_(std::move(invariant))
  {
  }

  const std::string & invariant() const noexcept { return invariant_; }

private:
  std::string invariant_;
};

/// Index outside a recorded range (timestep, lanelet id, ...).
class OutOfRangeError : public Error
{
public:
  using Error::Error;
};

/// Spawn point that cannot host the requested agent kind.
class PlacementError : public Error
{
public:
  using Error::Error;
};

/// The evaluation funnel found no candidate that passes every gate.
class PlanningExhaustedError : public Error
{
public:
  using Error::Error;
};

}  // namespace blindspot

#endif  // BLINDSPOT__ERRORS_HPP_
