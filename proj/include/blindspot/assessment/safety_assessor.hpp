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

#ifndef BLINDSPOT__ASSESSMENT__SAFETY_ASSESSOR_HPP_
#define BLINDSPOT__ASSESSMENT__SAFETY_ASSESSOR_HPP_

#include "blindspot/metrics/criticality.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blindspot
{

/// Absent bounds are unrestricted.
struct ThresholdConfig
{
  std::optional<double> r_max;
  std::optional<double> h_max;
  std::optional<double> p_max;
  std::optional<double> btn_max;
  std::optional<double> cp_max;
  std::optional<double> dce_min;
  std::optional<double> ttc_min;

  bool empty() const;
  /// Throws InvariantError for a maximum outside (0, inf) or a negative minimum.
  void validate() const;
};

struct Violation
{
  std::string metric;
  double value{0.0};
  double bound{0.0};
};

struct Verdict
{
  bool valid{true};
  std::vector<Violation> violations;
};

/// Strict comparison: every maximum must exceed its metric and every minimum
/// must lie below it. An absent TTC or DCE satisfies its minimum.
Verdict assess(const CriticalityReport & report, const ThresholdConfig & cfg);

}  // namespace blindspot

#endif  // BLINDSPOT__ASSESSMENT__SAFETY_ASSESSOR_HPP_
