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

#include "blindspot/assessment/safety_assessor.hpp"

#include "blindspot/errors.hpp"

#include <cmath>

namespace blindspot
{

bool ThresholdConfig::empty() const
{
  return !r_max && !h_max && !p_max && !btn_max && !cp_max && !dce_min && !ttc_min;
}

void ThresholdConfig::validate() const
{
  auto check_max = [](const std::optional<double> & v, const char * name) {
    if (v && !(*v > 0.0 && std::isfinite(*v))) {
      throw InvariantError("maxima lie in (0, inf)", std::string(name) + " = " + std::to_string(*v));
    }
  };
  auto check_min = [](const std::optional<double> & v, const char * name) {
    if (v && !(*v >= 0.0 && std::isfinite(*v))) {
      throw InvariantError("minima are >= 0", std::string(name) + " = " + std::to_string(*v));
    }
  };
  check_max(r_max, "R_max");
  check_max(h_max, "H_max");
  check_max(p_max, "p_max");
  check_max(btn_max, "BTN_max");
  check_max(cp_max, "CP_max");
  check_min(dce_min, "DCE_min");
  check_min(ttc_min, "TTC_min");
}

Verdict assess(const CriticalityReport & report, const ThresholdConfig & cfg)
{
  Verdict v;
  auto upper = [&](const std::optional<double> & bound, double value, const char * name) {
    if (bound && !(value < *bound)) {
      v.violations.push_back({name, value, *bound});
    }
  };
  auto lower = [&](const std::optional<double> & bound, const std::optional<double> & value, const char * name) {
    if (bound && value && !(*value > *bound)) {
      v.violations.push_back({name, *value, *bound});
    }
  };
  upper(cfg.r_max, report.r, "R");
  upper(cfg.h_max, report.h, "H");
  upper(cfg.p_max, report.cp, "p");
  upper(cfg.btn_max, report.btn, "BTN");
  upper(cfg.cp_max, report.cp, "CP");
  lower(cfg.dce_min, report.dce, "DCE");
  lower(cfg.ttc_min, report.ttc, "TTC");
  v.valid = v.violations.empty();
  return v;
}

}  // namespace blindspot
