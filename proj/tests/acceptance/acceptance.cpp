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
#include "blindspot/metrics/criticality.hpp"
#include "blindspot/oracles/suites.hpp"
#include "blindspot/planner/frenet_planner.hpp"
#include "blindspot/prediction/phantom_prediction.hpp"
#include "blindspot/scenario/scenario_io.hpp"
#include "blindspot/sensor/sensor_model.hpp"
#include "blindspot/sim/simulator.hpp"
#include "blindspot/spawn/spawn_identifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using namespace blindspot;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 0;
constexpr double kVisibilitySeconds = 5.0;
constexpr double kSpawnSeconds = 10.0;
constexpr double kPredictionSeconds = 5.0;
constexpr double kMetricsSeconds = 60.0;
constexpr double kBehaviourSeconds = 120.0;
constexpr double kMetricBudgetMs = 100.0;
constexpr double kStepBudgetMs = 500.0;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v)
{
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

std::string fixture(const std::string & name)
{
  return std::string(BLINDSPOT_FIXTURE_DIR) + "/" + name + ".json";
}

struct Line
{
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(int id, const std::string & name, bool pass, const std::string & detail)
{
  lines.push_back({id, name, pass, detail});
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": " << detail << std::endl;
}

std::string suite_detail(const oracles::SuiteReport & r)
{
  std::string out = r.summary;
  if (!r.failures.empty()) {
    out += "; first failure: " + r.failures.front();
  }
  return out;
}

void criterion_visibility()
{
  bool pass = true;
  double slowest = 0.0;
  std::string detail;
  for (const auto & path : oracles::default_fixtures()) {
    const auto t0 = Clock::now();
    const auto r = oracles::visibility_suite({path}, kSeed, 10000);
    const double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    if (!r.pass || dt >= kVisibilitySeconds) {
      pass = false;
      detail += std::filesystem::path(path).stem().string() + " (" + fmt(dt) + " s) " + suite_detail(r) + "; ";
    }
  }
  if (pass) {
    detail = "all fixtures: partition within 1e-6 m^2, grid agreement >= 99.5% at 10^4 points, slowest fixture " +
             fmt(slowest) + " s";
  }
  report(1, "visibility partition", pass, detail);
}

void criterion_suite(
  int id, const std::string & name, double budget, const std::function<oracles::SuiteReport()> & fn)
{
  const auto t0 = Clock::now();
  const auto r = fn();
  const double dt = seconds_since(t0);
  report(id, name, r.pass && dt < budget, suite_detail(r) + "; " + fmt(dt) + " s (budget " + fmt(budget) + " s)");
}

struct Run
{
  std::string label;
  RunResult result;
};

RunResult run_with(const Scenario & sc, const ThresholdConfig & th, bool occlusion_aware = true, bool profile = false)
{
  RunConfig cfg;
  cfg.thresholds = th;
  cfg.occlusion_aware = occlusion_aware;
  cfg.profile = profile;
  return run(sc, cfg);
}

ThresholdConfig single(const std::string & key, double v)
{
  ThresholdConfig th;
  if (key == "R_max") {
    th.r_max = v;
  } else if (key == "H_max") {
    th.h_max = v;
  } else if (key == "BTN_max") {
    th.btn_max = v;
  } else if (key == "DCE_min") {
    th.dce_min = v;
  }
  return th;
}

struct Sweep
{
  std::string key;
  std::vector<double> values;
};

struct ScenarioStudy
{
  std::string name;
  std::vector<Sweep> sweeps;
  std::string strict_key;
  double strict_value;
  RunResult baseline;
  std::map<std::string, RunResult> runs;
  std::vector<std::pair<ThresholdConfig, const RunResult *>> thresholded;
};

std::string label(const std::string & key, double v) { return key + "=" + fmt(v); }

std::optional<double> onset_s(const RunResult & r)
{
  if (r.steps.empty()) {
    return std::nullopt;
  }
  const double v0 = r.steps.front().v;
  for (const auto & s : r.steps) {
    if (s.v < 0.95 * v0) {
      return s.s;
    }
  }
  return std::nullopt;
}

std::string behaviour(ScenarioStudy & st, bool & pass)
{
  const auto sc = load_scenario(fixture(st.name));
  st.baseline = run_with(sc, ThresholdConfig{});
  std::ostringstream out;
  const bool a = st.baseline.collision;
  out << st.name << ": baseline collision=" << (a ? "yes" : "no");
  if (st.baseline.collision_obstacle_id) {
    out << " (obstacle " << *st.baseline.collision_obstacle_id << ")";
  }
  bool c = true;
  std::vector<std::string> avoided;
  for (const auto & sw : st.sweeps) {
    out << "; " << sw.key << " {";
    double previous = INFINITY;
    for (std::size_t i = 0; i < sw.values.size(); ++i) {
      const auto th = single(sw.key, sw.values[i]);
      auto & res = st.runs[label(sw.key, sw.values[i])] = run_with(sc, th);
      st.thresholded.emplace_back(th, &st.runs[label(sw.key, sw.values[i])]);
      const double mv = res.min_velocity.value_or(0.0);
      out << (i ? ", " : "") << fmt(sw.values[i]) << ":" << fmt(mv) << (res.collision ? "x" : "");
      if (!(mv <= previous + 1e-9)) {
        c = false;
      }
      previous = mv;
      if (!res.collision) {
        avoided.push_back(label(sw.key, sw.values[i]));
      }
    }
    out << "}";
  }
  const auto strict = st.runs.find(label(st.strict_key, st.strict_value));
  const bool b = strict != st.runs.end() && !strict->second.collision;
  out << "; strict " << label(st.strict_key, st.strict_value) << " collision=" << (b ? "no" : "yes")
      << "; min_velocity monotone=" << (c ? "yes" : "no");
  pass = a && b && c;
  return out.str();
}

void criterion_behaviour(ScenarioStudy & s1, ScenarioStudy & s4)
{
  const auto t0 = Clock::now();
  bool p1 = false;
  bool p4 = false;
  const auto d1 = behaviour(s1, p1);
  const auto d4 = behaviour(s4, p4);
  const double dt = seconds_since(t0);
  report(5, "threshold pattern", p1 && p4 && dt < kBehaviourSeconds, d1 + " | " + d4 + " | " + fmt(dt) + " s");
}

void criterion_onset(const ScenarioStudy & s1, const ScenarioStudy & s4)
{
  bool pass = true;
  std::ostringstream out;
  for (const auto * st : {&s1, &s4}) {
    const auto base = onset_s(st->baseline);
    const auto & strict = st->runs.at(label("R_max", 0.01));
    const auto lim = onset_s(strict);
    const bool ok = lim && (!base || *lim < *base);
    pass = pass && ok;
    out << st->name << ": onset s no-limits=" << (base ? fmt(*base) : "none")
        << " R_max=0.01 " << (lim ? fmt(*lim) : "none") << "; ";
  }
  report(6, "earlier deceleration", pass, out.str());
}

void criterion_funnel(const ScenarioStudy & s1, const ScenarioStudy & s4)
{
  int steps = 0;
  int fallbacks = 0;
  int bad = 0;
  for (const auto * st : {&s1, &s4}) {
    for (const auto & [th, res] : st->thresholded) {
      for (const auto & rec : res->steps) {
        ++steps;
        CriticalityReport rep;
        rep.r = rec.r;
        rep.h = rec.h;
        rep.cp = rec.p;
        rep.btn = rec.btn;
        rep.dce = rec.dce;
        rep.ttc = rec.ttc;
        const bool ok = assess(rep, th).valid;
        fallbacks += rec.fallback ? 1 : 0;
        if (!ok && !rec.fallback) {
          ++bad;
        }
      }
    }
  }
  int mismatched = 0;
  int compared = 0;
  for (const auto * st : {&s1, &s4}) {
    const auto sc = load_scenario(fixture(st->name));
    const auto plain = run_with(sc, ThresholdConfig{}, false);
    const auto & aware = st->baseline;
    if (plain.steps.size() != aware.steps.size()) {
      ++mismatched;
      continue;
    }
    for (std::size_t i = 0; i < plain.steps.size(); ++i) {
      ++compared;
      const auto & a = plain.steps[i];
      const auto & b = aware.steps[i];
      if (a.chosen_sample != b.chosen_sample || a.x != b.x || a.y != b.y || a.v != b.v) {
        ++mismatched;
      }
    }
  }
  report(
    7, "funnel soundness", bad == 0 && mismatched == 0,
    std::to_string(steps) + " thresholded steps re-assessed, " + std::to_string(bad) +
      " invalid without fallback (" + std::to_string(fallbacks) + " fallback steps); empty thresholds vs baseline planner: " +
      std::to_string(compared) + " steps compared, " + std::to_string(mismatched) + " mismatches");
}

std::string read_file(const std::filesystem::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_determinism()
{
  const auto sc = load_scenario(fixture("scenario1_left_turn"));
  const auto base = std::filesystem::temp_directory_path() / "blindspot_acceptance";
  std::filesystem::remove_all(base);
  std::vector<std::string> csv;
  for (const char * tag : {"a", "b"}) {
    RunConfig cfg;
    cfg.thresholds.r_max = 0.01;
    cfg.out_dir = (base / tag).string();
    emit_outputs(run(sc, cfg), cfg);
    csv.push_back(read_file(base / tag / "steps.csv"));
  }
  const bool same = csv[0] == csv[1] && !csv[0].empty();
  std::filesystem::remove_all(base);
  report(8, "determinism", same, "steps.csv " + std::to_string(csv[0].size()) + " bytes, identical=" + (same ? "yes" : "no"));
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void criterion_performance()
{
  const auto sc = load_scenario(fixture("scenario4_parked_cars"));
  const auto & ego = sc.ego_initial;
  const auto snap = compute_visibility(sc, ego, 0);
  const auto sps = identify_spawn_points(sc, ego, snap);
  const SamplingConfig sampling;
  const int steps = sampling.horizon_steps(sc.dt);
  auto agents = predict_agents(sps, sc, steps);
  std::string detail;
  bool pass = true;
  if (agents.size() < 2) {
    pass = false;
    detail = "fewer than 2 phantom agents available; ";
  } else {
    agents.resize(2);
    const auto trajs = sample_trajectories(
      frenet_state(ego, sc.reference_frame()), sampling, sc.reference_frame(), sc.dt, steps, target_speed(sc, ego));
    std::vector<double> ms;
    for (const auto & t : trajs) {
      const auto t0 = Clock::now();
      const auto rep = evaluate(t, sc.ego_params, agents);
      ms.push_back(1e3 * seconds_since(t0));
      (void)rep;
    }
    const double m = median(ms);
    pass = m < kMetricBudgetMs;
    detail = "metric evaluation vs 2 agents median " + fmt(m) + " ms over " + std::to_string(ms.size()) + " trajectories; ";
  }
  for (const auto & [name, th] :
       std::vector<std::pair<std::string, ThresholdConfig>>{{"scenario1_left_turn", single("R_max", 0.01)}, {"scenario4_parked_cars", ThresholdConfig{}}}) {
    const auto res = run_with(load_scenario(fixture(name)), th, true, true);
    const auto it = res.profile.find("simulation_step");
    const double m = it == res.profile.end() ? INFINITY : it->second.median;
    pass = pass && m < kStepBudgetMs;
    detail += name + " pipeline step median " + fmt(m) + " ms; ";
  }
  report(9, "performance envelope", pass, detail);
}

}  // namespace

int main()
{
  const auto t0 = Clock::now();
  const auto fixtures = oracles::default_fixtures();
  criterion_visibility();
  criterion_suite(2, "spawn validity", kSpawnSeconds, [] { return oracles::spawn_suite(50, kSeed); });
  criterion_suite(3, "prediction contracts", kPredictionSeconds, [&] { return oracles::prediction_suite(fixtures, 100, kSeed); });
  criterion_suite(4, "metric oracles", kMetricsSeconds, [&] { return oracles::metrics_suite(fixtures, kSeed, 1000000); });

  ScenarioStudy s1{"scenario1_left_turn",
                   {{"R_max", {0.1, 0.03, 0.01}}, {"H_max", {0.5, 0.3, 0.1}}, {"DCE_min", {0.5, 1.0, 2.0}}, {"BTN_max", {0.5, 0.3, 0.2}}},
                   "DCE_min",
                   2.0,
                   {},
                   {},
                   {}};
  ScenarioStudy s4{"scenario4_parked_cars",
                   {{"R_max", {0.1, 0.03, 0.01}}, {"H_max", {0.1, 0.06, 0.04}}, {"DCE_min", {0.5, 1.0, 2.0}}, {"BTN_max", {0.5, 0.3, 0.2}}},
                   "H_max",
                   0.1,
                   {},
                   {},
                   {}};
  criterion_behaviour(s1, s4);
  criterion_onset(s1, s4);
  criterion_funnel(s1, s4);
  criterion_determinism();
  criterion_performance();

  const auto failed = std::count_if(lines.begin(), lines.end(), [](const Line & l) { return !l.pass; });
  std::cout << (failed ? "FAIL" : "PASS") << " acceptance: " << lines.size() - failed << "/" << lines.size()
            << " criteria passed in " << fmt(seconds_since(t0)) << " s" << std::endl;
  return failed ? 1 : 0;
}
