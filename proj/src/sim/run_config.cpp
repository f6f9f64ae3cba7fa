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

#include "blindspot/sim/run_config.hpp"

#include "blindspot/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace blindspot
{

namespace
{

using nlohmann::json;

void reject_unknown(const json & obj, const std::set<std::string> & allowed, const std::string & where)
{
  if (!obj.is_object()) {
    throw ParseError("config field '" + where + "': expected an object");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ParseError("config field '" + (where.empty() ? "" : where + ".") + it.key() + "': unknown key");
    }
  }
}

double as_number(const json & v, const std::string & where)
{
  if (!v.is_number()) {
    throw ParseError("config field '" + where + "': expected a number");
  }
  return v.get<double>();
}

void read_number(const json & obj, const char * key, const std::string & where, double & out)
{
  if (auto it = obj.find(key); it != obj.end()) {
    out = as_number(*it, where + "." + key);
  }
}

void read_optional(const json & obj, const char * key, std::optional<double> & out)
{
  if (auto it = obj.find(key); it != obj.end()) {
    out = it->is_null() ? std::nullopt : std::optional<double>(as_number(*it, std::string("thresholds.") + key));
  }
}

void read_list(const json & obj, const char * key, const std::string & where, std::vector<double> & out)
{
  if (auto it = obj.find(key); it != obj.end()) {
    if (!it->is_array()) {
      throw ParseError("config field '" + where + "." + key + "': expected an array");
    }
    out.clear();
    for (const auto & v : *it) {
      out.push_back(as_number(v, where + "." + key));
    }
  }
}

}  // namespace

void apply_override(json & doc, const std::string & assignment)
{
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ParseError("override '" + assignment + "': expected key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error &) {
    value = text;
  }
  json * node = &doc;
  std::stringstream ss(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) {
      throw ParseError("override '" + assignment + "': empty path component");
    }
    parts.push_back(part);
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object()) {
      *node = json::object();
    }
    node = &(*node)[parts[i]];
  }
  if (!node->is_object()) {
    *node = json::object();
  }
  (*node)[parts.back()] = value;
}

RunConfig run_config_from_json(const json & doc)
{
  RunConfig cfg;
  if (doc.is_null()) {
    return cfg;
  }
  reject_unknown(
    doc,
    {"scenario", "thresholds", "weights", "sampling", "agents", "spawn", "metrics", "occlusion_aware",
     "out", "verbosity", "profile", "dump_areas", "seed"},
    "");
  if (auto it = doc.find("scenario"); it != doc.end() && it->is_string()) {
    cfg.scenario_path = it->get<std::string>();
  }
  if (auto it = doc.find("thresholds"); it != doc.end()) {
    reject_unknown(*it, {"R_max", "H_max", "p_max", "BTN_max", "CP_max", "DCE_min", "TTC_min"}, "thresholds");
    read_optional(*it, "R_max", cfg.thresholds.r_max);
    read_optional(*it, "H_max", cfg.thresholds.h_max);
    read_optional(*it, "p_max", cfg.thresholds.p_max);
    read_optional(*it, "BTN_max", cfg.thresholds.btn_max);
    read_optional(*it, "CP_max", cfg.thresholds.cp_max);
    read_optional(*it, "DCE_min", cfg.thresholds.dce_min);
    read_optional(*it, "TTC_min", cfg.thresholds.ttc_min);
  }
  if (auto it = doc.find("weights"); it != doc.end()) {
    reject_unknown(
      *it,
      {"lateral_jerk", "longitudinal_jerk", "dist_to_reference", "velocity", "dist_to_obstacles",
       "collision_probability"},
      "weights");
    auto & w = cfg.weights;
    read_number(*it, "lateral_jerk", "weights", w.lateral_jerk);
    read_number(*it, "longitudinal_jerk", "weights", w.longitudinal_jerk);
    read_number(*it, "dist_to_reference", "weights", w.dist_to_reference);
    read_number(*it, "velocity", "weights", w.velocity);
    read_number(*it, "dist_to_obstacles", "weights", w.dist_to_obstacles);
    read_number(*it, "collision_probability", "weights", w.collision_probability);
    for (double v : {w.lateral_jerk, w.longitudinal_jerk, w.dist_to_reference, w.velocity,
                     w.dist_to_obstacles, w.collision_probability}) {
      if (v < 0.0) {
        throw InvariantError("cost weights are non-negative", std::to_string(v));
      }
    }
  }
  if (auto it = doc.find("sampling"); it != doc.end()) {
    reject_unknown(*it, {"d_end", "durations", "v_end", "v_end_fractions", "delta_max", "epsilon"}, "sampling");
    auto & s = cfg.sampling;
    read_list(*it, "d_end", "sampling", s.d_end);
    read_list(*it, "durations", "sampling", s.durations);
    read_list(*it, "v_end", "sampling", s.v_end);
    read_list(*it, "v_end_fractions", "sampling", s.v_end_fractions);
    read_number(*it, "delta_max", "sampling", s.delta_max);
    read_number(*it, "epsilon", "sampling", s.epsilon);
  }
  if (auto it = doc.find("agents"); it != doc.end()) {
    reject_unknown(*it, {"pedestrian_speed", "bicycle_speed", "vehicle_speed", "route_depth"}, "agents");
    auto & a = cfg.agents;
    read_number(*it, "pedestrian_speed", "agents", a.pedestrian_speed);
    read_number(*it, "bicycle_speed", "agents", a.bicycle_speed);
    read_number(*it, "vehicle_speed", "agents", a.vehicle_speed);
    if (auto d = it->find("route_depth"); d != it->end()) {
      a.route_depth = static_cast<int>(as_number(*d, "agents.route_depth"));
    }
    if (!(a.pedestrian_speed > 0 && a.bicycle_speed > 0 && a.vehicle_speed > 0)) {
      throw InvariantError("agent speeds are positive", "agents");
    }
  }
  if (auto it = doc.find("spawn"); it != doc.end()) {
    reject_unknown(*it, {"static_distance", "dynamic_distance", "lateral_margin", "dedup_radius"}, "spawn");
    read_number(*it, "static_distance", "spawn", cfg.spawn.static_distance);
    read_number(*it, "dynamic_distance", "spawn", cfg.spawn.dynamic_distance);
    read_number(*it, "lateral_margin", "spawn", cfg.spawn.lateral_margin);
    read_number(*it, "dedup_radius", "spawn", cfg.spawn.dedup_radius);
  }
  if (auto it = doc.find("metrics"); it != doc.end()) {
    reject_unknown(*it, {"sigma0", "sigma_rate", "a_search_max", "brake_tolerance"}, "metrics");
    read_number(*it, "sigma0", "metrics", cfg.metrics.sigma0);
    read_number(*it, "sigma_rate", "metrics", cfg.metrics.sigma_rate);
    read_number(*it, "a_search_max", "metrics", cfg.metrics.a_search_max);
    read_number(*it, "brake_tolerance", "metrics", cfg.metrics.brake_tolerance);
  }
  auto read_bool = [&](const char * key, bool & out) {
    if (auto it = doc.find(key); it != doc.end()) {
      if (!it->is_boolean()) {
        throw ParseError(std::string("config field '") + key + "': expected a boolean");
      }
      out = it->get<bool>();
    }
  };
  read_bool("occlusion_aware", cfg.occlusion_aware);
  read_bool("profile", cfg.profile);
  read_bool("dump_areas", cfg.dump_areas);
  if (auto it = doc.find("out"); it != doc.end() && it->is_string()) {
    cfg.out_dir = it->get<std::string>();
  }
  if (auto it = doc.find("verbosity"); it != doc.end()) {
    cfg.verbosity = static_cast<int>(as_number(*it, "verbosity"));
  }
  if (auto it = doc.find("seed"); it != doc.end()) {
    cfg.seed = static_cast<std::uint64_t>(as_number(*it, "seed"));
  }
  cfg.thresholds.validate();
  return cfg;
}

json load_json_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error & e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
    throw ParseError(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace blindspot
