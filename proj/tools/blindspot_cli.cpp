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
#include "blindspot/oracles/suites.hpp"
#include "blindspot/scenario/scenario_io.hpp"
#include "blindspot/sim/run_config.hpp"
#include "blindspot/sim/simulator.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using blindspot::RunConfig;
using nlohmann::json;

constexpr int kExitConfig = 1;
constexpr int kExitInternal = 2;

std::vector<std::string> split(const std::string & text, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    out.push_back(item);
  }
  return out;
}

void print_summary(const blindspot::RunResult & r, std::ostream & os)
{
  os << "scenario=" << r.scenario << " steps=" << r.steps.size()
     << " collision=" << (r.collision ? "yes" : "no");
  if (r.collision_obstacle_id) {
    os << " obstacle=" << *r.collision_obstacle_id << " at_step=" << *r.collision_step;
  }
  os << " goal_reached=" << (r.goal_reached ? "yes" : "no") << " min_velocity=";
  if (r.min_velocity) {
    os << *r.min_velocity;
  } else {
    os << "none";
  }
  os << "\n";
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"blindspot: occlusion-aware trajectory safety simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  bool profile = false;
  bool dump_areas = false;
  std::uint64_t seed = 0;
  std::string matrix;
  auto * run_cmd = app.add_subcommand("run", "run a scenario closed-loop");
  run_cmd->add_option("--scenario", scenario_path, "scenario JSON")->required();
  run_cmd->add_option("--config", config_path, "run config JSON");
  run_cmd->add_option("--set", overrides, "override key=value (dotted path)");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_flag("--profile", profile, "record per-function runtimes");
  run_cmd->add_flag("--dump-areas", dump_areas, "write visibility polygons per step");
  run_cmd->add_option("--seed", seed, "seed for Monte-Carlo oracles");
  run_cmd->add_option("--matrix", matrix, "sweep one key over values: key=v1,v2,...");

  std::string validate_path;
  auto * validate_cmd = app.add_subcommand("validate", "check a scenario against schema and invariants");
  validate_cmd->add_option("--scenario", validate_path, "scenario JSON")->required();

  std::string oracle_name;
  std::string oracle_scenario;
  std::uint64_t oracle_seed = 0;
  auto * oracle_cmd = app.add_subcommand("oracle", "run a named brute-force oracle suite");
  oracle_cmd->add_option("name", oracle_name, "suite name")
    ->required()
    ->check(CLI::IsMember(blindspot::oracles::suite_names()));
  oracle_cmd->add_option("--scenario", oracle_scenario, "fixture for scenario-based suites");
  oracle_cmd->add_option("--seed", oracle_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*validate_cmd) {
      const auto sc = blindspot::load_scenario(validate_path);
      std::cout << "ok: " << sc.name << " lanelets=" << sc.network.lanelets().size()
                << " static=" << sc.static_obstacles.size()
                << " dynamic=" << sc.dynamic_obstacles.size() << "\n";
      return 0;
    }
    if (*oracle_cmd) {
      const bool pass =
        blindspot::oracles::run_suite(oracle_name, oracle_scenario, oracle_seed, std::cout);
      return pass ? 0 : kExitInternal;
    }

    json doc = config_path.empty() ? json::object() : blindspot::load_json_file(config_path);
    for (const auto & o : overrides) {
      blindspot::apply_override(doc, o);
    }
    if (profile) {
      doc["profile"] = true;
    }
    if (dump_areas) {
      doc["dump_areas"] = true;
    }
    if (!out_dir.empty()) {
      doc["out"] = out_dir;
    }
    if (run_cmd->count("--seed")) {
      doc["seed"] = seed;
    }
    doc.erase("scenario");
    const auto scenario = blindspot::load_scenario(scenario_path);

    if (matrix.empty()) {
      RunConfig cfg = blindspot::run_config_from_json(doc);
      cfg.scenario_path = scenario_path;
      const auto result = blindspot::run(scenario, cfg);
      blindspot::emit_outputs(result, cfg);
      print_summary(result, std::cout);
      return 0;
    }

    const auto eq = matrix.find('=');
    if (eq == std::string::npos) {
      throw blindspot::ParseError("--matrix expects key=v1,v2,...");
    }
    const std::string key = matrix.substr(0, eq);
    const std::string base_out = doc.value("out", std::string("out"));
    std::ostringstream table;
    table << "value,collision,min_velocity,steps\n";
    for (const auto & value : split(matrix.substr(eq + 1), ',')) {
      json d = doc;
      blindspot::apply_override(d, key + "=" + value);
      d["out"] = (std::filesystem::path(base_out) / (key + "=" + value)).string();
      RunConfig cfg = blindspot::run_config_from_json(d);
      cfg.scenario_path = scenario_path;
      const auto result = blindspot::run(scenario, cfg);
      blindspot::emit_outputs(result, cfg);
      std::cout << key << "=" << value << ": ";
      print_summary(result, std::cout);
      table << value << ',' << (result.collision ? 1 : 0) << ','
            << (result.min_velocity ? std::to_string(*result.min_velocity) : std::string()) << ','
            << result.steps.size() << "\n";
    }
    std::filesystem::create_directories(base_out);
    std::ofstream(std::filesystem::path(base_out) / "matrix.csv") << table.str();
    return 0;
  } catch (const blindspot::ParseError & e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const blindspot::InvariantError & e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception & e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
