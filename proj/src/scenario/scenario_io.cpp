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

#include "blindspot/scenario/scenario_io.hpp"

#include "blindspot/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace blindspot
{
namespace
{

using nlohmann::json;

std::string field_path(const std::string & parent, const std::string & key)
{
  return parent.empty() ? key : parent + "." + key;
}

std::string index_path(const std::string & parent, std::size_t i)
{
  return parent + "[" + std::to_string(i) + "]";
}

const json & require(const json & obj, const std::string & key, const std::string & path)
{
  if (!obj.is_object()) {
    throw ParseError("field '" + path + "': expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError("field '" + field_path(path, key) + "': missing");
  }
  return *it;
}

double number(const json & v, const std::string & path)
{
  if (!v.is_number()) {
    throw ParseError("field '" + path + "': expected a number");
  }
  return v.get<double>();
}

int integer(const json & v, const std::string & path)
{
  if (!v.is_number_integer()) {
    throw ParseError("field '" + path + "': expected an integer");
  }
  return v.get<int>();
}

double number_at(const json & obj, const std::string & key, const std::string & path)
{
  return number(require(obj, key, path), field_path(path, key));
}

std::optional<int> optional_int(const json & obj, const std::string & key, const std::string & path)
{
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    return std::nullopt;
  }
  return integer(*it, field_path(path, key));
}

const json & array(const json & v, const std::string & path)
{
  if (!v.is_array()) {
    throw ParseError("field '" + path + "': expected an array");
  }
  return v;
}

std::vector<Point> points(const json & v, const std::string & path)
{
  std::vector<Point> out;
  const auto & arr = array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = index_path(path, i);
    const auto & xy = array(arr[i], p);
    if (xy.size() != 2) {
      throw ParseError("field '" + p + "': expected [x, y]");
    }
    out.push_back({number(xy[0], p + "[0]"), number(xy[1], p + "[1]")});
  }
  return out;
}

json points_json(const std::vector<Point> & pts)
{
  json arr = json::array();
  for (const auto & p : pts) {
    arr.push_back({p.x, p.y});
  }
  return arr;
}

Lanelet parse_lanelet(const json & v, const std::string & path)
{
  Lanelet l;
  l.id = integer(require(v, "id", path), field_path(path, "id"));
  l.left = points(require(v, "left", path), field_path(path, "left"));
  l.right = points(require(v, "right", path), field_path(path, "right"));
  if (auto it = v.find("successors"); it != v.end()) {
    const auto & arr = array(*it, field_path(path, "successors"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      l.successors.push_back(integer(arr[i], index_path(field_path(path, "successors"), i)));
    }
  }
  l.adjacent_left = optional_int(v, "adj_left", path);
  l.adjacent_right = optional_int(v, "adj_right", path);
  if (auto it = v.find("speed_limit"); it != v.end() && !it->is_null()) {
    l.speed_limit = number(*it, field_path(path, "speed_limit"));
  }
  return l;
}

DynamicObstacle parse_dynamic(const json & v, const std::string & path)
{
  DynamicObstacle o;
  o.id = integer(require(v, "id", path), field_path(path, "id"));
  const auto & kind = require(v, "kind", path);
  if (!kind.is_string()) {
    throw ParseError("field '" + field_path(path, "kind") + "': expected a string");
  }
  try {
    o.kind = obstacle_kind_from_string(kind.get<std::string>());
  } catch (const ParseError & e) {
    throw ParseError("field '" + field_path(path, "kind") + "': " + e.what());
  }
  const std::string sp = field_path(path, "shape");
  const auto & shape = require(v, "shape", path);
  if (shape.contains("radius")) {
    const double r = number_at(shape, "radius", sp);
    if (!(r > 0.0)) {
      throw InvariantError("shape dimensions positive", sp + ".radius");
    }
    o.shape = geometry::Shape::disc(r);
  } else {
    const double l = number_at(shape, "length", sp);
    const double w = number_at(shape, "width", sp);
    if (!(l > 0.0 && w > 0.0)) {
      throw InvariantError("shape dimensions positive", sp);
    }
    o.shape = geometry::Shape::rectangle(l, w);
  }
  const std::string st = field_path(path, "states");
  const auto & states = array(require(v, "states", path), st);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string p = index_path(st, i);
    o.states.push_back(
      {number_at(states[i], "t", p), number_at(states[i], "x", p), number_at(states[i], "y", p),
       number_at(states[i], "theta", p), number_at(states[i], "v", p)});
  }
  return o;
}

std::size_t line_of_offset(const std::string & text, std::size_t byte)
{
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

Scenario scenario_from_json(const json & doc)
{
  if (!doc.is_object()) {
    throw ParseError("field '<root>': expected an object");
  }
  Scenario sc;
  const auto & meta = require(doc, "meta", "");
  if (auto it = meta.find("name"); it != meta.end() && it->is_string()) {
    sc.name = it->get<std::string>();
  }
  sc.dt = number_at(meta, "dt", "meta");
  sc.horizon_steps = integer(require(meta, "horizon_steps", "meta"), "meta.horizon_steps");

  std::vector<Lanelet> lanelets;
  const auto & ls = array(require(doc, "lanelets", ""), "lanelets");
  for (std::size_t i = 0; i < ls.size(); ++i) {
    lanelets.push_back(parse_lanelet(ls[i], index_path("lanelets", i)));
  }
  sc.network = LaneletNetwork(std::move(lanelets));

  if (auto it = doc.find("static_obstacles"); it != doc.end()) {
    const auto & arr = array(*it, "static_obstacles");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = index_path("static_obstacles", i);
      StaticObstacle o;
      o.id = integer(require(arr[i], "id", p), p + ".id");
      Polygon poly;
      poly.outer = points(require(arr[i], "polygon", p), p + ".polygon");
      o.footprint = geometry::normalized(std::move(poly));
      sc.static_obstacles.push_back(std::move(o));
    }
  }
  if (auto it = doc.find("dynamic_obstacles"); it != doc.end()) {
    const auto & arr = array(*it, "dynamic_obstacles");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      sc.dynamic_obstacles.push_back(parse_dynamic(arr[i], index_path("dynamic_obstacles", i)));
    }
  }

  const auto & ego = require(doc, "ego", "");
  const auto & init = require(ego, "initial", "ego");
  sc.ego_initial.x = number_at(init, "x", "ego.initial");
  sc.ego_initial.y = number_at(init, "y", "ego.initial");
  sc.ego_initial.theta = number_at(init, "theta", "ego.initial");
  sc.ego_initial.v = number_at(init, "v", "ego.initial");
  const auto & params = require(ego, "params", "ego");
  auto & p = sc.ego_params;
  p.length = number_at(params, "length", "ego.params");
  p.width = number_at(params, "width", "ego.params");
  p.wheelbase = number_at(params, "wheelbase", "ego.params");
  p.sensor_range = number_at(params, "sensor_range", "ego.params");
  p.a_max = number_at(params, "a_max", "ego.params");
  p.v_max = number_at(params, "v_max", "ego.params");
  sc.reference_path = points(require(ego, "reference_path", "ego"), "ego.reference_path");
  sc.goal_s = number_at(ego, "goal_s", "ego");

  finalize(sc);
  return sc;
}

Scenario parse_scenario(const std::string & text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error & e) {
    throw ParseError(
      "line " + std::to_string(line_of_offset(text, e.byte)) + ": " + std::string(e.what()));
  }
  return scenario_from_json(doc);
}

Scenario load_scenario(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

json to_json(const Polygon & polygon)
{
  json out;
  out["outer"] = points_json(polygon.outer);
  json holes = json::array();
  for (const auto & h : polygon.holes) {
    holes.push_back(points_json(h));
  }
  out["holes"] = holes;
  return out;
}

json to_json(const Scenario & sc)
{
  json doc;
  doc["meta"] = {{"name", sc.name}, {"dt", sc.dt}, {"horizon_steps", sc.horizon_steps}};
  json ls = json::array();
  for (const auto & l : sc.network.lanelets()) {
    json j;
    j["id"] = l.id;
    j["left"] = points_json(l.left);
    j["right"] = points_json(l.right);
    j["successors"] = l.successors;
    j["adj_left"] = l.adjacent_left ? json(*l.adjacent_left) : json(nullptr);
    j["adj_right"] = l.adjacent_right ? json(*l.adjacent_right) : json(nullptr);
    j["speed_limit"] = l.speed_limit ? json(*l.speed_limit) : json(nullptr);
    ls.push_back(j);
  }
  doc["lanelets"] = ls;
  json so = json::array();
  for (const auto & o : sc.static_obstacles) {
    so.push_back({{"id", o.id}, {"polygon", points_json(o.footprint.outer)}});
  }
  doc["static_obstacles"] = so;
  json dyn = json::array();
  for (const auto & o : sc.dynamic_obstacles) {
    json j;
    j["id"] = o.id;
    j["kind"] = to_string(o.kind);
    if (o.shape.type() == geometry::Shape::Type::Disc) {
      j["shape"] = {{"radius", o.shape.radius()}};
    } else {
      j["shape"] = {{"length", o.shape.length()}, {"width", o.shape.width()}};
    }
    json states = json::array();
    for (const auto & s : o.states) {
      states.push_back({{"t", s.t}, {"x", s.x}, {"y", s.y}, {"theta", s.theta}, {"v", s.v}});
    }
    j["states"] = states;
    dyn.push_back(j);
  }
  doc["dynamic_obstacles"] = dyn;
  const auto & e = sc.ego_initial;
  const auto & p = sc.ego_params;
  doc["ego"] = {
    {"initial", {{"x", e.x}, {"y", e.y}, {"theta", e.theta}, {"v", e.v}}},
    {"params",
     {{"length", p.length},
      {"width", p.width},
      {"wheelbase", p.wheelbase},
      {"sensor_range", p.sensor_range},
      {"a_max", p.a_max},
      {"v_max", p.v_max}}},
    {"reference_path", points_json(sc.reference_path)},
    {"goal_s", sc.goal_s}};
  return doc;
}

}  // namespace blindspot
