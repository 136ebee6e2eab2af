#include "vts/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vts/errors.hpp"

namespace vts {

namespace {

using nlohmann::json;

std::string join_lines(const std::vector<std::string>& items) {
  std::string out = "scenario validation failed:";
  for (const auto& s : items) out += "\n  - " + s;
  return out;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

double number_at(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

int int_at(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

const json& array_at(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_array()) throw ParseError(std::string(key) + ": expected an array");
  return v;
}

std::string path_of(const char* list, std::size_t idx) {
  return std::string(list) + "[" + std::to_string(idx) + "]";
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_lines(violations)), violations_(std::move(violations)) {}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> out;

  for (std::size_t i = 0; i < s.pursuers.size(); ++i) {
    const auto& p = s.pursuers[i];
    if (!p.position.finite()) out.push_back(path_of("pursuers", i) + ".position: non-finite coordinate");
    if (!(p.speed > 0.0) || !std::isfinite(p.speed))
      out.push_back(path_of("pursuers", i) + ".speed: must be finite and > 0");
  }
  for (std::size_t j = 0; j < s.evaders.size(); ++j) {
    const auto& e = s.evaders[j];
    if (!e.position.finite()) out.push_back(path_of("evaders", j) + ".position: non-finite coordinate");
    if (!(e.speed > 0.0) || !std::isfinite(e.speed))
      out.push_back(path_of("evaders", j) + ".speed: must be finite and > 0");
    if (!std::isfinite(e.heading) || e.heading <= -kPi || e.heading > kPi)
      out.push_back(path_of("evaders", j) + ".heading: must lie in (-pi, pi]");
  }

  const auto& r = s.region;
  if (!(r.x_min < r.x_max)) out.push_back("vt_region: x_min < x_max violated");
  if (!(r.y_min < r.y_max)) out.push_back("vt_region: y_min < y_max violated");

  if (s.pursuers.empty()) out.push_back("pursuers: at least one pursuer required");
  if (s.evaders.empty()) out.push_back("evaders: at least one evader required");
  if (s.pursuers.size() < s.evaders.size())
    out.push_back("pursuers: N >= M violated (N=" + std::to_string(s.pursuers.size()) +
                  ", M=" + std::to_string(s.evaders.size()) + ")");

  // The ratio is only meaningful once every speed is itself valid.
  const auto good_speed = [](double v) { return v > 0.0 && std::isfinite(v); };
  const bool speeds_ok =
      std::all_of(s.pursuers.begin(), s.pursuers.end(), [&](const Pursuer& p) { return good_speed(p.speed); }) &&
      std::all_of(s.evaders.begin(), s.evaders.end(), [&](const Evader& e) { return good_speed(e.speed); });
  if (speeds_ok && !s.pursuers.empty() && !s.evaders.empty()) {
    double slowest_pursuer = s.pursuers.front().speed;
    for (const auto& p : s.pursuers) slowest_pursuer = std::min(slowest_pursuer, p.speed);
    double fastest_evader = s.evaders.front().speed;
    for (const auto& e : s.evaders) fastest_evader = std::max(fastest_evader, e.speed);
    if (!(slowest_pursuer > fastest_evader))
      out.push_back("speeds: speed ratio mu >= 1 (min pursuer speed must exceed max evader speed)");
  }

  if (s.max_virtual_targets < 1) out.push_back("max_virtual_targets: must be >= 1");
  if (!s.allow_mv_ge_n && s.max_virtual_targets >= static_cast<int>(s.pursuers.size()) &&
      !s.pursuers.empty())
    out.push_back("max_virtual_targets: M_V < N violated (set allow_mv_ge_n to override)");

  if (!(s.turn_weight >= 0.0) || !std::isfinite(s.turn_weight))
    out.push_back("turn_weight: must be finite and >= 0");

  return out;
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario JSON: ") + e.what());
  }

  reject_unknown_keys(doc,
                      {"pursuers", "evaders", "vt_region", "max_virtual_targets", "turn_weight",
                       "allow_mv_ge_n"},
                      "scenario");

  Scenario s;
  const json& pursuers = array_at(doc, "pursuers");
  for (std::size_t i = 0; i < pursuers.size(); ++i) {
    const std::string where = path_of("pursuers", i);
    reject_unknown_keys(pursuers[i], {"id", "x", "y", "speed"}, where);
    Pursuer p;
    p.id = int_at(pursuers[i], "id", where);
    p.position = {number_at(pursuers[i], "x", where), number_at(pursuers[i], "y", where)};
    p.speed = number_at(pursuers[i], "speed", where);
    s.pursuers.push_back(p);
  }

  const json& evaders = array_at(doc, "evaders");
  for (std::size_t j = 0; j < evaders.size(); ++j) {
    const std::string where = path_of("evaders", j);
    reject_unknown_keys(evaders[j], {"id", "x", "y", "speed", "heading"}, where);
    Evader e;
    e.id = int_at(evaders[j], "id", where);
    e.position = {number_at(evaders[j], "x", where), number_at(evaders[j], "y", where)};
    e.speed = number_at(evaders[j], "speed", where);
    e.heading = number_at(evaders[j], "heading", where);
    if (std::isfinite(e.heading)) e.heading = wrap_angle(e.heading);
    s.evaders.push_back(e);
  }

  if (!doc.contains("vt_region")) throw ParseError("missing key 'vt_region'");
  const json& region = doc.at("vt_region");
  reject_unknown_keys(region, {"x_min", "x_max", "y_min", "y_max"}, "vt_region");
  s.region.x_min = number_at(region, "x_min", "vt_region");
  s.region.x_max = number_at(region, "x_max", "vt_region");
  s.region.y_min = number_at(region, "y_min", "vt_region");
  s.region.y_max = number_at(region, "y_max", "vt_region");

  s.max_virtual_targets = int_at(doc, "max_virtual_targets", "scenario");
  if (doc.contains("turn_weight")) s.turn_weight = number_at(doc, "turn_weight", "scenario");
  if (doc.contains("allow_mv_ge_n")) {
    if (!doc.at("allow_mv_ge_n").is_boolean())
      throw ParseError("scenario.allow_mv_ge_n: expected a boolean");
    s.allow_mv_ge_n = doc.at("allow_mv_ge_n").get<bool>();
  }

  if (auto violations = validate(s); !violations.empty()) throw ValidationError(violations);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["pursuers"] = json::array();
  for (const auto& p : s.pursuers)
    doc["pursuers"].push_back({{"id", p.id}, {"x", p.position.x}, {"y", p.position.y}, {"speed", p.speed}});
  doc["evaders"] = json::array();
  for (const auto& e : s.evaders)
    doc["evaders"].push_back({{"id", e.id},
                              {"x", e.position.x},
                              {"y", e.position.y},
                              {"speed", e.speed},
                              {"heading", e.heading}});
  doc["vt_region"] = {{"x_min", s.region.x_min},
                      {"x_max", s.region.x_max},
                      {"y_min", s.region.y_min},
                      {"y_max", s.region.y_max}};
  doc["max_virtual_targets"] = s.max_virtual_targets;
  doc["turn_weight"] = s.turn_weight;
  doc["allow_mv_ge_n"] = s.allow_mv_ge_n;
  return doc.dump(2) + "\n";
}

}  // namespace vts
