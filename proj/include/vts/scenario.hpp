#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vts/geometry.hpp"

namespace vts {

struct Pursuer {
  int id{0};
  Point2 position;  // at t0 = 0
  double speed{1.0};
};

struct Evader {
  int id{0};
  Point2 position;  // at t0 = 0
  double speed{0.5};
  double heading{0.0};  // (-pi, pi]
};

/// Axis-aligned box the virtual targets are sampled from.
struct VTRegion {
  double x_min{0.0};
  double x_max{1.0};
  double y_min{0.0};
  double y_max{1.0};

  bool contains(const Point2& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  Point2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
};

/// One engagement instance. Immutable once loaded.
struct Scenario {
  std::vector<Pursuer> pursuers;
  std::vector<Evader> evaders;
  VTRegion region;
  int max_virtual_targets{1};
  double turn_weight{1.0};
  bool allow_mv_ge_n{false};

  std::size_t num_pursuers() const { return pursuers.size(); }
  std::size_t num_evaders() const { return evaders.size(); }
};

/// Every violated invariant, each prefixed with the offending field path.
/// Empty iff the scenario is valid. Does not normalize anything.
std::vector<std::string> validate(const Scenario& scenario);

/// Parses a scenario document. Headings are normalized to (-pi, pi].
/// Throws ParseError on malformed input and ValidationError on invariant
/// violations.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& path);

std::string serialize_scenario(const Scenario& scenario);

}  // namespace vts
