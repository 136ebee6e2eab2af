#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vts/assign.hpp"
#include "vts/cost.hpp"
#include "vts/scenario.hpp"

namespace vts {

/// Contents of an assignment file as written by cmd_solve.
struct AssignmentFile {
  int grid{1};
  int max_virtual_targets{1};
  Assignment assignment;
  std::vector<Point2> choice_vts;  // stored VT coordinates, one per choice
};

std::string write_assignment_json(const Scenario& scenario, const CandidateSet& candidates, int max_virtual_targets,
                                  const Assignment& assignment);
/// Throws ParseError on malformed documents.
AssignmentFile parse_assignment_json(const std::string& text);
AssignmentFile load_assignment(const std::filesystem::path& path);

/// Engagement picture: starts, evader courses, faint lattice, active VTs,
/// both legs of each pursuer, Apollonius circles and intercepts.
std::string render_svg(const Scenario& scenario, const CandidateSet& candidates, const Assignment& assignment);

struct SweepRow {
  std::size_t candidate_count{0};
  int lattice_side{0};
  double optimal_cost{0.0};
  double solve_time_s{0.0};
  long node_count{0};
  SolveStatus status{SolveStatus::kOptimal};
};

/// Solves one lattice per side, in ascending side order. With `nested`, each
/// lattice must contain the previous one (see nests()).
std::vector<SweepRow> run_sweep(const Scenario& scenario, std::vector<int> sides, bool nested,
                                const SolveOptions& options = {});

/// True when every point of the side-a lattice is also a point of the side-b lattice.
bool nests(int a, int b);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct SolveArgs {
  std::filesystem::path scenario;
  int grid{1};
  std::optional<int> max_virtual_targets;
  std::filesystem::path out_dir{"."};
  bool dump_tensor{false};
  SolveOptions options;
};

struct SweepArgs {
  std::filesystem::path scenario;
  std::vector<int> grids;
  bool nested{false};
  std::filesystem::path out_csv;
};

struct ValidateArgs {
  std::filesystem::path scenario;
  std::filesystem::path assignment;
  double tol{1e-6};
  /// Capture report CSV; defaults to capture_report.csv next to the assignment.
  std::optional<std::filesystem::path> report;
};

struct RenderArgs {
  std::filesystem::path scenario;
  std::filesystem::path assignment;
  std::filesystem::path out_svg;
};

/// Exit codes: 0 success (proven optimal for solve), 1 error or failed
/// validation, 2 solve stopped at a limit with a nonzero gap.
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err);
int cmd_render(const RenderArgs& args, std::ostream& out, std::ostream& err);

}  // namespace vts
