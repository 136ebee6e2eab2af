#include "vts/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vts/errors.hpp"
#include "vts/format.hpp"
#include "vts/sim.hpp"

namespace vts {
namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

std::string read_file(const fs::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(std::string("cannot open ") + what + ": " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

std::string write_assignment_json(const Scenario& scenario, const CandidateSet& candidates, int max_virtual_targets,
                                  const Assignment& a) {
  ojson doc;
  doc["total_cost"] = a.total_cost;
  doc["grid"] = candidates.lattice_side.value_or(0);
  doc["max_virtual_targets"] = max_virtual_targets;
  ojson choices = ojson::array();
  for (std::size_t i = 0; i < a.choices.size(); ++i) {
    const auto& c = a.choices[i];
    const Point2& vt = candidates.points[c.candidate];
    ojson row;
    row["pursuer"] = i;
    row["pursuer_id"] = scenario.pursuers[i].id;
    row["evader"] = c.evader;
    row["evader_id"] = scenario.evaders[c.evader].id;
    row["candidate"] = c.candidate;
    row["vt"] = {{"x", vt.x}, {"y", vt.y}};
    choices.push_back(std::move(row));
  }
  doc["choices"] = std::move(choices);
  ojson active = ojson::array();
  for (auto k : a.active_vts)
    active.push_back({{"candidate", k}, {"x", candidates.points[k].x}, {"y", candidates.points[k].y}});
  doc["active_vts"] = std::move(active);
  return doc.dump(2) + "\n";
}

AssignmentFile parse_assignment_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    AssignmentFile f;
    f.grid = doc.at("grid").get<int>();
    f.max_virtual_targets = doc.at("max_virtual_targets").get<int>();
    f.assignment.total_cost = doc.at("total_cost").get<double>();
    for (const auto& row : doc.at("choices")) {
      f.assignment.choices.push_back({row.at("evader").get<std::size_t>(), row.at("candidate").get<std::size_t>()});
      f.choice_vts.emplace_back(row.at("vt").at("x").get<double>(), row.at("vt").at("y").get<double>());
    }
    for (const auto& row : doc.at("active_vts")) f.assignment.active_vts.push_back(row.at("candidate").get<std::size_t>());
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed assignment file: ") + e.what());
  }
}

AssignmentFile load_assignment(const fs::path& path) {
  return parse_assignment_json(read_file(path, "assignment file"));
}

bool nests(int a, int b) {
  if (a < 1 || b < a) return false;
  if (a == b) return true;
  if (a == 1) return b % 2 == 1;
  return (b - 1) % (a - 1) == 0;
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, std::vector<int> sides, bool nested,
                                const SolveOptions& options) {
  std::sort(sides.begin(), sides.end());
  sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
  for (int n : sides)
    if (n < 1) throw InvalidGridSize("grid sizes must be >= 1, got " + std::to_string(n));
  if (nested) {
    for (std::size_t s = 1; s < sides.size(); ++s)
      if (!nests(sides[s - 1], sides[s]))
        throw InvalidGridSize("grid " + std::to_string(sides[s]) + " does not contain grid " +
                              std::to_string(sides[s - 1]) + " (need (n-1) divisible by (previous n - 1))");
  }
  std::vector<SweepRow> rows;
  for (int n : sides) {
    const auto candidates = lattice(scenario.region, n);
    const auto tensor = build_cost_tensor(scenario, candidates);
    const auto result = solve_with_report({tensor, scenario.max_virtual_targets}, options);
    rows.push_back({candidates.size(), n, result.report.optimal_cost, result.report.wall_time_s,
                    result.report.nodes, result.report.status});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "candidate_count,lattice_side,optimal_cost,solve_time_s,node_count\n";
  for (const auto& r : rows)
    out << r.candidate_count << ',' << r.lattice_side << ',' << fmt_num(r.optimal_cost) << ','
        << fmt_num(r.solve_time_s) << ',' << r.node_count << '\n';
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario scenario = load_scenario(args.scenario);
    const int mv = args.max_virtual_targets.value_or(scenario.max_virtual_targets);
    if (mv < 1) throw Error("--mv must be >= 1");
    const auto candidates = lattice(scenario.region, args.grid);
    const auto tensor = build_cost_tensor(scenario, candidates);
    const auto result = solve_with_report({tensor, mv}, args.options);

    fs::create_directories(args.out_dir);
    write_file(args.out_dir / "assignment.json", write_assignment_json(scenario, candidates, mv, result.assignment));
    write_file(args.out_dir / "solver_report.json", format_solve_report(result.report));
    if (args.dump_tensor) {
      std::ostringstream csv;
      write_tensor_csv(csv, tensor, candidates);
      write_file(args.out_dir / "cost_tensor.csv", csv.str());
    }

    const auto& a = result.assignment;
    out << "candidates: " << candidates.size() << "\n";
    out << "total cost: " << fmt_fixed(a.total_cost, 6) << "\n";
    for (std::size_t i = 0; i < a.choices.size(); ++i) {
      const Point2& vt = candidates.points[a.choices[i].candidate];
      out << "  pursuer " << scenario.pursuers[i].id << " -> VT " << a.choices[i].candidate << " ("
          << fmt_fixed(vt.x, 4) << ", " << fmt_fixed(vt.y, 4) << ") -> evader "
          << scenario.evaders[a.choices[i].evader].id << "\n";
    }
    out << "active VTs: " << a.active_vts.size() << "\n";
    if (result.report.status == SolveStatus::kLimit) {
      out << "stopped at solver limit, gap " << fmt_num(result.report.gap) << "\n";
      return 2;
    }
    out << "proven optimal (" << result.report.nodes << " nodes)\n";
    return 0;
  });
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.grids.empty()) throw Error("--grids needs at least one size");
    const Scenario scenario = load_scenario(args.scenario);
    const auto rows = run_sweep(scenario, args.grids, args.nested);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    if (!args.out_csv.parent_path().empty()) fs::create_directories(args.out_csv.parent_path());
    write_file(args.out_csv, csv.str());
    bool limited = false;
    for (const auto& r : rows) {
      out << "n=" << r.lattice_side << " candidates=" << r.candidate_count << " cost=" << fmt_fixed(r.optimal_cost, 6)
          << " nodes=" << r.node_count << "\n";
      limited = limited || r.status == SolveStatus::kLimit;
    }
    return limited ? 2 : 0;
  });
}

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(args.tol > 0.0)) throw Error("--tol must be > 0");
    const Scenario scenario = load_scenario(args.scenario);
    const AssignmentFile file = load_assignment(args.assignment);
    const auto candidates = lattice(scenario.region, file.grid);

    std::vector<std::string> problems;
    for (std::size_t i = 0; i < file.assignment.choices.size(); ++i) {
      const auto k = file.assignment.choices[i].candidate;
      if (k >= candidates.size()) {
        problems.push_back("choice " + std::to_string(i) + ": candidate " + std::to_string(k) + " is out of range");
      } else if (distance(candidates.points[k], file.choice_vts[i]) > 1e-9) {
        problems.push_back("choice " + std::to_string(i) + ": stored VT does not match candidate " +
                           std::to_string(k));
      }
    }
    if (!problems.empty()) {
      for (const auto& p : problems) err << "invalid assignment: " << p << '\n';
      return 1;
    }

    SimOptions opts;
    opts.tolerance = args.tol;
    opts.max_virtual_targets = file.max_virtual_targets;
    const auto sim = simulate(scenario, candidates, file.assignment, opts);

    std::ostringstream csv;
    write_capture_csv(csv, sim.report);
    const fs::path report = args.report.value_or(args.assignment.parent_path() / "capture_report.csv");
    write_file(report, csv.str());

    for (const auto& r : sim.report.pursuers)
      out << "pursuer " << r.pursuer_id << ": t1=" << fmt_fixed(r.t1, 6) << " tf=" << fmt_fixed(r.t_f, 6)
          << " miss_vt=" << fmt_num(r.miss_at_vt) << " miss_intercept=" << fmt_num(r.miss_at_intercept)
          << (r.pass ? " PASS" : " FAIL") << "\n";
    out << "min pursuer separation: " << fmt_fixed(sim.report.min_pursuer_separation, 6) << "\n";
    const bool ok = verify_capture(sim.report, args.tol);
    out << (ok ? "capture verified" : "capture FAILED") << "\n";
    return ok ? 0 : 1;
  });
}

int cmd_render(const RenderArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario scenario = load_scenario(args.scenario);
    const AssignmentFile file = load_assignment(args.assignment);
    const auto candidates = lattice(scenario.region, file.grid);
    const auto tensor = build_cost_tensor(scenario, candidates);
    const auto violations = check_feasible(file.assignment, {tensor, file.max_virtual_targets});
    if (!violations.empty()) {
      std::string msg = "assignment does not fit the scenario:";
      for (const auto& v : violations) msg += "\n  " + v;
      throw InfeasibleAssignment(msg);
    }
    if (!args.out_svg.parent_path().empty()) fs::create_directories(args.out_svg.parent_path());
    write_file(args.out_svg, render_svg(scenario, candidates, file.assignment));
    out << "wrote " << args.out_svg.string() << "\n";
    return 0;
  });
}

}  // namespace vts
