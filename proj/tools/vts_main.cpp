#include <iostream>

#include <CLI11.hpp>

#include "vts/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Virtual-target pursuit assignment: solve, sweep, validate, render"};
  app.require_subcommand(1);

  vts::SolveArgs solve;
  int mv = 0;
  auto* s = app.add_subcommand("solve", "Solve one lattice and write the assignment");
  s->add_option("--scenario", solve.scenario, "Scenario JSON")->required();
  s->add_option("--grid", solve.grid, "Lattice side n (n*n candidates)")->required()->check(CLI::PositiveNumber);
  s->add_option("--mv", mv, "Override max_virtual_targets");
  s->add_option("--out", solve.out_dir, "Output directory");
  s->add_flag("--dump-tensor", solve.dump_tensor, "Also write cost_tensor.csv");
  s->add_option("--time-limit", solve.options.time_limit_s, "Solver time limit in seconds");
  s->add_option("--node-limit", solve.options.node_limit, "Solver node limit");

  vts::SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "Solve a list of lattice sizes");
  w->add_option("--scenario", sweep.scenario, "Scenario JSON")->required();
  w->add_option("--grids", sweep.grids, "Lattice sides, comma separated")->required()->delimiter(',');
  w->add_flag("--nested", sweep.nested, "Require each lattice to contain the previous one");
  w->add_option("--out", sweep.out_csv, "Output CSV")->required();

  vts::ValidateArgs validate;
  std::string report;
  auto* v = app.add_subcommand("validate", "Simulate an assignment and check every capture");
  v->add_option("--scenario", validate.scenario, "Scenario JSON")->required();
  v->add_option("--assignment", validate.assignment, "assignment.json from solve")->required();
  v->add_option("--tol", validate.tol, "Miss-distance tolerance");
  v->add_option("--report", report, "Capture report CSV path");

  vts::RenderArgs render;
  auto* r = app.add_subcommand("render", "Draw an assignment as SVG");
  r->add_option("--scenario", render.scenario, "Scenario JSON")->required();
  r->add_option("--assignment", render.assignment, "assignment.json from solve")->required();
  r->add_option("--out", render.out_svg, "Output SVG")->required();

  CLI11_PARSE(app, argc, argv);

  if (s->parsed()) {
    if (mv != 0) solve.max_virtual_targets = mv;
    return vts::cmd_solve(solve, std::cout, std::cerr);
  }
  if (w->parsed()) return vts::cmd_sweep(sweep, std::cout, std::cerr);
  if (v->parsed()) {
    if (!report.empty()) validate.report = report;
    return vts::cmd_validate(validate, std::cout, std::cerr);
  }
  return vts::cmd_render(render, std::cout, std::cerr);
}
