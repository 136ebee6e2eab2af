#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "vts/cost.hpp"

namespace vts {

/// One pursuer's decision: which evader to chase, through which candidate VT.
struct Choice {
  std::size_t evader{0};
  std::size_t candidate{0};
  auto operator<=>(const Choice&) const = default;
};

struct Assignment {
  std::vector<Choice> choices;          // indexed by pursuer
  std::vector<std::size_t> active_vts;  // sorted candidate indices
  double total_cost{0.0};
};

/// Non-owning view of one instance: the tensor must outlive the problem.
struct AssignmentProblem {
  const CostTensor& tensor;
  int max_virtual_targets{1};

  std::size_t pursuers() const { return tensor.pursuers(); }
  std::size_t evaders() const { return tensor.evaders(); }
  std::size_t candidates() const { return tensor.candidates(); }
};

struct SolveOptions {
  long node_limit{10'000'000};
  double time_limit_s{std::numeric_limits<double>::infinity()};
  /// Record every node's bound and the incumbent at the time (for tests).
  bool trace{false};
};

enum class SolveStatus { kOptimal, kLimit };

struct NodeTrace {
  std::vector<std::size_t> fixed_one;
  std::vector<std::size_t> fixed_zero;
  std::vector<int> forced_evader;  // per pursuer, -1 when free
  std::vector<int> forced_candidate;
  double lower_bound{0.0};
  double incumbent{0.0};
};

struct SolveReport {
  SolveStatus status{SolveStatus::kOptimal};
  double optimal_cost{0.0};
  double best_bound{0.0};
  double gap{0.0};  // relative; 0 when proven optimal
  long nodes{0};
  long lp_iterations{0};
  long lp_solves{0};
  double wall_time_s{0.0};
  std::vector<NodeTrace> trace;
};

struct SolveResult {
  Assignment assignment;
  SolveReport report;
};

/// Exact branch-and-bound. Among solutions whose cost is within 1e-9 of the
/// optimum, returns the lexicographically smallest choice vector.
/// Throws Infeasible when no assignment exists.
SolveResult solve_with_report(const AssignmentProblem& problem, const SolveOptions& options = {});
Assignment solve(const AssignmentProblem& problem);

/// Exhaustive enumeration over VT subsets and pursuer-evader maps. Guarded to
/// |V| <= 12, N <= 5, M <= 4 (InstanceTooLarge otherwise).
Assignment solve_bruteforce(const AssignmentProblem& problem);

/// Constraint violations, each prefixed with the constraint it breaks
/// (assignment, coverage, activation, cap, binary, objective). Empty iff feasible.
std::vector<std::string> check_feasible(const Assignment& assignment, const AssignmentProblem& problem);

/// Fills active_vts and total_cost from the choices.
Assignment make_assignment(const CostTensor& tensor, std::vector<Choice> choices);

/// Sum of the chosen entries, accumulated in pursuer order.
double assignment_cost(const CostTensor& tensor, const std::vector<Choice>& choices);

/// Structured text (JSON) form of the solver report.
std::string format_solve_report(const SolveReport& report);

}  // namespace vts
