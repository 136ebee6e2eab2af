#pragma once

#include <cstddef>
#include <vector>

namespace vts {

/// Successive-shortest-path min-cost flow with Johnson potentials.
/// Integer capacities, real costs. Negative arc costs are allowed as long as
/// the initial residual graph has no negative cycle.
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes);

  /// Returns the arc id, usable with flow().
  int add_arc(int from, int to, int capacity, double cost);

  struct Result {
    int flow{0};
    double cost{0.0};
  };

  /// Pushes up to `limit` units from source to sink at minimum cost.
  Result solve(int source, int sink, int limit);

  int flow(int arc) const { return arcs_[static_cast<std::size_t>(arc)].flow; }

 private:
  struct Arc {
    int to;
    int cap;
    int flow;
    double cost;
  };

  int n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

/// Each pursuer takes exactly one evader and every required evader gets at
/// least one pursuer. `cost` is row-major pursuers x evaders; +inf marks a
/// forbidden pair. An empty `required` means every evader is required.
/// Returns the evader per pursuer (empty when infeasible) and writes the total
/// to `total`.
std::vector<int> solve_semi_matching(const std::vector<double>& cost, std::size_t pursuers,
                                     std::size_t evaders, double& total,
                                     const std::vector<bool>& required = {});

}  // namespace vts
