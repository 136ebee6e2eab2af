#include "vts/min_cost_flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

namespace vts {

namespace {
constexpr double kUnreached = std::numeric_limits<double>::infinity();
}

MinCostFlow::MinCostFlow(int nodes) : n_(nodes), adj_(static_cast<std::size_t>(nodes)) {}

int MinCostFlow::add_arc(int from, int to, int capacity, double cost) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, 0, cost});
  arcs_.push_back({from, 0, 0, -cost});
  adj_[static_cast<std::size_t>(from)].push_back(id);
  adj_[static_cast<std::size_t>(to)].push_back(id + 1);
  return id;
}

MinCostFlow::Result MinCostFlow::solve(int source, int sink, int limit) {
  std::vector<double> pot(static_cast<std::size_t>(n_), 0.0);

  // Bellman-Ford for initial potentials (arcs may carry negative cost).
  {
    std::vector<double> dist(static_cast<std::size_t>(n_), kUnreached);
    dist[static_cast<std::size_t>(source)] = 0.0;
    for (int round = 0; round < n_; ++round) {
      bool changed = false;
      for (int u = 0; u < n_; ++u) {
        if (dist[static_cast<std::size_t>(u)] == kUnreached) continue;
        for (int id : adj_[static_cast<std::size_t>(u)]) {
          const Arc& a = arcs_[static_cast<std::size_t>(id)];
          if (a.cap - a.flow <= 0) continue;
          const double nd = dist[static_cast<std::size_t>(u)] + a.cost;
          if (nd < dist[static_cast<std::size_t>(a.to)] - 1e-15) {
            dist[static_cast<std::size_t>(a.to)] = nd;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    for (int v = 0; v < n_; ++v)
      pot[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(v)] == kUnreached ? 0.0 : dist[static_cast<std::size_t>(v)];
  }

  Result res;
  std::vector<double> dist(static_cast<std::size_t>(n_));
  std::vector<int> via(static_cast<std::size_t>(n_));
  using Item = std::pair<double, int>;

  while (res.flow < limit) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::fill(via.begin(), via.end(), -1);
    dist[static_cast<std::size_t>(source)] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(u)]) continue;
      for (int id : adj_[static_cast<std::size_t>(u)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.cap - a.flow <= 0) continue;
        // Reduced costs are >= 0 up to rounding; clamp so Dijkstra stays sound.
        const double rc = std::max(0.0, a.cost + pot[static_cast<std::size_t>(u)] - pot[static_cast<std::size_t>(a.to)]);
        const double nd = d + rc;
        if (nd < dist[static_cast<std::size_t>(a.to)]) {
          dist[static_cast<std::size_t>(a.to)] = nd;
          via[static_cast<std::size_t>(a.to)] = id;
          heap.emplace(nd, a.to);
        }
      }
    }
    if (dist[static_cast<std::size_t>(sink)] == kUnreached) break;
    for (int v = 0; v < n_; ++v)
      if (dist[static_cast<std::size_t>(v)] != kUnreached) pot[static_cast<std::size_t>(v)] += dist[static_cast<std::size_t>(v)];

    int push = limit - res.flow;
    for (int v = sink; v != source;) {
      const int id = via[static_cast<std::size_t>(v)];
      const Arc& a = arcs_[static_cast<std::size_t>(id)];
      push = std::min(push, a.cap - a.flow);
      v = arcs_[static_cast<std::size_t>(id ^ 1)].to;
    }
    for (int v = sink; v != source;) {
      const int id = via[static_cast<std::size_t>(v)];
      arcs_[static_cast<std::size_t>(id)].flow += push;
      arcs_[static_cast<std::size_t>(id ^ 1)].flow -= push;
      res.cost += push * arcs_[static_cast<std::size_t>(id)].cost;
      v = arcs_[static_cast<std::size_t>(id ^ 1)].to;
    }
    res.flow += push;
  }
  return res;
}

std::vector<int> solve_semi_matching(const std::vector<double>& cost, std::size_t pursuers,
                                     std::size_t evaders, double& total,
                                     const std::vector<bool>& required) {
  total = kUnreached;
  auto is_required = [&](std::size_t j) { return required.empty() || required[j]; };
  std::size_t need = 0;
  for (std::size_t j = 0; j < evaders; ++j)
    if (is_required(j)) ++need;
  if (pursuers < need) return {};

  // Every pursuer pays its cheapest evader; on top of that, each evader is
  // given a distinct designated pursuer whose surcharge is c_ij - min_j c_ij.
  std::vector<double> best(pursuers, kUnreached);
  std::vector<int> best_j(pursuers, -1);
  for (std::size_t i = 0; i < pursuers; ++i) {
    for (std::size_t j = 0; j < evaders; ++j) {
      const double c = cost[i * evaders + j];
      if (c < best[i]) {
        best[i] = c;
        best_j[i] = static_cast<int>(j);
      }
    }
    if (best_j[i] < 0) return {};
  }

  std::vector<int> choice(best_j.begin(), best_j.end());
  double base = 0.0;
  for (std::size_t i = 0; i < pursuers; ++i) base += best[i];
  if (need == 0) {
    total = base;
    return choice;
  }

  const int source = 0;
  const int first_evader = 1;
  const int first_pursuer = first_evader + static_cast<int>(evaders);
  const int sink = first_pursuer + static_cast<int>(pursuers);
  MinCostFlow net(sink + 1);
  std::vector<std::vector<int>> arc_of(evaders, std::vector<int>(pursuers, -1));
  for (std::size_t j = 0; j < evaders; ++j)
    if (is_required(j)) net.add_arc(source, first_evader + static_cast<int>(j), 1, 0.0);
  for (std::size_t j = 0; j < evaders; ++j) {
    if (!is_required(j)) continue;
    for (std::size_t i = 0; i < pursuers; ++i) {
      const double c = cost[i * evaders + j];
      if (!std::isfinite(c)) continue;
      arc_of[j][i] = net.add_arc(first_evader + static_cast<int>(j), first_pursuer + static_cast<int>(i), 1, c - best[i]);
    }
  }
  for (std::size_t i = 0; i < pursuers; ++i) net.add_arc(first_pursuer + static_cast<int>(i), sink, 1, 0.0);

  const auto res = net.solve(source, sink, static_cast<int>(need));
  if (res.flow < static_cast<int>(need)) return {};

  for (std::size_t j = 0; j < evaders; ++j)
    for (std::size_t i = 0; i < pursuers; ++i)
      if (arc_of[j][i] >= 0 && net.flow(arc_of[j][i]) > 0) choice[i] = static_cast<int>(j);

  total = 0.0;
  for (std::size_t i = 0; i < pursuers; ++i) total += cost[i * evaders + static_cast<std::size_t>(choice[i])];
  return choice;
}

}  // namespace vts
