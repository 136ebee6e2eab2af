#include "vts/assign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <set>

#include <json.hpp>

#include "vts/errors.hpp"
#include "vts/min_cost_flow.hpp"
#include "vts/simplex.hpp"

namespace vts {

double assignment_cost(const CostTensor& tensor, const std::vector<Choice>& choices) {
  double total = 0.0;
  for (std::size_t i = 0; i < choices.size(); ++i)
    total += tensor.cost(i, choices[i].evader, choices[i].candidate);
  return total;
}

Assignment make_assignment(const CostTensor& tensor, std::vector<Choice> choices) {
  Assignment a;
  std::set<std::size_t> active;
  for (const auto& c : choices) active.insert(c.candidate);
  a.active_vts.assign(active.begin(), active.end());
  a.total_cost = assignment_cost(tensor, choices);
  a.choices = std::move(choices);
  return a;
}

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kIntTol = 1e-6;
constexpr double kInfCost = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

void check_dimensions(const AssignmentProblem& p) {
  if (p.max_virtual_targets < 1) throw Infeasible("max_virtual_targets must be >= 1");
  if (p.pursuers() < p.evaders())
    throw Infeasible("N < M: every evader needs a pursuer but each pursuer takes one evader");
  if (p.pursuers() > 0 && p.evaders() == 0) throw Infeasible("no evaders to assign pursuers to");
  if (p.pursuers() > 0 && p.candidates() == 0) throw Infeasible("no candidate virtual targets");
}

struct Solution {
  std::vector<Choice> choices;
  double cost{kInfCost};
};

// Variable fixings that define a node of the search tree.
struct Fixings {
  std::vector<std::uint32_t> ones;   // y_k = 1
  std::vector<std::uint32_t> zeros;  // y_k = 0
  std::vector<int> forced_j;         // per pursuer; -1 = free
  std::vector<int> forced_k;
  std::vector<std::size_t> excluded;  // flat (i, j, k) triples with x = 0, sorted
};

struct Node {
  Fixings fix;
  std::vector<std::uint32_t> working;  // candidates in the restricted master
  double bound{-kInfCost};
  long id{0};
};

struct NodeOrder {
  bool operator()(const std::unique_ptr<Node>& a, const std::unique_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->id > b->id;
  }
};

// Node fixings expanded against the instance.
struct State {
  std::vector<std::int8_t> y;  // -1 free, 0, 1
  std::vector<std::size_t> free_pursuers;
  std::vector<bool> uncovered;
  std::vector<std::uint32_t> ones;
  std::vector<Choice> forced;  // per pursuer; meaningful only when not free
  std::size_t free_candidates{0};
  double forced_cost{0.0};
};

struct Duals {
  std::vector<double> alpha;  // per evader, >= 0
  std::vector<double> beta;   // per pursuer
  double delta{0.0};          // >= 0
};

struct LpOutcome {
  bool feasible{false};
  double objective{0.0};
  double bound{-kInfCost};
  Duals duals;
  std::vector<double> y;  // per candidate
  bool y_integral{false};
  bool has_fractional_x{false};
  std::size_t frac_i{0}, frac_j{0}, frac_k{0};
};

class Engine {
 public:
  Engine(const AssignmentProblem& p, const SolveOptions& o)
      : t_(p.tensor),
        n_(p.pursuers()),
        m_(p.evaders()),
        k_(p.candidates()),
        mv_(static_cast<std::size_t>(p.max_virtual_targets)),
        opt_(o),
        start_(Clock::now()) {}

  SolveResult run();

 private:
  std::optional<State> expand(const Fixings& fix) const;
  double dual_bound(const State& s, const Duals& d) const;
  std::vector<double> candidate_gain(const State& s, const Duals& d) const;
  std::optional<Solution> evaluate_set(const State& s, const std::vector<std::uint32_t>& set) const;
  LpOutcome solve_lp(const State& s, const Fixings& fix, std::vector<std::uint32_t>& working);
  std::vector<std::uint32_t> initial_working(const State& s) const;
  Solution greedy(const State& s) const;

  // Returns true if the search finished, false if stopped at a limit.
  bool search(const Fixings& root, bool feasibility, double cutoff, std::optional<Solution>& best);
  void accept(std::optional<Solution>& best, const std::optional<Solution>& cand) const;
  bool limits_hit() const;
  std::vector<Choice> canonicalize(std::vector<Choice> v, double cutoff);
  Fixings root_fixings() const;

  const CostTensor& t_;
  std::size_t n_, m_, k_, mv_;
  const SolveOptions& opt_;
  Clock::time_point start_;
  long nodes_{0};
  long next_id_{0};
  long lp_iterations_{0};
  long lp_solves_{0};
  bool limited_{false};
  double open_bound_{kInfCost};
  bool tracing_{false};
  std::vector<NodeTrace> trace_;
};

Fixings Engine::root_fixings() const {
  Fixings f;
  f.forced_j.assign(n_, -1);
  f.forced_k.assign(n_, -1);
  return f;
}

bool Engine::limits_hit() const {
  if (nodes_ >= opt_.node_limit) return true;
  if (std::isfinite(opt_.time_limit_s)) {
    const double el = std::chrono::duration<double>(Clock::now() - start_).count();
    if (el >= opt_.time_limit_s) return true;
  }
  return false;
}

std::optional<State> Engine::expand(const Fixings& fix) const {
  State s;
  s.y.assign(k_, -1);
  s.uncovered.assign(m_, true);
  s.forced.resize(n_);
  for (auto k : fix.zeros) s.y[k] = 0;
  for (auto k : fix.ones) {
    if (s.y[k] == 0) return std::nullopt;
    s.y[k] = 1;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (fix.forced_j[i] < 0) {
      s.free_pursuers.push_back(i);
      continue;
    }
    const auto j = static_cast<std::size_t>(fix.forced_j[i]);
    const auto k = static_cast<std::size_t>(fix.forced_k[i]);
    if (s.y[k] == 0) return std::nullopt;
    s.y[k] = 1;
    s.uncovered[j] = false;
    s.forced[i] = {j, k};
    s.forced_cost += t_.cost(i, j, k);
  }
  for (std::size_t k = 0; k < k_; ++k) {
    if (s.y[k] == 1) s.ones.push_back(static_cast<std::uint32_t>(k));
    if (s.y[k] == -1) ++s.free_candidates;
  }
  if (s.ones.size() > mv_) return std::nullopt;
  const auto need = static_cast<std::size_t>(std::count(s.uncovered.begin(), s.uncovered.end(), true));
  if (s.free_pursuers.size() < need) return std::nullopt;
  return s;
}

// Per candidate: sum over free pursuers of max(0, max_j alpha_j + beta_i - c_ijk).
std::vector<double> Engine::candidate_gain(const State& s, const Duals& d) const {
  std::vector<double> gain(k_, 0.0);
  std::vector<double> best(k_);
  for (std::size_t i : s.free_pursuers) {
    std::fill(best.begin(), best.end(), 0.0);
    for (std::size_t j = 0; j < m_; ++j) {
      const double a = (s.uncovered[j] ? d.alpha[j] : 0.0) + d.beta[i];
      const double* row = t_.row(i, j);
      for (std::size_t k = 0; k < k_; ++k) best[k] = std::max(best[k], a - row[k]);
    }
    for (std::size_t k = 0; k < k_; ++k) gain[k] += best[k];
  }
  return gain;
}

// Lagrangian dual value for any alpha >= 0, beta, delta >= 0: a valid lower
// bound on every integer solution of the node. Excluded triples are ignored,
// which only weakens it.
double Engine::dual_bound(const State& s, const Duals& d) const {
  double lb = s.forced_cost - d.delta * static_cast<double>(mv_);
  for (std::size_t j = 0; j < m_; ++j)
    if (s.uncovered[j]) lb += d.alpha[j];
  for (std::size_t i : s.free_pursuers) lb += d.beta[i];
  const auto gain = candidate_gain(s, d);
  for (std::size_t k = 0; k < k_; ++k) {
    if (s.y[k] == 0) continue;
    const double term = d.delta - gain[k];
    lb += s.y[k] == 1 ? term : std::min(0.0, term);
  }
  return lb;
}

std::optional<Solution> Engine::evaluate_set(const State& s, const std::vector<std::uint32_t>& set) const {
  const std::size_t nf = s.free_pursuers.size();
  std::vector<double> reduced(nf * m_, kInfCost);
  std::vector<std::size_t> arg(nf * m_, 0);
  for (std::size_t f = 0; f < nf; ++f) {
    const std::size_t i = s.free_pursuers[f];
    for (std::size_t j = 0; j < m_; ++j) {
      const double* row = t_.row(i, j);
      for (auto k : set) {
        if (row[k] < reduced[f * m_ + j]) {
          reduced[f * m_ + j] = row[k];
          arg[f * m_ + j] = k;
        }
      }
    }
  }
  double total = 0.0;
  const auto pick = solve_semi_matching(reduced, nf, m_, total, s.uncovered);
  if (pick.size() != nf) return std::nullopt;

  Solution sol;
  sol.choices.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) sol.choices[i] = s.forced[i];
  for (std::size_t f = 0; f < nf; ++f) {
    const auto j = static_cast<std::size_t>(pick[f]);
    sol.choices[s.free_pursuers[f]] = {j, arg[f * m_ + j]};
  }
  sol.cost = assignment_cost(t_, sol.choices);
  return sol;
}

void Engine::accept(std::optional<Solution>& best, const std::optional<Solution>& cand) const {
  if (!cand) return;
  if (!best || cand->cost < best->cost) best = cand;
}

std::vector<std::uint32_t> Engine::initial_working(const State& s) const {
  std::set<std::uint32_t> w(s.ones.begin(), s.ones.end());
  if (s.free_candidates == 0) return {w.begin(), w.end()};
  for (std::size_t i : s.free_pursuers) {
    for (std::size_t j = 0; j < m_; ++j) {
      const double* row = t_.row(i, j);
      std::size_t arg = k_;
      for (std::size_t k = 0; k < k_; ++k) {
        if (s.y[k] != -1) continue;
        if (arg == k_ || row[k] < row[arg]) arg = k;
      }
      if (arg < k_) w.insert(static_cast<std::uint32_t>(arg));
    }
  }
  return {w.begin(), w.end()};
}

LpOutcome Engine::solve_lp(const State& s, const Fixings& fix, std::vector<std::uint32_t>& working) {
  LpOutcome out;
  const std::size_t nf = s.free_pursuers.size();

  // Keep the working set restricted to usable candidates; fixed-to-one ones must be present.
  {
    std::set<std::uint32_t> w;
    for (auto k : working)
      if (s.y[k] != 0) w.insert(k);
    for (auto k : s.ones) w.insert(k);
    working.assign(w.begin(), w.end());
  }
  if (working.empty()) working = initial_working(s);

  auto excluded = [&](std::size_t i, std::size_t j, std::size_t k) {
    return !fix.excluded.empty() &&
           std::binary_search(fix.excluded.begin(), fix.excluded.end(), (i * m_ + j) * k_ + k);
  };

  struct XCol {
    std::size_t i, j, k;
    int col;
  };

  bool widened = false;
  while (true) {
    lp::Problem lp;
    std::vector<int> cover_row(m_, -1), assign_row(n_, -1);
    for (std::size_t j = 0; j < m_; ++j)
      if (s.uncovered[j]) cover_row[j] = lp.add_row(1.0, lp::kInf);
    for (std::size_t i : s.free_pursuers) assign_row[i] = lp.add_row(1.0, 1.0);
    const std::size_t w = working.size();
    std::vector<int> link_row(nf * w);
    for (std::size_t f = 0; f < nf; ++f)
      for (std::size_t c = 0; c < w; ++c) link_row[f * w + c] = lp.add_row(-lp::kInf, 0.0);
    const int card_row = lp.add_row(-lp::kInf, static_cast<double>(mv_));

    std::vector<XCol> xcols;
    for (std::size_t f = 0; f < nf; ++f) {
      const std::size_t i = s.free_pursuers[f];
      for (std::size_t j = 0; j < m_; ++j) {
        for (std::size_t c = 0; c < w; ++c) {
          const std::size_t k = working[c];
          if (excluded(i, j, k)) continue;
          std::vector<lp::Problem::Entry> e;
          if (cover_row[j] >= 0) e.push_back({cover_row[j], 1.0});
          e.push_back({assign_row[i], 1.0});
          e.push_back({link_row[f * w + c], 1.0});
          xcols.push_back({i, j, k, lp.add_column(t_.cost(i, j, k), 0.0, 1.0, std::move(e))});
        }
      }
    }
    std::vector<int> ycol(w);
    for (std::size_t c = 0; c < w; ++c) {
      std::vector<lp::Problem::Entry> e;
      for (std::size_t f = 0; f < nf; ++f) e.push_back({link_row[f * w + c], -1.0});
      e.push_back({card_row, 1.0});
      const double lo = s.y[working[c]] == 1 ? 1.0 : 0.0;
      ycol[c] = lp.add_column(0.0, lo, 1.0, std::move(e));
    }

    const auto sol = lp::solve(lp);
    ++lp_solves_;
    lp_iterations_ += sol.iterations;

    if (sol.status == lp::Status::kInfeasible || sol.status == lp::Status::kUnbounded) {
      if (widened) return out;
      // The restricted master may be too narrow; retry with every usable candidate.
      working.clear();
      for (std::size_t k = 0; k < k_; ++k)
        if (s.y[k] != 0) working.push_back(static_cast<std::uint32_t>(k));
      widened = true;
      continue;
    }

    Duals d;
    d.alpha.assign(m_, 0.0);
    d.beta.assign(n_, 0.0);
    for (std::size_t j = 0; j < m_; ++j)
      if (cover_row[j] >= 0) d.alpha[j] = std::max(0.0, sol.row_duals[cover_row[j]]);
    for (std::size_t i : s.free_pursuers) d.beta[i] = sol.row_duals[assign_row[i]];
    d.delta = std::max(0.0, -sol.row_duals[card_row]);

    // Price candidates outside the restricted master.
    const auto gain = candidate_gain(s, d);
    std::vector<bool> in_working(k_, false);
    for (auto k : working) in_working[k] = true;
    std::vector<std::pair<double, std::uint32_t>> entering;
    for (std::size_t k = 0; k < k_; ++k) {
      if (s.y[k] != -1 || in_working[k]) continue;
      const double viol = gain[k] - d.delta;
      if (viol > 1e-9 * (1.0 + d.delta)) entering.emplace_back(-viol, static_cast<std::uint32_t>(k));
    }
    if (!entering.empty() && sol.status == lp::Status::kOptimal) {
      std::sort(entering.begin(), entering.end());
      const std::size_t take = std::min<std::size_t>(entering.size(), 16);
      for (std::size_t e = 0; e < take; ++e) working.push_back(entering[e].second);
      std::sort(working.begin(), working.end());
      continue;
    }

    out.feasible = true;
    out.objective = sol.objective;
    out.duals = d;
    out.bound = dual_bound(s, d);
    out.y.assign(k_, 0.0);
    out.y_integral = true;
    for (std::size_t c = 0; c < w; ++c) {
      const double v = sol.x[ycol[c]];
      out.y[working[c]] = v;
      if (std::abs(v - std::round(v)) > kIntTol) out.y_integral = false;
    }
    double worst = 0.0;
    for (const auto& xc : xcols) {
      const double v = sol.x[xc.col];
      const double frac = std::min(v, 1.0 - v);
      if (frac > kIntTol && frac > worst) {
        worst = frac;
        out.has_fractional_x = true;
        out.frac_i = xc.i;
        out.frac_j = xc.j;
        out.frac_k = xc.k;
      }
    }
    if (sol.status != lp::Status::kOptimal) out.y_integral = false;
    return out;
  }
}

Solution Engine::greedy(const State& s) const {
  // Add candidates one at a time, each time taking the one whose addition
  // gives the cheapest exact assignment over the current set.
  std::vector<std::uint32_t> set = s.ones;
  std::optional<Solution> best;
  if (!set.empty()) best = evaluate_set(s, set);
  while (set.size() < mv_) {
    std::optional<Solution> step_best;
    std::uint32_t step_k = 0;
    std::vector<std::uint32_t> trial = set;
    trial.push_back(0);
    for (std::size_t k = 0; k < k_; ++k) {
      if (s.y[k] != -1) continue;
      trial.back() = static_cast<std::uint32_t>(k);
      auto cand = evaluate_set(s, trial);
      if (cand && (!step_best || cand->cost < step_best->cost)) {
        step_best = cand;
        step_k = static_cast<std::uint32_t>(k);
      }
    }
    if (!step_best || (best && step_best->cost >= best->cost)) break;
    best = step_best;
    set.push_back(step_k);
    std::sort(set.begin(), set.end());
  }
  return best ? *best : Solution{};
}

bool Engine::search(const Fixings& root, bool feasibility, double cutoff, std::optional<Solution>& best) {
  std::priority_queue<std::unique_ptr<Node>, std::vector<std::unique_ptr<Node>>, NodeOrder> open;
  {
    auto node = std::make_unique<Node>();
    node->fix = root;
    node->id = next_id_++;
    open.push(std::move(node));
  }

  auto pruned = [&](double bound) {
    if (feasibility) return bound > cutoff;
    return best && bound >= best->cost - kTieTol;
  };
  auto done = [&]() { return feasibility && best && best->cost <= cutoff; };
  auto offer = [&](const std::optional<Solution>& cand) {
    if (!cand) return;
    if (feasibility && cand->cost > cutoff) return;
    accept(best, cand);
  };

  while (!open.empty()) {
    if (limits_hit()) {
      limited_ = true;
      open_bound_ = std::min(open_bound_, open.top()->bound);
      return false;
    }
    auto node = std::move(const_cast<std::unique_ptr<Node>&>(open.top()));
    open.pop();
    if (pruned(node->bound)) continue;
    ++nodes_;

    auto st = expand(node->fix);
    if (!st) continue;
    const State& s = *st;

    auto record = [&](double bound) {
      if (!tracing_) return;
      NodeTrace tr;
      tr.fixed_one.assign(node->fix.ones.begin(), node->fix.ones.end());
      tr.fixed_zero.assign(node->fix.zeros.begin(), node->fix.zeros.end());
      tr.forced_evader = node->fix.forced_j;
      tr.forced_candidate = node->fix.forced_k;
      tr.lower_bound = bound;
      tr.incumbent = best ? best->cost : kInfCost;
      trace_.push_back(std::move(tr));
    };

    // Leaves: nothing left to decide about y.
    if (s.free_pursuers.empty() || s.ones.size() == mv_ || s.free_candidates == 0) {
      auto cand = evaluate_set(s, s.ones);
      if (cand) cand->cost = assignment_cost(t_, cand->choices);
      record(cand ? cand->cost : kInfCost);
      offer(cand);
      if (done()) return true;
      continue;
    }

    auto lp = solve_lp(s, node->fix, node->working);
    if (!lp.feasible) continue;
    const double bound = std::max(node->bound, lp.bound);
    record(bound);
    if (pruned(bound)) continue;

    auto finish = [&](std::optional<Solution> cand) {
      if (cand) cand->cost = assignment_cost(t_, cand->choices);
      offer(cand);
      return cand;
    };

    // Rounding heuristic: the fixed ones plus the largest fractional y values.
    {
      std::vector<std::pair<double, std::uint32_t>> ranked;
      for (auto k : node->working)
        if (s.y[k] == -1 && lp.y[k] > kIntTol) ranked.emplace_back(-lp.y[k], k);
      std::sort(ranked.begin(), ranked.end());
      std::vector<std::uint32_t> set = s.ones;
      for (const auto& [neg, k] : ranked) {
        if (set.size() >= mv_) break;
        set.push_back(k);
      }
      std::sort(set.begin(), set.end());
      finish(evaluate_set(s, set));
      if (done()) return true;
    }

    if (lp.y_integral) {
      std::vector<std::uint32_t> set = s.ones;
      for (auto k : node->working)
        if (s.y[k] == -1 && lp.y[k] > 0.5) set.push_back(k);
      std::sort(set.begin(), set.end());
      auto cand = finish(evaluate_set(s, set));
      if (done()) return true;
      // With y integral the remaining problem is a network flow, so the LP
      // value is attained; only numerical trouble leaves a gap.
      if (cand && cand->cost <= lp.objective + 1e-7 * (1.0 + std::abs(lp.objective))) continue;
      if (!lp.has_fractional_x) continue;

      const std::size_t i = lp.frac_i, j = lp.frac_j, k = lp.frac_k;
      auto force = std::make_unique<Node>();
      force->fix = node->fix;
      force->fix.forced_j[i] = static_cast<int>(j);
      force->fix.forced_k[i] = static_cast<int>(k);
      force->working = node->working;
      force->bound = bound;
      force->id = next_id_++;
      auto forbid = std::make_unique<Node>();
      forbid->fix = node->fix;
      const std::size_t flat = (i * m_ + j) * k_ + k;
      forbid->fix.excluded.insert(std::upper_bound(forbid->fix.excluded.begin(), forbid->fix.excluded.end(), flat), flat);
      forbid->working = node->working;
      forbid->bound = bound;
      forbid->id = next_id_++;
      open.push(std::move(force));
      open.push(std::move(forbid));
      continue;
    }

    // Branch on the most fractional y_k (lowest index on ties).
    std::uint32_t branch_k = 0;
    double best_frac = -1.0;
    for (auto k : node->working) {
      if (s.y[k] != -1) continue;
      const double frac = std::min(lp.y[k], 1.0 - lp.y[k]);
      if (frac > kIntTol && frac > best_frac + 1e-12) {
        best_frac = frac;
        branch_k = k;
      }
    }

    auto up = std::make_unique<Node>();
    up->fix = node->fix;
    up->fix.ones.insert(std::upper_bound(up->fix.ones.begin(), up->fix.ones.end(), branch_k), branch_k);
    up->working = node->working;
    up->bound = bound;
    up->id = next_id_++;
    auto down = std::make_unique<Node>();
    down->fix = std::move(node->fix);
    down->fix.zeros.insert(std::upper_bound(down->fix.zeros.begin(), down->fix.zeros.end(), branch_k), branch_k);
    down->working = std::move(node->working);
    down->bound = bound;
    down->id = next_id_++;
    open.push(std::move(up));
    open.push(std::move(down));
  }
  return true;
}

// Walks pursuers in order and, for each, looks for the smallest (evader,
// candidate) pair that still admits a solution within `cutoff`.
std::vector<Choice> Engine::canonicalize(std::vector<Choice> v, double cutoff) {
  Fixings prefix = root_fixings();
  for (std::size_t i = 0; i < n_; ++i) {
    if (limited_) break;
    auto st = expand(prefix);
    if (!st) break;

    // Screening bounds for every (j, k) forced on pursuer i, from the duals of
    // the prefix node's LP relaxation.
    std::optional<Duals> duals;
    if (st->ones.size() < mv_ && st->free_candidates > 0) {
      auto working = initial_working(*st);
      auto lp = solve_lp(*st, prefix, working);
      if (lp.feasible) duals = lp.duals;
    }

    std::vector<std::pair<std::size_t, std::size_t>> trials;
    for (std::size_t j = 0; j < m_ && j <= v[i].evader; ++j) {
      std::vector<double> screen(k_, -kInfCost);
      if (duals) {
        Fixings f = prefix;
        f.forced_j[i] = static_cast<int>(j);
        f.forced_k[i] = -1;
        // Base state with pursuer i removed and evader j covered.
        State base = *st;
        base.free_pursuers.erase(std::find(base.free_pursuers.begin(), base.free_pursuers.end(), i));
        base.uncovered[j] = false;
        const auto gain = candidate_gain(base, *duals);
        double lb = base.forced_cost - duals->delta * static_cast<double>(mv_);
        for (std::size_t jj = 0; jj < m_; ++jj)
          if (base.uncovered[jj]) lb += duals->alpha[jj];
        for (std::size_t ii : base.free_pursuers) lb += duals->beta[ii];
        double free_terms = 0.0;
        for (std::size_t k = 0; k < k_; ++k) {
          if (base.y[k] == 0) continue;
          const double term = duals->delta - gain[k];
          free_terms += base.y[k] == 1 ? term : std::min(0.0, term);
        }
        for (std::size_t k = 0; k < k_; ++k) {
          if (base.y[k] != -1) {
            screen[k] = base.y[k] == 1 ? lb + free_terms + t_.cost(i, j, k) : kInfCost;
            continue;
          }
          const double term = duals->delta - gain[k];
          screen[k] = lb + free_terms - std::min(0.0, term) + term + t_.cost(i, j, k);
        }
      }
      for (std::size_t k = 0; k < k_; ++k) {
        if (Choice{j, k} >= v[i]) break;
        if (screen[k] > cutoff) continue;
        trials.emplace_back(j, k);
      }
    }

    for (const auto& [j, k] : trials) {
      Fixings f = prefix;
      f.forced_j[i] = static_cast<int>(j);
      f.forced_k[i] = static_cast<int>(k);
      if (!expand(f)) continue;
      std::optional<Solution> found;
      search(f, true, cutoff, found);
      if (found && found->cost <= cutoff) {
        v = found->choices;
        break;
      }
      if (limited_) break;
    }
    prefix.forced_j[i] = static_cast<int>(v[i].evader);
    prefix.forced_k[i] = static_cast<int>(v[i].candidate);
  }
  return v;
}

SolveResult Engine::run() {
  tracing_ = opt_.trace;
  SolveResult result;
  const Fixings root = root_fixings();
  auto st = expand(root);
  if (!st) throw Infeasible("assignment problem has no feasible solution");

  std::optional<Solution> best;
  {
    Solution g = greedy(*st);
    if (!g.choices.empty()) {
      g.cost = assignment_cost(t_, g.choices);
      best = g;
    }
  }
  const bool finished = search(root, false, 0.0, best);
  tracing_ = false;
  if (!best) {
    if (finished) throw Infeasible("assignment problem has no feasible solution");
    throw Infeasible("no feasible assignment found before the solver limits");
  }

  std::vector<Choice> choices = best->choices;
  if (finished) choices = canonicalize(choices, best->cost + kTieTol);

  result.assignment = make_assignment(t_, std::move(choices));
  auto& rep = result.report;
  rep.optimal_cost = result.assignment.total_cost;
  rep.nodes = nodes_;
  rep.lp_iterations = lp_iterations_;
  rep.lp_solves = lp_solves_;
  rep.trace = std::move(trace_);
  if (finished) {
    rep.status = SolveStatus::kOptimal;
    rep.best_bound = rep.optimal_cost;
    rep.gap = 0.0;
  } else {
    rep.status = SolveStatus::kLimit;
    rep.best_bound = std::min(open_bound_, best->cost);
    rep.gap = std::max(0.0, (best->cost - rep.best_bound) / std::max(1e-9, std::abs(best->cost)));
  }
  rep.wall_time_s = std::chrono::duration<double>(Clock::now() - start_).count();
  return result;
}

}  // namespace

SolveResult solve_with_report(const AssignmentProblem& problem, const SolveOptions& options) {
  check_dimensions(problem);
  if (problem.pursuers() == 0) return {};
  Engine engine(problem, options);
  return engine.run();
}

Assignment solve(const AssignmentProblem& problem) { return solve_with_report(problem).assignment; }

Assignment solve_bruteforce(const AssignmentProblem& problem) {
  const std::size_t n = problem.pursuers();
  const std::size_t m = problem.evaders();
  const std::size_t kc = problem.candidates();
  if (kc > 12 || n > 5 || m > 4) throw InstanceTooLarge("brute force is limited to |V|<=12, N<=5, M<=4");
  check_dimensions(problem);
  if (n == 0) return {};
  const CostTensor& t = problem.tensor;
  const std::size_t max_size = std::min<std::size_t>(kc, static_cast<std::size_t>(problem.max_virtual_targets));

  std::optional<std::vector<Choice>> best;
  double best_cost = kInfCost;

  std::vector<std::size_t> map(n, 0);
  for (std::uint32_t mask = 1; mask < (1u << kc); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > max_size) continue;
    std::fill(map.begin(), map.end(), 0);
    while (true) {
      std::vector<bool> covered(m, false);
      for (auto j : map) covered[j] = true;
      if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
        std::vector<Choice> v(n);
        for (std::size_t i = 0; i < n; ++i) {
          std::size_t arg = kc;
          for (std::size_t k = 0; k < kc; ++k) {
            if (!(mask & (1u << k))) continue;
            if (arg == kc || t.cost(i, map[i], k) < t.cost(i, map[i], arg)) arg = k;
          }
          v[i] = {map[i], arg};
        }
        const double c = assignment_cost(t, v);
        if (!best || c < best_cost - kTieTol || (std::abs(c - best_cost) <= kTieTol && v < *best)) {
          best = v;
          best_cost = c;
        }
      }
      std::size_t pos = 0;
      while (pos < n && ++map[pos] == m) map[pos++] = 0;
      if (pos == n) break;
    }
  }
  if (!best) throw Infeasible("assignment problem has no feasible solution");
  return make_assignment(t, *best);
}

std::vector<std::string> check_feasible(const Assignment& a, const AssignmentProblem& p) {
  std::vector<std::string> out;
  const std::size_t n = p.pursuers(), m = p.evaders(), kc = p.candidates();

  if (a.choices.size() != n)
    out.push_back("assignment: expected one choice per pursuer (" + std::to_string(n) + "), got " +
                  std::to_string(a.choices.size()));

  std::vector<bool> covered(m, false);
  bool indices_ok = true;
  for (std::size_t i = 0; i < a.choices.size(); ++i) {
    const auto& c = a.choices[i];
    if (c.evader >= m || c.candidate >= kc) {
      out.push_back("assignment: pursuer " + std::to_string(i) + " has an out-of-range choice");
      indices_ok = false;
      continue;
    }
    covered[c.evader] = true;
  }
  for (std::size_t j = 0; j < m; ++j)
    if (!covered[j]) out.push_back("coverage: evader " + std::to_string(j) + " is not covered");

  std::set<std::size_t> active;
  for (auto k : a.active_vts) {
    if (k >= kc) out.push_back("binary: active virtual target " + std::to_string(k) + " is out of range");
    if (!active.insert(k).second)
      out.push_back("binary: virtual target " + std::to_string(k) + " listed twice");
  }
  for (std::size_t i = 0; i < a.choices.size(); ++i) {
    if (!active.contains(a.choices[i].candidate))
      out.push_back("activation: pursuer " + std::to_string(i) + " uses inactive virtual target " +
                    std::to_string(a.choices[i].candidate));
  }
  if (active.size() > static_cast<std::size_t>(p.max_virtual_targets))
    out.push_back("cap: " + std::to_string(active.size()) + " active virtual targets exceed M_V = " +
                  std::to_string(p.max_virtual_targets));

  if (indices_ok && a.choices.size() == n) {
    const double c = assignment_cost(p.tensor, a.choices);
    if (!(std::abs(c - a.total_cost) <= 1e-9))
      out.push_back("objective: total_cost " + std::to_string(a.total_cost) + " does not match the tensor sum " +
                    std::to_string(c));
  }
  return out;
}

std::string format_solve_report(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["status"] = r.status == SolveStatus::kOptimal ? "optimal" : "limit";
  j["optimal_cost"] = r.optimal_cost;
  j["best_bound"] = r.best_bound;
  j["gap"] = r.gap;
  j["nodes"] = r.nodes;
  j["lp_solves"] = r.lp_solves;
  j["lp_iterations"] = r.lp_iterations;
  j["wall_time_s"] = r.wall_time_s;
  return j.dump(2) + "\n";
}

}  // namespace vts
