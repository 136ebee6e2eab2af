#include "vts/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace vts::lp {

int Problem::add_row(double lo, double hi) {
  row_lo.push_back(lo);
  row_hi.push_back(hi);
  return num_rows() - 1;
}

int Problem::add_column(double c, double lo, double hi, std::vector<Entry> entries) {
  cost.push_back(c);
  col_lo.push_back(lo);
  col_hi.push_back(hi);
  columns.push_back(std::move(entries));
  return num_cols() - 1;
}

namespace {

enum class At { kLower, kUpper, kFree, kBasic };

// Working form: [A  -I  art] z = 0 with the logical block carrying the row
// bounds. Artificial columns are +/- unit vectors that exist only to give
// phase 1 a feasible starting basis.
class Solver {
 public:
  Solver(const Problem& p, const Options& o) : p_(p), opt_(o), m_(p.num_rows()), n_(p.num_cols()) {}

  Solution run();

 private:
  int total() const { return static_cast<int>(lo_.size()); }

  // Column j of the working matrix, dense-free access.
  template <typename F>
  void for_column(int j, F&& f) const {
    if (j < n_) {
      for (const auto& e : p_.columns[j]) f(e.row, e.value);
    } else if (j < n_ + m_) {
      f(j - n_, -1.0);
    } else {
      f(art_row_[j - n_ - m_], art_sign_[j - n_ - m_]);
    }
  }

  void setup();
  bool refactor();
  void recompute_basic_values();
  void compute_duals(const std::vector<double>& cost);
  Status iterate(const std::vector<double>& cost, long& iterations);
  double objective(const std::vector<double>& cost) const;

  const Problem& p_;
  const Options& opt_;
  int m_;
  int n_;

  std::vector<double> lo_, hi_, value_;
  std::vector<At> at_;
  std::vector<int> basis_;      // row -> variable
  std::vector<int> art_row_;
  std::vector<double> art_sign_;
  std::vector<double> binv_;    // m x m, row-major
  std::vector<double> pi_;
  int since_refactor_{0};
};

void Solver::setup() {
  const int base = n_ + m_;
  lo_.assign(base, 0.0);
  hi_.assign(base, 0.0);
  value_.assign(base, 0.0);
  at_.assign(base, At::kLower);

  for (int j = 0; j < n_; ++j) {
    lo_[j] = p_.col_lo[j];
    hi_[j] = p_.col_hi[j];
    if (std::isfinite(lo_[j])) {
      at_[j] = At::kLower;
      value_[j] = lo_[j];
    } else if (std::isfinite(hi_[j])) {
      at_[j] = At::kUpper;
      value_[j] = hi_[j];
    } else {
      at_[j] = At::kFree;
      value_[j] = 0.0;
    }
  }

  std::vector<double> activity(m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    if (value_[j] == 0.0) continue;
    for (const auto& e : p_.columns[j]) activity[e.row] += e.value * value_[j];
  }

  basis_.assign(m_, -1);
  for (int r = 0; r < m_; ++r) {
    const int s = n_ + r;
    lo_[s] = p_.row_lo[r];
    hi_[s] = p_.row_hi[r];
    const double a = activity[r];
    if (a >= lo_[s] - opt_.feasibility_tol && a <= hi_[s] + opt_.feasibility_tol) {
      at_[s] = At::kBasic;
      value_[s] = a;
      basis_[r] = s;
      continue;
    }
    // Logical parks at the violated bound; an artificial absorbs the residual.
    const double bound = a < lo_[s] ? lo_[s] : hi_[s];
    at_[s] = a < lo_[s] ? At::kLower : At::kUpper;
    value_[s] = bound;
    // Row: activity - s + sign * art = 0  =>  art = (bound - activity) / sign.
    const double residual = bound - a;
    art_row_.push_back(r);
    art_sign_.push_back(residual > 0 ? 1.0 : -1.0);
    lo_.push_back(0.0);
    hi_.push_back(kInf);
    value_.push_back(std::abs(residual));
    at_.push_back(At::kBasic);
    basis_[r] = total() - 1;
  }
  refactor();
}

bool Solver::refactor() {
  // Gauss-Jordan inversion of the basis matrix with partial pivoting.
  std::vector<double> b(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    for_column(basis_[r], [&](int row, double v) { b[static_cast<std::size_t>(row) * m_ + r] = v; });
  }
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int r = 0; r < m_; ++r) binv_[static_cast<std::size_t>(r) * m_ + r] = 1.0;

  for (int c = 0; c < m_; ++c) {
    int piv = c;
    double best = std::abs(b[static_cast<std::size_t>(c) * m_ + c]);
    for (int r = c + 1; r < m_; ++r) {
      const double v = std::abs(b[static_cast<std::size_t>(r) * m_ + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-12) return false;
    if (piv != c) {
      for (int k = 0; k < m_; ++k) {
        std::swap(b[static_cast<std::size_t>(piv) * m_ + k], b[static_cast<std::size_t>(c) * m_ + k]);
        std::swap(binv_[static_cast<std::size_t>(piv) * m_ + k], binv_[static_cast<std::size_t>(c) * m_ + k]);
      }
    }
    const double inv = 1.0 / b[static_cast<std::size_t>(c) * m_ + c];
    for (int k = 0; k < m_; ++k) {
      b[static_cast<std::size_t>(c) * m_ + k] *= inv;
      binv_[static_cast<std::size_t>(c) * m_ + k] *= inv;
    }
    for (int r = 0; r < m_; ++r) {
      if (r == c) continue;
      const double f = b[static_cast<std::size_t>(r) * m_ + c];
      if (f == 0.0) continue;
      for (int k = 0; k < m_; ++k) {
        b[static_cast<std::size_t>(r) * m_ + k] -= f * b[static_cast<std::size_t>(c) * m_ + k];
        binv_[static_cast<std::size_t>(r) * m_ + k] -= f * binv_[static_cast<std::size_t>(c) * m_ + k];
      }
    }
  }
  since_refactor_ = 0;
  recompute_basic_values();
  return true;
}

void Solver::recompute_basic_values() {
  // B x_B = -N x_N
  std::vector<double> rhs(m_, 0.0);
  for (int j = 0; j < total(); ++j) {
    if (at_[j] == At::kBasic || value_[j] == 0.0) continue;
    for_column(j, [&](int row, double v) { rhs[row] -= v * value_[j]; });
  }
  for (int r = 0; r < m_; ++r) {
    double s = 0.0;
    const double* row = binv_.data() + static_cast<std::size_t>(r) * m_;
    for (int k = 0; k < m_; ++k) s += row[k] * rhs[k];
    value_[basis_[r]] = s;
  }
}

void Solver::compute_duals(const std::vector<double>& cost) {
  pi_.assign(m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    const double cb = cost[basis_[r]];
    if (cb == 0.0) continue;
    const double* row = binv_.data() + static_cast<std::size_t>(r) * m_;
    for (int k = 0; k < m_; ++k) pi_[k] += cb * row[k];
  }
}

double Solver::objective(const std::vector<double>& cost) const {
  double z = 0.0;
  for (int j = 0; j < total(); ++j) z += cost[j] * value_[j];
  return z;
}

Status Solver::iterate(const std::vector<double>& cost, long& iterations) {
  std::vector<double> alpha(m_);
  int degenerate_run = 0;

  while (true) {
    if (iterations >= opt_.max_iterations) return Status::kIterationLimit;
    compute_duals(cost);

    // Pricing: Dantzig, falling back to Bland's rule after a long degenerate run.
    const bool bland = degenerate_run > 50;
    int enter = -1;
    double enter_dir = 0.0;
    double best = 0.0;
    for (int j = 0; j < total(); ++j) {
      if (at_[j] == At::kBasic) continue;
      if (lo_[j] == hi_[j]) continue;
      double d = cost[j];
      for_column(j, [&](int row, double v) { d -= pi_[row] * v; });
      double dir = 0.0;
      if ((at_[j] == At::kLower || at_[j] == At::kFree) && d < -opt_.optimality_tol) dir = 1.0;
      else if ((at_[j] == At::kUpper || at_[j] == At::kFree) && d > opt_.optimality_tol) dir = -1.0;
      if (dir == 0.0) continue;
      if (bland) {
        enter = j;
        enter_dir = dir;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        enter = j;
        enter_dir = dir;
      }
    }
    if (enter < 0) return Status::kOptimal;

    // alpha = B^-1 a_enter
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for_column(enter, [&](int row, double v) {
      for (int r = 0; r < m_; ++r) alpha[r] += binv_[static_cast<std::size_t>(r) * m_ + row] * v;
    });

    // Ratio test (two-pass, Harris style). x_B moves by -dir * t * alpha.
    double t_max = hi_[enter] - lo_[enter];
    double relaxed = kInf;
    for (int r = 0; r < m_; ++r) {
      const double a = alpha[r];
      if (std::abs(a) <= opt_.pivot_tol) continue;
      const int b = basis_[r];
      const double rate = -enter_dir * a;
      if (rate < 0 && std::isfinite(lo_[b]))
        relaxed = std::min(relaxed, (value_[b] - lo_[b] + opt_.feasibility_tol) / -rate);
      else if (rate > 0 && std::isfinite(hi_[b]))
        relaxed = std::min(relaxed, (hi_[b] - value_[b] + opt_.feasibility_tol) / rate);
    }
    int leave = -1;
    double step = t_max;
    if (relaxed < t_max) {
      double best_pivot = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double a = alpha[r];
        if (std::abs(a) <= opt_.pivot_tol) continue;
        const int b = basis_[r];
        const double rate = -enter_dir * a;
        double ratio = kInf;
        if (rate < 0 && std::isfinite(lo_[b])) ratio = (value_[b] - lo_[b]) / -rate;
        else if (rate > 0 && std::isfinite(hi_[b])) ratio = (hi_[b] - value_[b]) / rate;
        if (ratio <= relaxed && std::abs(a) > best_pivot) {
          best_pivot = std::abs(a);
          leave = r;
          step = std::max(ratio, 0.0);
        }
      }
    }
    if (leave < 0 && !std::isfinite(step)) return Status::kUnbounded;

    ++iterations;
    degenerate_run = step <= opt_.feasibility_tol ? degenerate_run + 1 : 0;

    value_[enter] += enter_dir * step;
    for (int r = 0; r < m_; ++r) value_[basis_[r]] -= enter_dir * step * alpha[r];

    if (leave < 0) {
      // Bound flip of the entering variable.
      at_[enter] = enter_dir > 0 ? At::kUpper : At::kLower;
      value_[enter] = enter_dir > 0 ? hi_[enter] : lo_[enter];
      continue;
    }

    const int out = basis_[leave];
    const double rate = -enter_dir * alpha[leave];
    if (rate < 0) {
      at_[out] = At::kLower;
      value_[out] = lo_[out];
    } else {
      at_[out] = At::kUpper;
      value_[out] = hi_[out];
    }
    basis_[leave] = enter;
    at_[enter] = At::kBasic;

    // Rank-one update of the explicit inverse.
    const double piv = alpha[leave];
    double* prow = binv_.data() + static_cast<std::size_t>(leave) * m_;
    for (int k = 0; k < m_; ++k) prow[k] /= piv;
    for (int r = 0; r < m_; ++r) {
      if (r == leave || alpha[r] == 0.0) continue;
      double* row = binv_.data() + static_cast<std::size_t>(r) * m_;
      const double f = alpha[r];
      for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }

    if (++since_refactor_ >= opt_.refactor_interval) refactor();
  }
}

Solution Solver::run() {
  Solution sol;
  setup();
  long iterations = 0;

  const int artificials = static_cast<int>(art_row_.size());
  if (artificials > 0) {
    std::vector<double> phase1(total(), 0.0);
    for (int a = 0; a < artificials; ++a) phase1[n_ + m_ + a] = 1.0;
    const Status st = iterate(phase1, iterations);
    if (st == Status::kIterationLimit) {
      sol.status = st;
      sol.iterations = iterations;
      return sol;
    }
    refactor();
    if (objective(phase1) > opt_.feasibility_tol * std::max(1, m_)) {
      sol.status = Status::kInfeasible;
      sol.iterations = iterations;
      return sol;
    }
    // Artificials are pinned at zero from here on.
    for (int a = 0; a < artificials; ++a) {
      const int j = n_ + m_ + a;
      hi_[j] = 0.0;
      if (at_[j] != At::kBasic) {
        at_[j] = At::kLower;
        value_[j] = 0.0;
      }
    }
  }

  std::vector<double> cost(total(), 0.0);
  for (int j = 0; j < n_; ++j) cost[j] = p_.cost[j];
  const Status st = iterate(cost, iterations);
  refactor();
  compute_duals(cost);

  sol.status = st;
  sol.iterations = iterations;
  sol.x.assign(value_.begin(), value_.begin() + n_);
  sol.objective = 0.0;
  for (int j = 0; j < n_; ++j) sol.objective += p_.cost[j] * sol.x[j];
  sol.row_duals = pi_;
  return sol;
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  Solver s(problem, options);
  return s.run();
}

}  // namespace vts::lp
