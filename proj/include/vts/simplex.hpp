#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace vts::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// min c'x  s.t.  row_lo <= A x <= row_hi,  col_lo <= x <= col_hi.
/// A is stored column-wise.
struct Problem {
  struct Entry {
    int row;
    double value;
  };

  std::vector<double> cost;
  std::vector<double> col_lo;
  std::vector<double> col_hi;
  std::vector<std::vector<Entry>> columns;
  std::vector<double> row_lo;
  std::vector<double> row_hi;

  int add_row(double lo, double hi);
  int add_column(double c, double lo, double hi, std::vector<Entry> entries);
  int num_rows() const { return static_cast<int>(row_lo.size()); }
  int num_cols() const { return static_cast<int>(cost.size()); }
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Options {
  long max_iterations{200000};
  double feasibility_tol{1e-9};
  double optimality_tol{1e-9};
  double pivot_tol{1e-9};
  int refactor_interval{64};
};

struct Solution {
  Status status{Status::kIterationLimit};
  double objective{0.0};
  std::vector<double> x;
  /// d(objective)/d(row bound): >= 0 on binding lower bounds, <= 0 on binding upper bounds.
  std::vector<double> row_duals;
  long iterations{0};
};

/// Two-phase bounded-variable revised simplex with an explicit dense basis
/// inverse. Intended for the small restricted master problems of the
/// assignment solver (a few hundred rows).
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace vts::lp
