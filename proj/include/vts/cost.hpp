#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "vts/apollonius.hpp"
#include "vts/scenario.hpp"

namespace vts {

/// Discrete candidate virtual-target locations, ordered row-major by y then x.
struct CandidateSet {
  std::vector<Point2> points;
  std::optional<int> lattice_side;

  std::size_t size() const { return points.size(); }
};

/// n x n uniform lattice spanning the region corners; n = 1 gives the center.
CandidateSet lattice(const VTRegion& region, int n);

/// Builds a candidate set from arbitrary points: sorts row-major (y, then x)
/// and drops exact duplicates.
CandidateSet make_candidates(std::vector<Point2> points);

/// Dense pursuer x evader x candidate cost array with the per-triple geometry.
/// Storage is k-contiguous for each (i, j) pair.
class CostTensor {
 public:
  CostTensor() = default;
  CostTensor(std::size_t pursuers, std::size_t evaders, std::size_t candidates);

  std::size_t pursuers() const { return n_; }
  std::size_t evaders() const { return m_; }
  std::size_t candidates() const { return k_; }

  double cost(std::size_t i, std::size_t j, std::size_t k) const { return costs_[index(i, j, k)]; }
  double& cost(std::size_t i, std::size_t j, std::size_t k) { return costs_[index(i, j, k)]; }

  /// Cached geometry; absent for tensors built directly from numbers.
  bool has_solutions() const { return !solutions_.empty(); }
  const InterceptSolution& solution(std::size_t i, std::size_t j, std::size_t k) const {
    return solutions_[index(i, j, k)];
  }

  /// The k-row for one (pursuer, evader) pair.
  const double* row(std::size_t i, std::size_t j) const { return costs_.data() + index(i, j, 0); }

  const std::vector<double>& raw() const { return costs_; }

 private:
  friend CostTensor build_cost_tensor(const Scenario&, const CandidateSet&);

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * m_ + j) * k_ + k; }

  std::size_t n_{0};
  std::size_t m_{0};
  std::size_t k_{0};
  std::vector<double> costs_;
  std::vector<InterceptSolution> solutions_;
};

/// Energy of one triple: turn_weight * (pi - theta) + t_f, where t_f already
/// contains the phase-1 time t1.
double triple_cost(const InterceptSolution& s, double turn_weight);

/// Intercept geometry with the coincident-foci case resolved: the capture
/// happens at the VT at t1 and theta is taken as pi.
InterceptSolution resolve_intercept(const Pursuer& pursuer, const Point2& vt, const Evader& evader);

CostTensor build_cost_tensor(const Scenario& scenario, const CandidateSet& candidates);

/// CSV `i,j,k,x_vt,y_vt,t1,tf,theta,cost` in (i, j, k) order.
void write_tensor_csv(std::ostream& out, const CostTensor& tensor, const CandidateSet& candidates);

}  // namespace vts
