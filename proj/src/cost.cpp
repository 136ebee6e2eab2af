#include "vts/cost.hpp"

#include <algorithm>
#include <cmath>

#include "vts/errors.hpp"
#include "vts/format.hpp"

namespace vts {

CandidateSet lattice(const VTRegion& region, int n) {
  if (n < 1) throw InvalidGridSize("lattice side must be >= 1");
  CandidateSet out;
  out.lattice_side = n;
  if (n == 1) {
    out.points.push_back(region.center());
    return out;
  }
  auto coord = [n](double lo, double hi, int idx) {
    if (idx == n - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(idx) / static_cast<double>(n - 1);
  };
  out.points.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    const double y = coord(region.y_min, region.y_max, r);
    for (int c = 0; c < n; ++c) out.points.emplace_back(coord(region.x_min, region.x_max, c), y);
  }
  return out;
}

CandidateSet make_candidates(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  CandidateSet out;
  out.points = std::move(points);
  return out;
}

CostTensor::CostTensor(std::size_t pursuers, std::size_t evaders, std::size_t candidates)
    : n_(pursuers), m_(evaders), k_(candidates), costs_(pursuers * evaders * candidates, 0.0) {}

double triple_cost(const InterceptSolution& s, double turn_weight) {
  return turn_weight * (kPi - s.theta) + s.t_f;
}

InterceptSolution resolve_intercept(const Pursuer& pursuer, const Point2& vt, const Evader& evader) {
  try {
    return intercept(pursuer, vt, evader);
  } catch (const DegenerateFoci&) {
    InterceptSolution s;
    s.degenerate = true;
    s.t1 = time_to_vt(pursuer.position, vt, pursuer.speed);
    s.t_f = s.t1;
    s.evader_at_t1 = propagate_evader(evader, s.t1);
    s.intercept = vt;
    const Point2 leg1 = vt - pursuer.position;
    s.heading_phase1 = std::atan2(leg1.y, leg1.x);
    s.heading_phase2 = s.heading_phase1;
    s.theta = kPi;
    s.circle.mu = evader.speed / pursuer.speed;
    s.circle.vt = vt;
    s.circle.evader_at_t1 = s.evader_at_t1;
    s.circle.origin = vt;
    return s;
  }
}

CostTensor build_cost_tensor(const Scenario& scenario, const CandidateSet& candidates) {
  const std::size_t n = scenario.num_pursuers();
  const std::size_t m = scenario.num_evaders();
  const std::size_t kc = candidates.size();
  CostTensor t(n, m, kc);
  t.solutions_.resize(n * m * kc);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < kc; ++k) {
        const std::size_t idx = t.index(i, j, k);
        t.solutions_[idx] = resolve_intercept(scenario.pursuers[i], candidates.points[k], scenario.evaders[j]);
        t.costs_[idx] = triple_cost(t.solutions_[idx], scenario.turn_weight);
      }
    }
  }
  return t;
}

void write_tensor_csv(std::ostream& out, const CostTensor& t, const CandidateSet& candidates) {
  out << "i,j,k,x_vt,y_vt,t1,tf,theta,cost\n";
  for (std::size_t i = 0; i < t.pursuers(); ++i) {
    for (std::size_t j = 0; j < t.evaders(); ++j) {
      for (std::size_t k = 0; k < t.candidates(); ++k) {
        const Point2& vt = candidates.points[k];
        out << i << ',' << j << ',' << k << ',' << fmt_num(vt.x) << ',' << fmt_num(vt.y) << ',';
        if (t.has_solutions()) {
          const auto& s = t.solution(i, j, k);
          out << fmt_num(s.t1) << ',' << fmt_num(s.t_f) << ',' << fmt_num(s.theta);
        } else {
          out << ",,";
        }
        out << ',' << fmt_num(t.cost(i, j, k)) << '\n';
      }
    }
  }
}

}  // namespace vts
