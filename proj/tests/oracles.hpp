#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "vts/assign.hpp"
#include "vts/geometry.hpp"

namespace oracle {

struct Capture {
  double t1;
  double tau;  // phase-2 duration
  vts::Point2 evader_at_t1;
  vts::Point2 intercept;
};

// Phase 2 solved as the positive root of |r + w tau| = v_p tau, with r the
// line of sight VT -> evader at t1 and w the evader velocity.
inline Capture quadratic_capture(vts::Point2 p0, double vp, vts::Point2 vt, vts::Point2 e0, double ve,
                                 double heading) {
  Capture c{};
  c.t1 = std::hypot(vt.x - p0.x, vt.y - p0.y) / vp;
  const double wx = ve * std::cos(heading), wy = ve * std::sin(heading);
  c.evader_at_t1 = {e0.x + wx * c.t1, e0.y + wy * c.t1};
  const double rx = c.evader_at_t1.x - vt.x, ry = c.evader_at_t1.y - vt.y;
  const double a = ve * ve - vp * vp;  // < 0
  const double b = 2.0 * (rx * wx + ry * wy);
  const double cc = rx * rx + ry * ry;
  const double disc = b * b - 4.0 * a * cc;
  // a < 0 and cc >= 0: exactly one nonnegative root.
  c.tau = (-b - std::sqrt(disc)) / (2.0 * a);
  c.intercept = {c.evader_at_t1.x + wx * c.tau, c.evader_at_t1.y + wy * c.tau};
  return c;
}

// Interior angle at the VT from the three side lengths.
inline double law_of_cosines_angle(vts::Point2 p, vts::Point2 vt, vts::Point2 i) {
  const double a = std::hypot(vt.x - p.x, vt.y - p.y);
  const double b = std::hypot(i.x - vt.x, i.y - vt.y);
  const double c = std::hypot(i.x - p.x, i.y - p.y);
  if (a == 0.0 || b == 0.0) return vts::kPi;
  const double arg = (a * a + b * b - c * c) / (2.0 * a * b);
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

// Cheapest integer solution satisfying a node's fixings, found by
// enumerating every choice vector. Infinity when the node is empty.
inline double best_under_fixings(const vts::CostTensor& t, int mv, const vts::NodeTrace& node) {
  const std::size_t n = t.pursuers(), m = t.evaders(), k = t.candidates();
  const std::size_t per = m * k;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> code(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      code[i] = rest % per;
      rest /= per;
    }
    std::vector<bool> used(k, false), covered(m, false);
    bool ok = true;
    double cost = 0.0;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const std::size_t j = code[i] / k, kk = code[i] % k;
      if (node.forced_evader[i] >= 0 &&
          (static_cast<std::size_t>(node.forced_evader[i]) != j ||
           static_cast<std::size_t>(node.forced_candidate[i]) != kk))
        ok = false;
      used[kk] = true;
      covered[j] = true;
      cost += t.cost(i, j, kk);
    }
    if (!ok) continue;
    if (!std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) continue;
    for (auto z : node.fixed_zero)
      if (used[z]) ok = false;
    if (!ok) continue;
    for (auto o : node.fixed_one) used[o] = true;
    if (static_cast<int>(std::count(used.begin(), used.end(), true)) > mv) continue;
    best = std::min(best, cost);
  }
  return best;
}

inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t s = 0; s < idx.size();) {
    std::size_t e = s;
    while (e + 1 < idx.size() && v[idx[e + 1]] == v[idx[s]]) ++e;
    const double avg = 0.5 * static_cast<double>(s + e) + 1.0;
    for (std::size_t q = s; q <= e; ++q) r[idx[q]] = avg;
    s = e + 1;
  }
  return r;
}

// Spearman rank correlation (Pearson on average ranks).
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline vts::CostTensor random_tensor(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t k,
                                     bool integer_costs = false) {
  vts::CostTensor t(n, m, k);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t c = 0; c < k; ++c) t.cost(i, j, c) = integer_costs ? static_cast<double>(rng() % 4) : u(rng);
  return t;
}

}  // namespace oracle
