#include "vts/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vts/errors.hpp"
#include "vts/format.hpp"

namespace vts {
namespace {

// Two straight legs, holding at the intercept after t_f.
struct Leg {
  Point2 start;
  Point2 at_t1;
  Point2 velocity1;
  Point2 velocity2;
  double t1{0.0};
  double t_f{0.0};

  Point2 at(double t) const {
    if (t <= t1) return start + velocity1 * t;
    return at_t1 + velocity2 * (std::min(t, t_f) - t1);
  }
};

// Sample times 0, dt, 2dt, ... up to `end`, with the events merged in exactly.
std::vector<double> sample_times(double dt, double end, std::vector<double> events) {
  std::vector<double> times;
  const auto steps = static_cast<long long>(std::floor(end / dt));
  for (long long s = 0; s <= steps; ++s) times.push_back(static_cast<double>(s) * dt);
  events.push_back(0.0);
  events.push_back(end);
  std::sort(events.begin(), events.end());
  std::vector<double> merged;
  std::size_t e = 0;
  for (double t : times) {
    while (e < events.size() && events[e] <= t + 1e-12) merged.push_back(events[e++]);
    if (t > end) break;
    if (merged.empty() || t > merged.back() + 1e-12) merged.push_back(t);
  }
  while (e < events.size()) merged.push_back(events[e++]);
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  while (!merged.empty() && merged.back() > end) merged.pop_back();
  return merged;
}

// Distance from the origin to the segment a -> b.
double segment_min_norm(const Point2& a, const Point2& b) {
  const Point2 d = b - a;
  const double len2 = d.dot(d);
  if (len2 == 0.0) return a.norm();
  const double s = std::clamp(-a.dot(d) / len2, 0.0, 1.0);
  return (a + d * s).norm();
}

// Closest approach while both pursuers are still flying.
double closest_approach(const Leg& a, const Leg& b) {
  const double end = std::min(a.t_f, b.t_f);
  std::vector<double> cuts{0.0, end};
  for (double t : {a.t1, b.t1})
    if (t < end) cuts.push_back(t);
  std::sort(cuts.begin(), cuts.end());
  double best = (a.at(0.0) - b.at(0.0)).norm();
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double s = cuts[c], e = cuts[c + 1];
    best = std::min(best, segment_min_norm(a.at(s) - b.at(s), a.at(e) - b.at(e)));
  }
  return best;
}

}  // namespace

SimResult simulate(const Scenario& scenario, const CandidateSet& candidates, const Assignment& assignment,
                   const SimOptions& options) {
  if (!(options.dt > 0.0)) throw Error("simulate: dt must be > 0");
  const CostTensor tensor = build_cost_tensor(scenario, candidates);
  const int mv = options.max_virtual_targets > 0 ? options.max_virtual_targets : scenario.max_virtual_targets;
  const auto violations = check_feasible(assignment, AssignmentProblem{tensor, mv});
  if (!violations.empty()) {
    std::string msg = "assignment is infeasible:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw InfeasibleAssignment(msg);
  }

  SimResult result;
  result.report.tolerance = options.tolerance;
  std::vector<Leg> legs;
  double horizon = 0.0;

  for (std::size_t i = 0; i < scenario.num_pursuers(); ++i) {
    const Pursuer& p = scenario.pursuers[i];
    const Choice& c = assignment.choices[i];
    const Evader& e = scenario.evaders[c.evader];
    const InterceptSolution& s = tensor.solution(i, c.evader, c.candidate);

    Leg leg;
    leg.start = p.position;
    leg.t1 = s.t1;
    leg.t_f = s.t_f;
    leg.velocity1 = unit(s.heading_phase1) * p.speed;
    leg.velocity2 = unit(s.heading_phase2) * p.speed;
    leg.at_t1 = leg.start + leg.velocity1 * leg.t1;
    legs.push_back(leg);
    horizon = std::max(horizon, s.t_f);

    Trajectory tr{Role::kPursuer, p.id, {}};
    for (double t : sample_times(options.dt, s.t_f, {s.t1, s.t_f})) tr.samples.push_back({t, leg.at(t)});
    result.trajectories.push_back(std::move(tr));

    CaptureRecord rec;
    rec.pursuer_id = p.id;
    rec.evader_id = e.id;
    rec.evader = c.evader;
    rec.candidate = c.candidate;
    rec.t1 = s.t1;
    rec.t_f = s.t_f;
    rec.position_at_t1 = leg.at(s.t1);
    rec.position_at_tf = leg.at(s.t_f);
    rec.evader_at_tf = propagate_evader(e, s.t_f);
    rec.miss_at_vt = distance(rec.position_at_t1, candidates.points[c.candidate]);
    rec.miss_at_intercept = distance(rec.position_at_tf, rec.evader_at_tf);
    rec.pass = rec.miss_at_vt < options.tolerance && rec.miss_at_intercept < options.tolerance;
    result.report.pursuers.push_back(rec);
  }

  std::vector<double> all_events;
  for (const auto& leg : legs) {
    all_events.push_back(leg.t1);
    all_events.push_back(leg.t_f);
  }
  for (const Evader& e : scenario.evaders) {
    Trajectory tr{Role::kEvader, e.id, {}};
    for (double t : sample_times(options.dt, horizon, all_events)) tr.samples.push_back({t, propagate_evader(e, t)});
    result.trajectories.push_back(std::move(tr));
  }

  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < legs.size(); ++a)
    for (std::size_t b = a + 1; b < legs.size(); ++b) sep = std::min(sep, closest_approach(legs[a], legs[b]));
  result.report.min_pursuer_separation = std::isfinite(sep) ? sep : 0.0;
  return result;
}

bool verify_capture(const CaptureReport& report, double tol) {
  return std::all_of(report.pursuers.begin(), report.pursuers.end(),
                     [tol](const CaptureRecord& r) { return r.miss_at_vt < tol && r.miss_at_intercept < tol; });
}

void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& trajectories) {
  std::vector<const Trajectory*> order;
  for (const auto& t : trajectories) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](const Trajectory* a, const Trajectory* b) {
    if (a->role != b->role) return a->role < b->role;
    return a->id < b->id;
  });
  out << "role,id,t,x,y\n";
  for (const Trajectory* tr : order) {
    const char* role = tr->role == Role::kPursuer ? "pursuer" : "evader";
    for (const auto& s : tr->samples)
      out << role << ',' << tr->id << ',' << fmt_num(s.t) << ',' << fmt_num(s.position.x) << ','
          << fmt_num(s.position.y) << '\n';
  }
}

void write_capture_csv(std::ostream& out, const CaptureReport& report) {
  out << "pursuer_id,evader_id,candidate,t1,tf,miss_at_vt,miss_at_intercept,pass\n";
  for (const auto& r : report.pursuers)
    out << r.pursuer_id << ',' << r.evader_id << ',' << r.candidate << ',' << fmt_num(r.t1) << ','
        << fmt_num(r.t_f) << ',' << fmt_num(r.miss_at_vt) << ',' << fmt_num(r.miss_at_intercept) << ','
        << (r.pass ? "true" : "false") << '\n';
}

}  // namespace vts
