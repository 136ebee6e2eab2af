#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "vts/assign.hpp"
#include "vts/cost.hpp"
#include "vts/scenario.hpp"

namespace vts {

enum class Role { kPursuer, kEvader };

struct Sample {
  double t{0.0};
  Point2 position;
};

struct Trajectory {
  Role role{Role::kPursuer};
  int id{0};
  std::vector<Sample> samples;  // strictly increasing t
};

struct CaptureRecord {
  int pursuer_id{0};
  int evader_id{0};
  std::size_t evader{0};
  std::size_t candidate{0};
  double t1{0.0};
  double t_f{0.0};
  Point2 position_at_t1;
  Point2 position_at_tf;
  Point2 evader_at_tf;
  double miss_at_vt{0.0};
  double miss_at_intercept{0.0};
  bool pass{false};
};

struct CaptureReport {
  std::vector<CaptureRecord> pursuers;
  double tolerance{1e-6};
  /// Closest approach between any two pursuers while both are in flight;
  /// informational only.
  double min_pursuer_separation{0.0};
};

struct SimOptions {
  double dt{0.01};
  double tolerance{1e-6};
  /// Cap on active VTs used for the feasibility check; 0 takes the scenario's.
  int max_virtual_targets{0};
};

struct SimResult {
  std::vector<Trajectory> trajectories;  // pursuers then evaders, by index
  CaptureReport report;
};

/// Flies every pursuer along its two straight legs and every evader along its
/// course. Motion is advanced in closed form, so dt only sets the sampling
/// density; t1 and t_f are always sampled exactly. Throws InfeasibleAssignment
/// if the assignment fails check_feasible and Error if dt <= 0.
SimResult simulate(const Scenario& scenario, const CandidateSet& candidates, const Assignment& assignment,
                   const SimOptions& options = {});

/// True iff every miss distance is strictly below tol.
bool verify_capture(const CaptureReport& report, double tol);

/// CSV `role,id,t,x,y` sorted by role, id, t.
void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& trajectories);

/// CSV with one row per pursuer.
void write_capture_csv(std::ostream& out, const CaptureReport& report);

}  // namespace vts
