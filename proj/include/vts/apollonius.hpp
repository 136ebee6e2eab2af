#pragma once

#include "vts/geometry.hpp"
#include "vts/scenario.hpp"

namespace vts {

/// Locus of points X with |X - vt| / |X - evader_at_t1| = 1 / mu.
struct ApolloniusCircle {
  Point2 origin;
  double radius{0.0};
  double mu{0.0};
  Point2 vt;            // pursuer focus
  Point2 evader_at_t1;  // evader focus
};

/// Geometry of one pursuer -> virtual target -> evader engagement.
///
/// Phase 1 runs from t = 0 to t1 along heading_phase1 (pursuer to VT); phase 2
/// runs from t1 to t_f along heading_phase2 and ends collocated with the evader
/// at `intercept`. Angles are in (-pi, pi] except theta, which is in [0, pi].
struct InterceptSolution {
  double t1{0.0};
  double t_f{0.0};
  Point2 evader_at_t1;
  double lambda{0.0};
  double sigma_e{0.0};
  double sigma_p{0.0};
  double heading_phase1{0.0};
  double heading_phase2{0.0};
  Point2 intercept;
  double dist_vt_to_intercept{0.0};
  double theta{kPi};
  ApolloniusCircle circle;
  bool degenerate{false};  // VT coincided with the propagated evader
};

/// Straight-line transit time. Throws InvalidSpeed when v_p <= 0.
double time_to_vt(const Point2& pursuer_pos, const Point2& vt, double v_p);

/// Constant-course evader position at time t. Throws NegativeTime when t < 0.
Point2 propagate_evader(const Evader& evader, double t);

/// Throws SpeedRatioOutOfRange unless 0 < mu < 1, DegenerateFoci when the
/// foci coincide.
ApolloniusCircle apollonius_circle(const Point2& vt, const Point2& evader_at_t1, double mu);

/// Full intercept geometry for one triple. Propagates DegenerateFoci.
InterceptSolution intercept(const Pursuer& pursuer, const Point2& vt, const Evader& evader);

/// Interior angle at the VT between the inbound and outbound legs. pi means
/// the pursuer flies straight through; 0 means a full reversal. Zero-length
/// legs give pi.
double turn_angle(const Point2& pursuer_pos, const Point2& vt, const Point2& intercept_pt);

/// acos/asin argument guard: clamps drift up to 1e-9, throws NumericalError beyond.
double clamp_unit(double value);

}  // namespace vts
