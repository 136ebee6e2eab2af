#include "vts/apollonius.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vts/errors.hpp"

namespace vts {

namespace {
constexpr double kUnitSlack = 1e-9;
constexpr double kZeroLeg = 1e-12;
}  // namespace

double clamp_unit(double value) {
  if (!(std::abs(value) <= 1.0 + kUnitSlack))
    throw NumericalError("trigonometric argument outside [-1, 1]: " + std::to_string(value));
  return std::clamp(value, -1.0, 1.0);
}

double time_to_vt(const Point2& pursuer_pos, const Point2& vt, double v_p) {
  if (!(v_p > 0.0)) throw InvalidSpeed("pursuer speed must be > 0");
  return distance(pursuer_pos, vt) / v_p;
}

Point2 propagate_evader(const Evader& evader, double t) {
  if (t < 0.0) throw NegativeTime("cannot propagate evader to negative time");
  return evader.position + (t * evader.speed) * unit(evader.heading);
}

ApolloniusCircle apollonius_circle(const Point2& vt, const Point2& evader_at_t1, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw SpeedRatioOutOfRange("speed ratio must lie in (0, 1)");
  const Point2 los = evader_at_t1 - vt;
  const double d = los.norm();
  if (d == 0.0) throw DegenerateFoci("virtual target coincides with the evader");

  const double lambda = std::atan2(los.y, los.x);
  const double denom = 1.0 - mu * mu;

  ApolloniusCircle c;
  c.mu = mu;
  c.vt = vt;
  c.evader_at_t1 = evader_at_t1;
  c.origin = evader_at_t1 + (mu * mu * d / denom) * unit(lambda);
  c.radius = mu * d / denom;
  return c;
}

double turn_angle(const Point2& pursuer_pos, const Point2& vt, const Point2& intercept_pt) {
  const Point2 back = pursuer_pos - vt;
  const Point2 out = intercept_pt - vt;
  const double nb = back.norm();
  const double no = out.norm();
  if (nb < kZeroLeg || no < kZeroLeg) return kPi;
  return std::acos(clamp_unit(back.dot(out) / (nb * no)));
}

InterceptSolution intercept(const Pursuer& pursuer, const Point2& vt, const Evader& evader) {
  const double mu = evader.speed / pursuer.speed;
  if (!(mu > 0.0 && mu < 1.0)) throw SpeedRatioOutOfRange("speed ratio must lie in (0, 1)");

  InterceptSolution s;
  s.t1 = time_to_vt(pursuer.position, vt, pursuer.speed);
  s.evader_at_t1 = propagate_evader(evader, s.t1);
  s.circle = apollonius_circle(vt, s.evader_at_t1, mu);

  const Point2 los = s.evader_at_t1 - vt;
  const double d = los.norm();
  s.lambda = std::atan2(los.y, los.x);
  s.sigma_e = wrap_angle(evader.heading - s.lambda);
  s.sigma_p = std::asin(clamp_unit(mu * std::sin(s.sigma_e)));

  const Point2 leg1 = vt - pursuer.position;
  s.heading_phase1 = std::atan2(leg1.y, leg1.x);
  s.heading_phase2 = wrap_angle(s.sigma_p + s.lambda);

  const double sin_e = std::sin(s.sigma_e);
  s.dist_vt_to_intercept =
      d / (1.0 - mu * mu) * (mu * std::cos(s.sigma_e) + std::sqrt(1.0 - mu * mu * sin_e * sin_e));
  s.intercept = vt + s.dist_vt_to_intercept * unit(s.sigma_p + s.lambda);
  s.t_f = s.t1 + s.dist_vt_to_intercept / pursuer.speed;
  s.theta = turn_angle(pursuer.position, vt, s.intercept);
  return s;
}

}  // namespace vts
