#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vts/apollonius.hpp"
#include "vts/errors.hpp"

using namespace vts;

namespace {

// Evader placed so that it sits at `at_t1` when a pursuer at (-5, 0) with
// speed 1 reaches the VT at the origin (t1 = 5).
Evader evader_reaching(Point2 at_t1, double speed, double heading) {
  return {1, at_t1 - unit(heading) * (5.0 * speed), speed, heading};
}

const Pursuer kPursuer{1, {-5, 0}, 1.0};

}  // namespace

TEST_CASE("time_to_vt") {
  CHECK(time_to_vt({0, 1}, {3, 5}, 1.0) == 5.0);
  CHECK(time_to_vt({2, 2}, {2, 2}, 1.0) == 0.0);
  CHECK(time_to_vt({0, 0}, {10, 0}, 2.0) == 5.0);
  CHECK_THROWS_AS(time_to_vt({0, 0}, {1, 0}, 0.0), InvalidSpeed);
  CHECK_THROWS_AS(time_to_vt({0, 0}, {1, 0}, -1.0), InvalidSpeed);
}

TEST_CASE("propagate_evader") {
  const Evader e1{1, {20, 2}, 0.5, kPi};
  const Point2 p = propagate_evader(e1, 5.0);
  CHECK(p.x == doctest::Approx(17.5).epsilon(1e-15));
  CHECK(p.y == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(propagate_evader(e1, 0.0) == e1.position);
  const Point2 q = propagate_evader({2, {0, 0}, 1.0, kPi / 2}, 3.0);
  CHECK(std::abs(q.x) < 1e-15);
  CHECK(q.y == doctest::Approx(3.0));
  CHECK_THROWS_AS(propagate_evader(e1, -1e-3), NegativeTime);
}

TEST_CASE("apollonius_circle examples") {
  SUBCASE("on the x axis") {
    const auto c = apollonius_circle({0, 0}, {10, 0}, 0.5);
    CHECK(c.origin.x == doctest::Approx(40.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(c.origin.y) < 1e-14);
    CHECK(c.radius == doctest::Approx(20.0 / 3.0).epsilon(1e-14));
    // Both circle extremes hold the 2:1 distance ratio.
    for (double x : {20.0 / 3.0, 20.0}) CHECK(std::abs(x) / std::abs(x - 10.0) == doctest::Approx(2.0));
  }
  SUBCASE("on the y axis") {
    const auto c = apollonius_circle({0, 0}, {0, 6}, 0.5);
    CHECK(std::abs(c.origin.x) < 1e-14);
    CHECK(c.origin.y == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(c.radius == doctest::Approx(4.0).epsilon(1e-14));
  }
  SUBCASE("small mu holds the ratio on 16 points") {
    const auto c = apollonius_circle({0, 0}, {10, 0}, 0.1);
    for (int s = 0; s < 16; ++s) {
      const Point2 x = c.origin + unit(2 * kPi * s / 16) * c.radius;
      const double ratio = distance(x, c.vt) / distance(x, c.evader_at_t1);
      CHECK(std::abs(ratio - 10.0) < 1e-9 * 10.0);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(apollonius_circle({0, 0}, {1, 0}, 1.0), SpeedRatioOutOfRange);
    CHECK_THROWS_AS(apollonius_circle({0, 0}, {1, 0}, 0.0), SpeedRatioOutOfRange);
    CHECK_THROWS_AS(apollonius_circle({0, 0}, {1, 0}, 1.5), SpeedRatioOutOfRange);
    CHECK_THROWS_AS(apollonius_circle({1, 1}, {1, 1}, 0.5), DegenerateFoci);
  }
}

TEST_CASE("intercept examples") {
  SUBCASE("tail chase") {
    const auto s = intercept(kPursuer, {0, 0}, evader_reaching({10, 0}, 0.5, 0.0));
    CHECK(s.t1 == 5.0);
    CHECK(s.dist_vt_to_intercept == doctest::Approx(20.0).epsilon(1e-13));
    CHECK(s.intercept.x == doctest::Approx(20.0).epsilon(1e-13));
    CHECK(std::abs(s.intercept.y) < 1e-12);
    CHECK(s.theta == doctest::Approx(kPi));
  }
  SUBCASE("head on") {
    const auto s = intercept(kPursuer, {0, 0}, evader_reaching({10, 0}, 0.5, kPi));
    CHECK(s.dist_vt_to_intercept == doctest::Approx(20.0 / 3.0).epsilon(1e-13));
    CHECK(s.intercept.x == doctest::Approx(20.0 / 3.0).epsilon(1e-13));
  }
  SUBCASE("crossing") {
    const auto s = intercept(kPursuer, {0, 0}, evader_reaching({10, 0}, 0.5, kPi / 2));
    CHECK(s.sigma_e == doctest::Approx(kPi / 2));
    CHECK(s.sigma_p == doctest::Approx(kPi / 6));
    CHECK(s.dist_vt_to_intercept == doctest::Approx(11.547005383792516).epsilon(1e-12));
    CHECK(s.intercept.x == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s.intercept.y == doctest::Approx(5.773502691896258).epsilon(1e-12));
    CHECK(s.t_f == doctest::Approx(5.0 + 11.547005383792516));
    // Both agents advanced along fixed headings land on the same point.
    const Point2 p = Point2{0, 0} + unit(s.heading_phase2) * (s.t_f - s.t1);
    const Point2 e = s.evader_at_t1 + unit(kPi / 2) * (0.5 * (s.t_f - s.t1));
    CHECK(distance(p, e) < 1e-12);
  }
  SUBCASE("evader already at the VT is degenerate") {
    CHECK_THROWS_AS(intercept(kPursuer, {0, 0}, evader_reaching({0, 0}, 0.5, 1.0)), DegenerateFoci);
  }
  SUBCASE("faster evader rejected") {
    CHECK_THROWS_AS(intercept(kPursuer, {0, 0}, evader_reaching({10, 0}, 1.0, 0.0)), SpeedRatioOutOfRange);
  }
}

TEST_CASE("turn_angle") {
  CHECK(turn_angle({-5, 0}, {0, 0}, {5, 0}) == doctest::Approx(kPi));
  CHECK(turn_angle({0, -5}, {0, 0}, {5, 0}) == doctest::Approx(kPi / 2));
  CHECK(turn_angle({5, 0}, {0, 0}, {5, 0}) == doctest::Approx(0.0));
  CHECK(turn_angle({0, 0}, {0, 0}, {5, 0}) == kPi);
  CHECK(turn_angle({-1, 0}, {0, 0}, {0, 0}) == kPi);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10, 10), tiny(-1e-13, 1e-13);
  for (int n = 0; n < 2000; ++n) {
    // Near-collinear triples push the acos argument against +-1.
    const Point2 vt{u(rng), u(rng)};
    const Point2 dir = unit(u(rng));
    const double sign = n % 2 ? 1.0 : -1.0;
    const Point2 p = vt - dir * std::abs(u(rng)) + Point2{tiny(rng), tiny(rng)};
    const Point2 i = vt + dir * (sign * std::abs(u(rng))) + Point2{tiny(rng), tiny(rng)};
    const double th = turn_angle(p, vt, i);
    CHECK(th >= 0.0);
    CHECK(th <= kPi);
  }
}

TEST_CASE("random triples agree with the quadratic capture oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(-50, 50), ang(-kPi, kPi), mu(0.05, 0.95), vp(0.5, 3.0);
  for (int n = 0; n < 1000; ++n) {
    const Pursuer p{1, {pos(rng), pos(rng)}, vp(rng)};
    const Evader e{1, {pos(rng), pos(rng)}, mu(rng) * p.speed, ang(rng)};
    const Point2 vt{pos(rng), pos(rng)};
    const auto s = intercept(p, vt, e);
    const auto o = oracle::quadratic_capture(p.position, p.speed, vt, e.position, e.speed, e.heading);
    const double scale = 1.0 + o.intercept.norm();
    CHECK(std::abs(s.t1 - o.t1) < 1e-12 * (1.0 + o.t1));
    CHECK(distance(s.intercept, o.intercept) < 1e-9 * scale);
    CHECK(std::abs((s.t_f - s.t1) - o.tau) < 1e-9 * (1.0 + o.tau));

    // Intercept on the evader's forward ray.
    const Point2 rel = s.intercept - s.evader_at_t1;
    CHECK(std::abs(rel.x * std::sin(e.heading) - rel.y * std::cos(e.heading)) < 1e-9 * scale);
    CHECK(rel.dot(unit(e.heading)) >= -1e-9 * scale);
    // Equal intercept times for both agents.
    CHECK(std::abs((s.t_f - s.t1) * p.speed - s.dist_vt_to_intercept) < 1e-9 * scale);
    CHECK(std::abs((s.t_f - s.t1) * e.speed - rel.norm()) < 1e-9 * scale);
    // On the circle.
    CHECK(std::abs(distance(s.intercept, s.circle.origin) - s.circle.radius) < 1e-9 * scale);
    // Origin beyond the evader on the VT -> evader ray.
    const Point2 los = s.evader_at_t1 - vt;
    const Point2 off = s.circle.origin - s.evader_at_t1;
    CHECK(std::abs(los.x * off.y - los.y * off.x) < 1e-9 * scale * (1.0 + los.norm()));
    CHECK(los.dot(off) >= 0.0);
    CHECK(s.circle.radius == doctest::Approx(s.circle.mu * los.norm() / (1 - s.circle.mu * s.circle.mu)));
    // Turn angle matches the law of cosines.
    CHECK(std::abs(s.theta - oracle::law_of_cosines_angle(p.position, vt, s.intercept)) < 1e-6);
  }
}

TEST_CASE("phase-2 distance limits for aligned and opposed courses") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dd(0.1, 100.0), mm(0.05, 0.95);
  for (int n = 0; n < 100; ++n) {
    const double d = dd(rng), mu = mm(rng);
    const Pursuer p{1, {-1, 0}, 1.0};
    const Evader away{1, Point2{d, 0} - unit(0.0) * mu, mu, 0.0};
    const Evader toward{1, Point2{d, 0} - unit(kPi) * mu, mu, kPi};
    const auto a = intercept(p, {0, 0}, away);
    const auto b = intercept(p, {0, 0}, toward);
    CHECK(std::abs(a.dist_vt_to_intercept - d / (1 - mu)) < 1e-12 * (d / (1 - mu)));
    CHECK(std::abs(b.dist_vt_to_intercept - d / (1 + mu)) < 1e-12 * (d / (1 + mu)));
  }
}

TEST_CASE("clamp_unit") {
  CHECK(clamp_unit(1.0 + 1e-12) == 1.0);
  CHECK(clamp_unit(-1.0 - 1e-12) == -1.0);
  CHECK(clamp_unit(0.25) == 0.25);
  CHECK_THROWS_AS(clamp_unit(1.0 + 1e-6), NumericalError);
}
