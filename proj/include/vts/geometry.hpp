#pragma once

#include <cmath>
#include <numbers>

namespace vts {

inline constexpr double kPi = std::numbers::pi;

/// Planar position or displacement in distance units.
struct Point2 {
  double x{0.0};
  double y{0.0};

  constexpr Point2() = default;
  constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  constexpr Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
  friend constexpr Point2 operator*(double s, const Point2& p) { return {p.x * s, p.y * s}; }
  constexpr bool operator==(const Point2&) const = default;

  constexpr double dot(const Point2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(const Point2& a, const Point2& b) { return (a - b).norm(); }

/// Unit vector pointing along `angle` (radians, from +x).
inline Point2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

}  // namespace vts
