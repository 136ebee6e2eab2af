#include <algorithm>
#include <sstream>

#include "vts/cli.hpp"
#include "vts/format.hpp"

namespace vts {
namespace {

// World to SVG: y is flipped so north is up.
struct Canvas {
  double x0, y0, x1, y1;
  double unit;  // stroke/marker scale

  std::string x(double v) const { return fmt_fixed(v, 4); }
  std::string y(double v) const { return fmt_fixed(-v, 4); }
  std::string len(double v) const { return fmt_fixed(v, 4); }
};

void grow(double& lo, double& hi, double v) {
  lo = std::min(lo, v);
  hi = std::max(hi, v);
}

}  // namespace

std::string render_svg(const Scenario& scenario, const CandidateSet& candidates, const Assignment& assignment) {
  std::vector<InterceptSolution> sols;
  for (std::size_t i = 0; i < assignment.choices.size(); ++i) {
    const auto& c = assignment.choices[i];
    sols.push_back(resolve_intercept(scenario.pursuers[i], candidates.points[c.candidate], scenario.evaders[c.evader]));
  }
  double horizon = 0.0;
  for (const auto& s : sols) horizon = std::max(horizon, s.t_f);

  const auto& r = scenario.region;
  double x0 = r.x_min, x1 = r.x_max, y0 = r.y_min, y1 = r.y_max;
  for (const auto& p : scenario.pursuers) {
    grow(x0, x1, p.position.x);
    grow(y0, y1, p.position.y);
  }
  for (const auto& e : scenario.evaders) {
    const Point2 end = propagate_evader(e, horizon);
    grow(x0, x1, e.position.x);
    grow(y0, y1, e.position.y);
    grow(x0, x1, end.x);
    grow(y0, y1, end.y);
  }
  for (const auto& s : sols) {
    grow(x0, x1, s.intercept.x);
    grow(y0, y1, s.intercept.y);
    if (s.circle.radius > 0.0) {
      grow(x0, x1, s.circle.origin.x - s.circle.radius);
      grow(x0, x1, s.circle.origin.x + s.circle.radius);
      grow(y0, y1, s.circle.origin.y - s.circle.radius);
      grow(y0, y1, s.circle.origin.y + s.circle.radius);
    }
  }
  const double extent = std::max({x1 - x0, y1 - y0, 1e-6});
  const double pad = 0.05 * extent;
  Canvas cv{x0 - pad, y0 - pad, x1 + pad, y1 + pad, extent / 200.0};

  const double w = cv.x1 - cv.x0, h = cv.y1 - cv.y0;
  const double px_w = 800.0, px_h = std::max(200.0, std::min(1600.0, 800.0 * h / w));

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_fixed(px_w, 0) << "\" height=\""
    << fmt_fixed(px_h, 0) << "\" viewBox=\"" << cv.x(cv.x0) << ' ' << cv.y(cv.y1) << ' ' << cv.len(w) << ' '
    << cv.len(h) << "\" preserveAspectRatio=\"xMidYMid meet\">\n";
  s << "<rect x=\"" << cv.x(cv.x0) << "\" y=\"" << cv.y(cv.y1) << "\" width=\"" << cv.len(w) << "\" height=\""
    << cv.len(h) << "\" fill=\"white\"/>\n";

  s << "<g id=\"region\"><rect x=\"" << cv.x(r.x_min) << "\" y=\"" << cv.y(r.y_max) << "\" width=\""
    << cv.len(r.x_max - r.x_min) << "\" height=\"" << cv.len(r.y_max - r.y_min)
    << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"" << cv.len(cv.unit * 0.5) << "\" stroke-dasharray=\""
    << cv.len(cv.unit * 3) << "\"/></g>\n";

  s << "<g id=\"lattice\" fill=\"#bbbbbb\" fill-opacity=\"0.5\">\n";
  for (const auto& p : candidates.points)
    s << "<circle cx=\"" << cv.x(p.x) << "\" cy=\"" << cv.y(p.y) << "\" r=\"" << cv.len(cv.unit * 0.6) << "\"/>\n";
  s << "</g>\n";

  s << "<g id=\"evader-courses\" stroke=\"#cc3333\" stroke-width=\"" << cv.len(cv.unit * 0.6)
    << "\" stroke-dasharray=\"" << cv.len(cv.unit * 2) << "\">\n";
  for (const auto& e : scenario.evaders) {
    const Point2 end = propagate_evader(e, horizon);
    s << "<line x1=\"" << cv.x(e.position.x) << "\" y1=\"" << cv.y(e.position.y) << "\" x2=\"" << cv.x(end.x)
      << "\" y2=\"" << cv.y(end.y) << "\"/>\n";
  }
  s << "</g>\n";

  s << "<g id=\"apollonius\" fill=\"none\" stroke=\"#6699cc\" stroke-width=\"" << cv.len(cv.unit * 0.5) << "\">\n";
  for (const auto& sol : sols)
    if (sol.circle.radius > 0.0)
      s << "<circle cx=\"" << cv.x(sol.circle.origin.x) << "\" cy=\"" << cv.y(sol.circle.origin.y) << "\" r=\""
        << cv.len(sol.circle.radius) << "\"/>\n";
  s << "</g>\n";

  s << "<g id=\"paths\" stroke-width=\"" << cv.len(cv.unit) << "\">\n";
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const Point2& p0 = scenario.pursuers[i].position;
    const Point2& vt = candidates.points[assignment.choices[i].candidate];
    const Point2& ip = sols[i].intercept;
    s << "<line class=\"phase1\" stroke=\"#2255aa\" x1=\"" << cv.x(p0.x) << "\" y1=\"" << cv.y(p0.y) << "\" x2=\""
      << cv.x(vt.x) << "\" y2=\"" << cv.y(vt.y) << "\"/>\n";
    s << "<line class=\"phase2\" stroke=\"#22883a\" x1=\"" << cv.x(vt.x) << "\" y1=\"" << cv.y(vt.y) << "\" x2=\""
      << cv.x(ip.x) << "\" y2=\"" << cv.y(ip.y) << "\"/>\n";
  }
  s << "</g>\n";

  s << "<g id=\"active-vts\" fill=\"#ff9900\" stroke=\"black\" stroke-width=\"" << cv.len(cv.unit * 0.4) << "\">\n";
  for (auto k : assignment.active_vts) {
    const Point2& p = candidates.points[k];
    s << "<circle cx=\"" << cv.x(p.x) << "\" cy=\"" << cv.y(p.y) << "\" r=\"" << cv.len(cv.unit * 2.5) << "\"/>\n";
  }
  s << "</g>\n";

  s << "<g id=\"intercepts\" stroke=\"black\" stroke-width=\"" << cv.len(cv.unit * 0.6) << "\">\n";
  const double d = cv.unit * 2;
  for (const auto& sol : sols) {
    const Point2& p = sol.intercept;
    s << "<path d=\"M" << cv.x(p.x - d) << ',' << cv.y(p.y - d) << " L" << cv.x(p.x + d) << ',' << cv.y(p.y + d)
      << " M" << cv.x(p.x - d) << ',' << cv.y(p.y + d) << " L" << cv.x(p.x + d) << ',' << cv.y(p.y - d)
      << "\"/>\n";
  }
  s << "</g>\n";

  const std::string font = cv.len(cv.unit * 6);
  s << "<g id=\"pursuers\" fill=\"#2255aa\">\n";
  for (const auto& p : scenario.pursuers) {
    s << "<circle cx=\"" << cv.x(p.position.x) << "\" cy=\"" << cv.y(p.position.y) << "\" r=\""
      << cv.len(cv.unit * 2) << "\"/>\n";
    s << "<text x=\"" << cv.x(p.position.x + cv.unit * 3) << "\" y=\"" << cv.y(p.position.y + cv.unit * 3)
      << "\" font-size=\"" << font << "\">P" << p.id << "</text>\n";
  }
  s << "</g>\n";
  s << "<g id=\"evaders\" fill=\"#cc3333\">\n";
  for (const auto& e : scenario.evaders) {
    const double half = cv.unit * 2;
    s << "<rect x=\"" << cv.x(e.position.x - half) << "\" y=\"" << cv.y(e.position.y + half) << "\" width=\""
      << cv.len(2 * half) << "\" height=\"" << cv.len(2 * half) << "\"/>\n";
    s << "<text x=\"" << cv.x(e.position.x + cv.unit * 3) << "\" y=\"" << cv.y(e.position.y + cv.unit * 3)
      << "\" font-size=\"" << font << "\">E" << e.id << "</text>\n";
  }
  s << "</g>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace vts
