#include "gevrey/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gevrey {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 360.0;
constexpr double kPad = 48.0;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

struct Scale {
  double x0, x1, y0, y1;
  double px(double x) const {
    double span = x1 > x0 ? x1 - x0 : 1.0;
    return kPad + (x - x0) / span * (kWidth - 2 * kPad);
  }
  double py(double y) const {
    double span = y1 > y0 ? y1 - y0 : 1.0;
    return kHeight - kPad - (y - y0) / span * (kHeight - 2 * kPad);
  }
};

void header(std::ostringstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (int)kWidth << "\" height=\""
      << (int)kHeight << "\" viewBox=\"0 0 " << (int)kWidth << " " << (int)kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& out) {
  out << "<line x1=\"" << fmt(kPad) << "\" y1=\"" << fmt(kHeight - kPad) << "\" x2=\""
      << fmt(kWidth - kPad) << "\" y2=\"" << fmt(kHeight - kPad)
      << "\" stroke=\"#444\" stroke-width=\"1\"/>\n"
      << "<line x1=\"" << fmt(kPad) << "\" y1=\"" << fmt(kPad) << "\" x2=\"" << fmt(kPad)
      << "\" y2=\"" << fmt(kHeight - kPad) << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string polygon_svg(const NewtonPolygon& poly) {
  std::ostringstream out;
  header(out);
  if (poly.points.empty()) {
    out << "</svg>\n";
    return out.str();
  }
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool first = true;
  for (const auto& pt : poly.points) {
    double x = pt.i, y = pt.y.get_d();
    if (first) { x0 = x1 = x; y0 = y1 = y; first = false; }
    x0 = std::min(x0, x); x1 = std::max(x1, x);
    y0 = std::min(y0, y); y1 = std::max(y1, y);
  }
  if (x1 - x0 < 1) x1 = x0 + 1;
  if (y1 - y0 < 1) { y0 -= 0.5; y1 += 0.5; }
  Scale sc{x0, x1, y0, y1};
  axes(out);
  // boundary
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t j = 0; j < poly.vertices.size(); ++j) {
    if (j) out << ' ';
    out << fmt(sc.px(poly.vertices[j].i)) << ',' << fmt(sc.py(poly.vertices[j].y.get_d()));
  }
  out << "\"/>\n";
  // the least positive slope, when present, drawn thicker
  for (const auto& e : poly.edges) {
    if (!poly.k || e.slope != *poly.k) continue;
    const auto& a = poly.vertices[e.from];
    const auto& b = poly.vertices[e.to];
    out << "<line x1=\"" << fmt(sc.px(a.i)) << "\" y1=\"" << fmt(sc.py(a.y.get_d()))
        << "\" x2=\"" << fmt(sc.px(b.i)) << "\" y2=\"" << fmt(sc.py(b.y.get_d()))
        << "\" stroke=\"#d62728\" stroke-width=\"3\"/>\n";
  }
  for (const auto& pt : poly.points) {
    out << "<circle cx=\"" << fmt(sc.px(pt.i)) << "\" cy=\"" << fmt(sc.py(pt.y.get_d()))
        << "\" r=\"3.5\" fill=\"#333\"/>\n";
  }
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kHeight - 12)
      << "\" font-size=\"12\" text-anchor=\"middle\">i</text>\n"
      << "<text x=\"14\" y=\"" << fmt(kHeight / 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fmt(kHeight / 2) << ")\">Re val</text>\n</svg>\n";
  return out.str();
}

std::string growth_svg(const std::vector<NormalizedTerm>& terms, const GrowthFit& fit) {
  std::ostringstream out;
  header(out);
  std::vector<std::pair<double, double>> pts;
  for (const auto& t : terms)
    if (t.re_s > 0 && std::isfinite(t.log_abs_d)) pts.emplace_back(t.re_s, t.log_abs_d);
  if (pts.size() < 2) {
    out << "</svg>\n";
    return out.str();
  }
  double x0 = pts[0].first, x1 = x0, y0 = pts[0].second, y1 = y0;
  for (const auto& [x, y] : pts) {
    x0 = std::min(x0, x); x1 = std::max(x1, x);
    y0 = std::min(y0, y); y1 = std::max(y1, y);
  }
  if (x1 - x0 <= 0) x1 = x0 + 1;
  if (y1 - y0 <= 0) { y0 -= 1; y1 += 1; }
  Scale sc{x0, x1, y0, y1};
  axes(out);
  for (const auto& [x, y] : pts)
    out << "<circle cx=\"" << fmt(sc.px(x)) << "\" cy=\"" << fmt(sc.py(y))
        << "\" r=\"2\" fill=\"#1f77b4\"/>\n";
  // envelope line log A + (log B) x, clipped to the data window
  auto eval = [&](double x) { return fit.log_a + fit.log_b * x; };
  out << "<line x1=\"" << fmt(sc.px(x0)) << "\" y1=\""
      << fmt(sc.py(std::clamp(eval(x0), y0 - 1, y1 + 1))) << "\" x2=\"" << fmt(sc.px(x1))
      << "\" y2=\"" << fmt(sc.py(std::clamp(eval(x1), y0 - 1, y1 + 1)))
      << "\" stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"6 3\"/>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kHeight - 12)
      << "\" font-size=\"12\" text-anchor=\"middle\">Re s</text>\n"
      << "<text x=\"14\" y=\"" << fmt(kHeight / 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fmt(kHeight / 2) << ")\">log|d|</text>\n</svg>\n";
  return out.str();
}

}  // namespace gevrey
