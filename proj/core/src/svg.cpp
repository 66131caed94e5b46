#include "rigor/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rigor {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

std::string render_svg(const Framework& f, const std::vector<Vec2>& trace_path,
                       const std::vector<Vec2>& target_path) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto grow = [&](const Vec2& p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const Vec2& p : f.vertices()) grow(p);
  for (const Vec2& p : trace_path) grow(p);
  for (const Vec2& p : target_path) grow(p);
  const double w = std::max(xmax - xmin, 1e-9);
  const double h = std::max(ymax - ymin, 1e-9);
  const double m = 0.05 * std::max(w, h);

  std::ostringstream svg;
  // y flipped so the plane's +y points up
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
      << num(xmin - m) << " " << num(-(ymax + m)) << " " << num(w + 2 * m)
      << " " << num(h + 2 * m) << "\">\n";
  const double stroke = std::max(w, h) / 400.0;
  for (const Edge& e : f.edges()) {
    const Vec2 a = f.vertex(e.i), b = f.vertex(e.j);
    svg << "  <line x1=\"" << num(a.x) << "\" y1=\"" << num(-a.y) << "\" x2=\""
        << num(b.x) << "\" y2=\"" << num(-b.y)
        << "\" stroke=\"#444\" stroke-width=\"" << num(stroke) << "\"/>\n";
  }
  for (const Vec2& p : f.vertices()) {
    svg << "  <circle cx=\"" << num(p.x) << "\" cy=\"" << num(-p.y)
        << "\" r=\"" << num(2 * stroke) << "\" fill=\"#c33\"/>\n";
  }
  auto polyline = [&](const std::vector<Vec2>& path, const char* color) {
    if (path.size() < 2) return;
    svg << "  <polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"" << num(1.5 * stroke) << "\" points=\"";
    for (const Vec2& p : path) svg << num(p.x) << "," << num(-p.y) << " ";
    svg << "\"/>\n";
  };
  polyline(target_path, "#3a3");
  polyline(trace_path, "#36c");
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rigor
