#include "paperfold/render.hpp"

#include <algorithm>
#include <cstdio>

namespace paperfold {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::string render_svg(const Polygon& poly, const std::vector<Pairing>& pairings,
                       int chords_per_pairing) {
  chords_per_pairing = std::max(chords_per_pairing, 5);

  double minx = poly.vertex(0).x, maxx = minx, miny = poly.vertex(0).y, maxy = miny;
  for (const Point& v : poly.vertices()) {
    minx = std::min(minx, v.x);
    maxx = std::max(maxx, v.x);
    miny = std::min(miny, v.y);
    maxy = std::max(maxy, v.y);
  }
  const double margin = 20.0;
  const double scale = 600.0 / std::max({maxx - minx, maxy - miny, 1e-12});
  const double width = (maxx - minx) * scale + 2 * margin;
  const double height = (maxy - miny) * scale + 2 * margin;
  const auto map = [&](const Point& p) {
    return Point{margin + (p.x - minx) * scale, margin + (maxy - p.y) * scale};
  };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(width) +
                    " " + fmt(height) + "\">\n";
  svg += "  <polygon class=\"outline\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) svg += " ";
    const Point p = map(poly.vertex(i));
    svg += fmt(p.x) + "," + fmt(p.y);
  }
  svg += "\"/>\n";

  for (std::size_t i = 0; i < pairings.size(); ++i) {
    const Pairing& pr = pairings[i];
    svg += "  <g class=\"pairing\" id=\"pairing-" + std::to_string(i) + "\">\n";
    for (int c = 0; c < chords_per_pairing; ++c) {
      const double t = pr.length * c / (chords_per_pairing - 1);
      const Point u = map(poly.boundary_point(pr.a.start + t));
      const Point v = map(poly.boundary_point(pr.b.start + (pr.length - t)));
      svg += "    <line class=\"chord\" stroke=\"#555\" stroke-width=\"0.8\" "
             "stroke-dasharray=\"3,4\" x1=\"" +
             fmt(u.x) + "\" y1=\"" + fmt(u.y) + "\" x2=\"" + fmt(v.x) + "\" y2=\"" + fmt(v.y) +
             "\"/>\n";
    }
    if (pr.is_fold && pr.fold_point) {
      const Point f = map(poly.boundary_point(*pr.fold_point));
      svg += "    <circle class=\"fold-point\" fill=\"black\" r=\"3\" cx=\"" + fmt(f.x) +
             "\" cy=\"" + fmt(f.y) + "\"/>\n";
    }
    svg += "  </g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace paperfold
