#pragma once

// Static SVG rendering of a report: the point set, extracted circles and
// line families. This is the only layer where exact values are rounded, and
// only for pixel placement.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "congr/errors.hpp"
#include "congr/io.hpp"

namespace congr {

namespace detail {

struct Vec2 {
  double x = 0, y = 0;
};

inline double rational_to_double(const std::string& s) {
  Rational q = parse_rational(s);
  return q.get_d();
}

inline Vec2 point_to_vec(const Json& p, const std::string& where) {
  if (!p.is_array() || p.size() != 2) throw ValidationError(where + ": malformed point");
  return Vec2{rational_to_double(p[0].get<std::string>()),
              rational_to_double(p[1].get<std::string>())};
}

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return std::string(buf);
}

}  // namespace detail

inline std::string render_svg(const Json& report) {
  if (!report.is_object() || !report.contains("points")) {
    throw ValidationError("svg: report has no points");
  }
  std::vector<detail::Vec2> pts;
  for (std::size_t i = 0; i < report["points"].size(); ++i) {
    pts.push_back(detail::point_to_vec(report["points"][i], "points[" + std::to_string(i) + "]"));
  }
  if (pts.empty()) throw ValidationError("svg: empty point set");

  double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  for (const auto& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double pad = 0.08 * span;
  const double world = span + 2 * pad;
  const double scale = 720.0 / world;
  // y flips so the mathematical orientation matches screen coordinates
  auto X = [&](double x) { return (x - min_x + pad) * scale; };
  auto Y = [&](double y) { return 720.0 - (y - min_y + pad) * scale; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"720\" "
         "viewBox=\"0 0 720 720\">\n";
  out += "<rect width=\"720\" height=\"720\" fill=\"white\"/>\n";

  if (report.contains("line_family")) {
    const Json& lf = report["line_family"];
    for (const Json& line : lf["lines"]) {
      if (line["points"].empty()) continue;
      detail::Vec2 anchor = detail::point_to_vec(line["points"][0], "line anchor");
      detail::Vec2 dir = detail::point_to_vec(lf["direction"], "direction");
      double norm = std::hypot(dir.x, dir.y);
      if (norm == 0) continue;
      double t = 4.0 * world / norm;
      out += "<line x1=\"" + detail::fmt(X(anchor.x - t * dir.x)) + "\" y1=\"" +
             detail::fmt(Y(anchor.y - t * dir.y)) + "\" x2=\"" +
             detail::fmt(X(anchor.x + t * dir.x)) + "\" y2=\"" +
             detail::fmt(Y(anchor.y + t * dir.y)) +
             "\" stroke=\"#3465a4\" stroke-width=\"1.5\"/>\n";
    }
  }

  if (report.contains("sections")) {
    for (const Json& sec : report["sections"]) {
      if (!sec.contains("circle")) continue;
      const Json& c = sec["circle"];
      detail::Vec2 center = detail::point_to_vec(c["center"], "circle center");
      double r = std::sqrt(detail::rational_to_double(c["radius_sq"].get<std::string>()));
      out += "<circle cx=\"" + detail::fmt(X(center.x)) + "\" cy=\"" + detail::fmt(Y(center.y)) +
             "\" r=\"" + detail::fmt(r * scale) +
             "\" fill=\"none\" stroke=\"#4e9a06\" stroke-width=\"1.5\"/>\n";
    }
  }

  for (const auto& p : pts) {
    out += "<circle cx=\"" + detail::fmt(X(p.x)) + "\" cy=\"" + detail::fmt(Y(p.y)) +
           "\" r=\"3\" fill=\"#2e3436\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace congr
