#pragma once

// Standalone SVG figures: the curve with its evolute and normal segments, the
// normal-map field on the cylinder, and the same field on the sphere.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "normal_field/curve.hpp"
#include "normal_field/evolute.hpp"
#include "normal_field/normal_field.hpp"
#include "normal_field/sphere_proj.hpp"

namespace nfield::svg {

namespace detail {

/// Maps a data rectangle onto a square-ish pixel canvas with y pointing up.
struct Viewport {
  double x0, x1, y0, y1;
  double width = 640.0;
  double height = 480.0;
  double margin = 40.0;

  double px(double x) const { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); }
  double py(double y) const { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); }
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

inline void open(std::ostringstream& os, const Viewport& vp, const std::string& title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << vp.width << "\" height=\""
     << vp.height << "\" viewBox=\"0 0 " << vp.width << ' ' << vp.height << "\">\n"
     << "<title>" << title << "</title>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

inline void polyline(std::ostringstream& os, const Viewport& vp, const std::vector<Vec2>& pts,
                     const std::string& cls, const std::string& color, double width = 1.5) {
  os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"" << width << "\" points=\"";
  for (const Vec2& p : pts) os << fmt(vp.px(p.x)) << ',' << fmt(vp.py(p.y)) << ' ';
  os << "\"/>\n";
}

inline void dot(std::ostringstream& os, double x, double y, const std::string& cls,
                const std::string& color, double r = 4.0) {
  os << "<circle class=\"" << cls << "\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << r
     << "\" fill=\"" << color << "\"/>\n";
}

inline void label(std::ostringstream& os, double x, double y, const std::string& text,
                  const std::string& cls = "label") {
  os << "<text class=\"" << cls << "\" x=\"" << fmt(x) << "\" y=\"" << fmt(y)
     << "\" font-family=\"sans-serif\" font-size=\"13\">" << text << "</text>\n";
}

}  // namespace detail

/// Curve (blue), evolute (red; a single marker for a circle), and the normal
/// lines through p: normal segments with rho < 0 in green, with
/// 0 < rho < 1/k in red, and the normals of saddles dashed grey.
inline std::string curve_plot(const ClosedCurve& curve, Vec2 p,
                              const std::vector<CriticalPoint>& critical) {
  const int n = 720;
  std::vector<Vec2> alpha, beta;
  const Evolute ev(curve);
  for (int i = 0; i <= n; ++i) {
    const double t = two_pi * i / n;
    alpha.push_back(curve.position(t));
    if (!ev.degenerate()) beta.push_back(ev.point(t));
  }
  double x0 = p.x, x1 = p.x, y0 = p.y, y1 = p.y;
  for (const auto* set : {&alpha, &beta})
    for (Vec2 q : *set) {
      x0 = std::min(x0, q.x);
      x1 = std::max(x1, q.x);
      y0 = std::min(y0, q.y);
      y1 = std::max(y1, q.y);
    }
  const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
  const double span = std::max(x1 - x0, y1 - y0) + 2 * pad;
  const double cx = 0.5 * (x0 + x1);
  const double cy = 0.5 * (y0 + y1);
  detail::Viewport vp{cx - span / 2, cx + span / 2, cy - span / 2, cy + span / 2, 600, 600};

  std::ostringstream os;
  detail::open(os, vp, "curve, evolute and normals through p");
  for (const auto& c : critical) {
    const Vec2 a = curve.position(c.t_star);
    std::string color = "grey";
    std::string cls = "normal-saddle";
    if (c.kind == CriticalKind::centre) {
      color = c.rho_star < 0.0 ? "green" : "red";
      cls = "normal-segment";
    }
    os << "<line class=\"" << cls << "\" x1=\"" << detail::fmt(vp.px(a.x)) << "\" y1=\""
       << detail::fmt(vp.py(a.y)) << "\" x2=\"" << detail::fmt(vp.px(p.x)) << "\" y2=\""
       << detail::fmt(vp.py(p.y)) << "\" stroke=\"" << color << "\" stroke-width=\"1.2\""
       << (c.kind == CriticalKind::saddle ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
  }
  detail::polyline(os, vp, alpha, "curve", "blue", 2.0);
  if (ev.degenerate()) {
    const Vec2 c = ev.point(0.0);
    detail::dot(os, vp.px(c.x), vp.py(c.y), "evolute-point", "red", 4.0);
  } else {
    detail::polyline(os, vp, beta, "evolute", "red", 1.5);
  }
  detail::dot(os, vp.px(p.x), vp.py(p.y), "query-point", "black", 3.5);
  os << "</svg>\n";
  return os.str();
}

/// Field on the cylinder (axes t, rho): unit arrows, the fold curve
/// rho = 1/k in red, and the critical points (centres filled, saddles hollow).
inline std::string cylinder_plot(const FieldGrid& grid, const std::vector<CriticalPoint>& critical) {
  double r0 = grid.samples.front().rho;
  double r1 = grid.samples.back().rho;
  detail::Viewport vp{0.0, two_pi, r0, r1, 720, 480};
  std::ostringstream os;
  detail::open(os, vp, "normal map field on the cylinder");
  os << "<rect class=\"frame\" x=\"" << vp.margin << "\" y=\"" << vp.margin << "\" width=\""
     << vp.width - 2 * vp.margin << "\" height=\"" << vp.height - 2 * vp.margin
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (r0 < 0.0 && r1 > 0.0)
    detail::polyline(os, vp, {{0.0, 0.0}, {two_pi, 0.0}}, "axis", "#999", 0.8);
  const double step_px = std::min((vp.width - 2 * vp.margin) / grid.res_t,
                                  (vp.height - 2 * vp.margin) / grid.res_rho);
  const double len = 0.4 * step_px;
  for (const auto& s : grid.samples) {
    const double l = norm(s.value);
    if (l == 0.0) continue;
    const double x = vp.px(s.t);
    const double y = vp.py(s.rho);
    const double dx = len * s.value.x / l;
    const double dy = -len * s.value.y / l;
    os << "<line class=\"arrow\" x1=\"" << detail::fmt(x - dx) << "\" y1=\"" << detail::fmt(y - dy)
       << "\" x2=\"" << detail::fmt(x + dx) << "\" y2=\"" << detail::fmt(y + dy)
       << "\" stroke=\"#446\" stroke-width=\"0.8\"/>\n";
    detail::dot(os, x + dx, y + dy, "arrow-head", "#446", 1.2);
  }
  std::vector<Vec2> fold;
  for (Vec2 f : grid.fold) fold.push_back({f.x, std::clamp(f.y, r0, r1)});
  if (!fold.empty()) detail::polyline(os, vp, fold, "fold", "red", 1.8);
  for (const auto& c : critical) {
    if (c.rho_star < r0 || c.rho_star > r1) continue;
    os << "<circle class=\"critical-point " << to_string(c.kind) << "\" cx=\""
       << detail::fmt(vp.px(c.t_star)) << "\" cy=\"" << detail::fmt(vp.py(c.rho_star))
       << "\" r=\"5\" fill=\"" << (c.kind == CriticalKind::centre ? "black" : "white")
       << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  detail::label(os, vp.width / 2 - 4, vp.height - 10, "t");
  detail::label(os, 10, vp.height / 2, "rho");
  os << "</svg>\n";
  return os.str();
}

/// Orthographic view of the field on the sphere with the pole indices.
inline std::string sphere_plot(const SphereField& field, double elevation = 0.45) {
  const double ce = std::cos(elevation);
  const double se = std::sin(elevation);
  // Rotate about the x axis so the north pole tilts toward the viewer.
  auto view = [&](const Vec3& v) { return Vec3{v.x, ce * v.z - se * v.y, se * v.z + ce * v.y}; };
  detail::Viewport vp{-1.25, 1.25, -1.25, 1.25, 560, 560};
  std::ostringstream os;
  detail::open(os, vp, "normal map field on the sphere");
  os << "<circle class=\"sphere\" cx=\"" << detail::fmt(vp.px(0)) << "\" cy=\""
     << detail::fmt(vp.py(0)) << "\" r=\"" << detail::fmt(vp.px(1) - vp.px(0))
     << "\" fill=\"#f7f7ff\" stroke=\"black\"/>\n";
  const double len = 0.045;
  for (const auto& a : field.arrows) {
    const Vec3 b = view(a.base);
    if (b.z < 0.0) continue;  // back hemisphere
    const Vec3 d = view(a.direction);
    os << "<line class=\"arrow\" x1=\"" << detail::fmt(vp.px(b.x - len * d.x)) << "\" y1=\""
       << detail::fmt(vp.py(b.y - len * d.y)) << "\" x2=\"" << detail::fmt(vp.px(b.x + len * d.x))
       << "\" y2=\"" << detail::fmt(vp.py(b.y + len * d.y))
       << "\" stroke=\"#446\" stroke-width=\"0.8\"/>\n";
  }
  std::vector<Vec2> front;
  auto flush = [&] {
    if (front.size() > 1) detail::polyline(os, vp, front, "fold", "red", 1.8);
    front.clear();
  };
  for (const Vec3& f : field.fold) {
    const Vec3 v = view(f);
    if (v.z < 0.0) {
      flush();
      continue;
    }
    front.push_back({v.x, v.y});
  }
  flush();
  for (const auto& c : field.critical) {
    const Vec3 v = view(c.position);
    const bool visible = v.z >= 0.0;
    os << "<circle class=\"critical-point\" cx=\"" << detail::fmt(vp.px(v.x)) << "\" cy=\""
       << detail::fmt(vp.py(v.y)) << "\" r=\"4.5\" fill=\"" << (c.index > 0 ? "black" : "white")
       << "\" stroke=\"black\" stroke-width=\"1.5\""
       << (visible ? "" : " stroke-dasharray=\"2 2\" opacity=\"0.4\"") << "/>\n";
  }
  const Vec3 n = view({0, 0, 1});
  const Vec3 s = view({0, 0, -1});
  detail::dot(os, vp.px(n.x), vp.py(n.y), "pole", "blue", 5.0);
  detail::dot(os, vp.px(s.x), vp.py(s.y), "pole", "blue", 3.0);
  detail::label(os, vp.px(n.x) + 8, vp.py(n.y) - 8, "N: i_N = " + std::to_string(field.i_north),
                "pole-index");
  detail::label(os, vp.px(s.x) + 8, vp.py(s.y) + 18, "S: i_S = " + std::to_string(field.i_south),
                "pole-index");
  os << "</svg>\n";
  return os.str();
}

}  // namespace nfield::svg
