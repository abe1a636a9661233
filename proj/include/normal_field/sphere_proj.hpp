#pragma once

// Two-point compactification of the cylinder by central projection onto the
// unit sphere tangent to it along rho = 0, and the Poincare indices of the
// normal-map field at the two added points (the poles).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "normal_field/curve.hpp"
#include "normal_field/degree.hpp"
#include "normal_field/normal_field.hpp"
#include "normal_field/vec.hpp"

namespace nfield {

struct CylinderPoint {
  double t = 0.0;
  double rho = 0.0;
};

/// Latitude arctan(rho), longitude t.
inline Vec3 mercator(CylinderPoint q) {
  const double s = 1.0 / std::sqrt(1.0 + q.rho * q.rho);
  if (!std::isfinite(q.rho)) return {0.0, 0.0, q.rho > 0 ? 1.0 : -1.0};
  return {std::cos(q.t) * s, std::sin(q.t) * s, q.rho * s};
}

inline double latitude(const Vec3& v) { return std::asin(std::clamp(v.z, -1.0, 1.0)); }

enum class Pole { north, south };

inline const char* to_string(Pole p) { return p == Pole::north ? "N" : "S"; }

/// Poincare index of the projected field at a pole.
///
/// Works on the cylinder loop rho = +/- rho0: the rotation of the normalised
/// field relative to the azimuthal direction, plus the unit turn of that
/// direction around the pole. The loop around S is traversed against t, which
/// flips the sign of the relative rotation.
inline int pole_index(const ClosedCurve& curve, Pole pole, double rho0 = 1e6, Vec2 p = {}) {
  const double rho = pole == Pole::north ? std::abs(rho0) : -std::abs(rho0);
  auto field = [&](double t) { return normalized(normal_map(curve, t, rho).point - p); };
  // In cylinder coordinates the azimuthal unit field is the constant (1, 0).
  auto azimuth = [](double) { return Vec2{1.0, 0.0}; };
  const int rel = relative_degree(field, azimuth, ClosedCurve::kSamples);
  return pole == Pole::north ? 1 + rel : 1 - rel;
}

struct SphereArrow {
  Vec3 base;
  Vec3 direction;  ///< unit tangent to the sphere
};

struct SphereCritical {
  Vec3 position;
  int index;
};

struct SphereField {
  std::vector<SphereArrow> arrows;
  std::vector<Vec3> fold;
  std::vector<SphereCritical> critical;
  int i_north = 0;
  int i_south = 0;
};

/// Field samples carried to the sphere: arrows on a longitude/latitude grid,
/// the fold curve, the finite critical points, and the pole indices.
inline SphereField project_field(const ClosedCurve& curve, Vec2 p, int res_t = 36,
                                 int res_lat = 17, const Tolerances& tol = {}) {
  SphereField out;
  for (int j = 1; j <= res_lat; ++j) {
    const double lat = -0.5 * std::numbers::pi + std::numbers::pi * j / (res_lat + 1);
    const double rho = std::tan(lat);
    const double s = 1.0 / std::sqrt(1.0 + rho * rho);
    for (int i = 0; i < res_t; ++i) {
      const double t = two_pi * i / res_t;
      const Vec2 f = normal_map(curve, t, rho).point - p;
      const Vec3 dt{-std::sin(t) * s, std::cos(t) * s, 0.0};
      const double ds = -rho * s * s * s;
      const Vec3 drho{std::cos(t) * ds, std::sin(t) * ds, s + rho * ds};
      const Vec3 v = f.x * dt + f.y * drho;
      const double len = norm(v);
      if (len > 0.0) out.arrows.push_back({mercator({t, rho}), v / len});
    }
  }
  if (curve.strictly_convex()) {
    for (int i = 0; i <= 360; ++i) {
      const double t = two_pi * i / 360;
      out.fold.push_back(mercator({t, 1.0 / curve.curvature(t)}));
    }
    for (const auto& cp : critical_points(curve, p, tol))
      out.critical.push_back({mercator({cp.t_star, cp.rho_star}), cp.index});
  }
  out.i_north = pole_index(curve, Pole::north, 1e6, p);
  out.i_south = pole_index(curve, Pole::south, 1e6, p);
  return out;
}

}  // namespace nfield
