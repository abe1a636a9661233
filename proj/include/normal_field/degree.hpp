#pragma once

// Degrees of circle maps, winding numbers, planar Poincare indices, relative
// degrees of unit fields, and degrees of maps from the 2-sphere into space.
// Every integer produced here comes either from lifted-angle unwrapping or from
// a solid-angle sum, and is only returned when the real-valued total is within
// 0.1 of an integer.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "normal_field/errors.hpp"
#include "normal_field/parallel.hpp"
#include "normal_field/roots.hpp"
#include "normal_field/vec.hpp"

namespace nfield {

/// Residual allowed between a measured total turning (in turns) and its integer.
inline constexpr double degree_residual_limit = 0.1;

/// A closed loop of plane vectors parametrised by t in [0, 2pi).
struct CircleLoop {
  std::function<Vec2(double)> eval;
  int samples = 2048;
  /// Maximum number of interval halvings below the initial sampling.
  int refinement_depth = 30;
  /// Vectors shorter than this count as zero.
  double zero_tolerance = 1e-14;
};

/// Lifted angle sampled along a loop; the angle steps never exceed pi/2.
struct LiftedAngle {
  std::vector<double> t;
  std::vector<double> angle;
  /// Smallest vector length seen along the loop.
  double min_length = std::numeric_limits<double>::infinity();

  double total() const { return angle.back() - angle.front(); }
};

namespace detail {

inline void check_vector(Vec2 v, double t, double tol) {
  const double len = norm(v);
  if (!std::isfinite(len) || len <= tol)
    throw ZeroVectorError("loop vector vanishes at t = " + std::to_string(t));
}

/// Appends the samples strictly after `a` up to and including `b`.
template <class F>
void unwrap_interval(F& f, double a, Vec2 va, double b, Vec2 vb, int depth, double tol,
                     LiftedAngle& out) {
  const double step = std::atan2(cross(va, vb), dot(va, vb));
  if (std::abs(step) > 0.5 * std::numbers::pi) {
    if (depth <= 0)
      throw DegreeResolutionError("angle step above pi/2 persists near t = " + std::to_string(a));
    const double m = 0.5 * (a + b);
    const Vec2 vm = f(m);
    check_vector(vm, m, tol);
    out.min_length = std::min(out.min_length, norm(vm));
    unwrap_interval(f, a, va, m, vm, depth - 1, tol, out);
    unwrap_interval(f, m, vm, b, vb, depth - 1, tol, out);
    return;
  }
  out.t.push_back(b);
  out.angle.push_back(out.angle.back() + step);
}

/// Lifted angle of f along [a, b], starting from the principal angle at a.
template <class F>
LiftedAngle lift_path(F&& f, double a, double b, int samples, int depth, double tol) {
  LiftedAngle out;
  Vec2 prev = f(a);
  check_vector(prev, a, tol);
  out.min_length = norm(prev);
  out.t.push_back(a);
  out.angle.push_back(angle_of(prev));
  for (int i = 1; i <= samples; ++i) {
    const double t = a + (b - a) * i / samples;
    const Vec2 v = f(t);
    check_vector(v, t, tol);
    out.min_length = std::min(out.min_length, norm(v));
    unwrap_interval(f, out.t.back(), prev, t, v, depth, tol, out);
    prev = v;
  }
  return out;
}

inline int round_turns(double turns, const char* what) {
  const double r = std::round(turns);
  if (std::abs(turns - r) >= degree_residual_limit)
    throw DegreeResolutionError(std::string(what) + ": total " + std::to_string(turns) +
                                " turns is not within 0.1 of an integer");
  return static_cast<int>(r);
}

}  // namespace detail

/// Lifted angle of the loop over one full period.
inline LiftedAngle lift_loop(const CircleLoop& loop) {
  return detail::lift_path(loop.eval, 0.0, two_pi, loop.samples, loop.refinement_depth,
                           loop.zero_tolerance);
}

/// Degree of the loop as a circle map, by lifted-angle unwrapping.
inline int circle_degree(const CircleLoop& loop) {
  return detail::round_turns(lift_loop(loop).total() / two_pi, "circle_degree");
}

struct Preimage {
  double t;
  int sign;
};

struct PreimageDegree {
  int degree = 0;
  double direction = 0.0;
  std::vector<Preimage> preimages;
};

/// Degree as the signed count of parameters where the loop points along
/// `direction`. Throws NonRegularValueError if the angular speed at a preimage
/// is too small to give it a sign.
inline PreimageDegree degree_by_preimage(const CircleLoop& loop, double direction) {
  const LiftedAngle lift = lift_loop(loop);
  auto angle_at = [&](double t) { return angle_of(loop.eval(t)); };

  PreimageDegree result;
  result.direction = direction;
  for (std::size_t i = 0; i + 1 < lift.t.size(); ++i) {
    const double a0 = lift.angle[i];
    const double a1 = lift.angle[i + 1];
    if (a0 == a1) continue;
    const bool rising = a1 > a0;
    // Target levels direction + 2 pi m; intervals are half-open at the start.
    const double lo = std::min(a0, a1);
    const double hi = std::max(a0, a1);
    const double m = std::ceil((lo - direction) / two_pi);
    const double level = direction + two_pi * m;
    const bool hit = rising ? (level > lo && level <= hi) : (level >= lo && level < hi);
    if (!hit) continue;

    const double base = angle_at(lift.t[i]);
    auto h = [&](double t) { return a0 + principal_angle(angle_at(t) - base) - level; };
    double ta = lift.t[i];
    double tb = lift.t[i + 1];
    double fa = a0 - level;
    if (fa == 0.0) {
      tb = ta;
    } else {
      for (int it = 0; it < 100 && tb - ta > 1e-14; ++it) {
        const double tm = 0.5 * (ta + tb);
        const double fm = h(tm);
        if ((fm < 0.0) == (fa < 0.0)) {
          ta = tm;
          fa = fm;
        } else {
          tb = tm;
        }
      }
    }
    const double t_star = 0.5 * (ta + tb);
    const double dh = 1e-6;
    const double speed =
        principal_angle(angle_at(t_star + dh) - angle_at(t_star - dh)) / (2.0 * dh);
    if (std::abs(speed) < 1e-6)
      throw NonRegularValueError("direction " + std::to_string(direction) +
                                 " is not a regular value near t = " + std::to_string(t_star));
    const int sign = speed > 0.0 ? 1 : -1;
    if (sign != (rising ? 1 : -1))
      throw NonRegularValueError("inconsistent preimage orientation near t = " +
                                 std::to_string(t_star));
    result.preimages.push_back({wrap_period(t_star), sign});
    result.degree += sign;
  }
  return result;
}

/// degree_by_preimage with the retry policy: on a non-regular direction, up to
/// eight further attempts at pseudo-random offsets.
inline PreimageDegree degree_by_preimage_retry(const CircleLoop& loop, double direction,
                                               std::uint64_t seed = 0x5eed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(-std::numbers::pi, std::numbers::pi);
  double d = direction;
  for (int attempt = 0;; ++attempt) {
    try {
      return degree_by_preimage(loop, d);
    } catch (const NonRegularValueError&) {
      if (attempt >= 8) throw;
      d = direction + offset(rng);
    }
  }
}

/// Winding number of the loop about p.
inline int winding_number(const CircleLoop& loop, Vec2 p, double tolerance = 1e-8) {
  CircleLoop shifted = loop;
  shifted.eval = [&loop, p](double t) { return loop.eval(t) - p; };
  shifted.zero_tolerance = 0.0;
  LiftedAngle lift;
  try {
    lift = lift_loop(shifted);
  } catch (const ZeroVectorError&) {
    throw PointOnCurveError("point lies on the loop");
  }
  if (lift.min_length <= tolerance)
    throw PointOnCurveError("point within " + std::to_string(tolerance) + " of the loop");
  return detail::round_turns(lift.total() / two_pi, "winding_number");
}

/// Winding number by trapezoidal quadrature of the angle form
/// cross(c - p, c') / |c - p|^2, doubling the node count until two successive
/// estimates agree.
inline int winding_by_quadrature(const std::function<Vec2(double)>& position,
                                 const std::function<Vec2(double)>& derivative, Vec2 p,
                                 int samples = 4096, int max_samples = 1 << 21) {
  auto estimate = [&](int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = two_pi * i / n;
      const Vec2 r = position(t) - p;
      const double r2 = dot(r, r);
      if (r2 == 0.0) throw PointOnCurveError("quadrature node lies on p");
      sum += cross(r, derivative(t)) / r2;
    }
    return sum / n;  // (1/2pi) * sum * (2pi/n)
  };
  double prev = estimate(samples);
  for (int n = 2 * samples; n <= max_samples; n *= 2) {
    const double cur = estimate(n);
    if (std::abs(cur - prev) < 1e-6) return detail::round_turns(cur, "winding_by_quadrature");
    prev = cur;
  }
  throw DegreeResolutionError("winding quadrature did not converge");
}

/// Total anticlockwise rotation of u relative to v around the loop.
inline int relative_degree(const std::function<Vec2(double)>& u,
                           const std::function<Vec2(double)>& v, int samples = 2048) {
  CircleLoop loop;
  loop.samples = samples;
  loop.eval = [&](double t) {
    const Vec2 a = u(t);
    const Vec2 b = v(t);
    // a * conj(b) as complex numbers
    return Vec2{a.x * b.x + a.y * b.y, a.y * b.x - a.x * b.y};
  };
  return circle_degree(loop);
}

using PlaneField = std::function<Vec2(Vec2)>;

/// Poincare index of a planar field on the positively oriented circle.
inline int planar_index(const PlaneField& field, Vec2 center, double radius, int samples = 1024) {
  CircleLoop loop;
  loop.samples = samples;
  loop.eval = [&](double t) {
    return field(center + radius * Vec2{std::cos(t), std::sin(t)});
  };
  return circle_degree(loop);
}

/// planar_index that halves the radius (up to six times) when the circle
/// meets a zero of the field.
inline int planar_index_shrinking(const PlaneField& field, Vec2 center, double radius,
                                  int samples = 1024) {
  for (int attempt = 0;; ++attempt) {
    try {
      return planar_index(field, center, radius, samples);
    } catch (const ZeroVectorError&) {
      if (attempt >= 6) throw;
      radius *= 0.5;
    }
  }
}

using SphereMap = std::function<Vec3(const Vec3&)>;

struct SphereMeshOptions {
  int longitudes = 256;
  int latitudes = 128;
  double min_distance = 1e-6;
};

/// Signed solid angle of triangle (a, b, c) seen from the origin, via the
/// two-argument arctangent form.
inline double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = norm(a);
  const double lb = norm(b);
  const double lc = norm(c);
  const double num = dot(a, cross(b, c));
  const double den = la * lb * lc + dot(a, b) * lc + dot(a, c) * lb + dot(b, c) * la;
  return 2.0 * std::atan2(num, den);
}

/// Degree about p of a map from the unit sphere into space.
///
/// The domain sphere is triangulated by a latitude/longitude grid closed by a
/// triangle fan at each pole; the map is evaluated at the unit-sphere vertex
/// positions, so the map itself picks whatever chart it needs. Triangles are
/// oriented by the outward normal of the domain sphere.
inline int spherical_degree(const SphereMap& map, const Vec3& p, const SphereMeshOptions& opt = {}) {
  const int nl = opt.longitudes;
  const int nb = opt.latitudes;
  const std::size_t rings = static_cast<std::size_t>(nb - 1);
  std::vector<Vec3> ring(rings * nl);
  Vec3 north = map(Vec3{0, 0, 1}) - p;
  Vec3 south = map(Vec3{0, 0, -1}) - p;
  parallel_for(rings, [&](std::size_t j) {
    const double theta = std::numbers::pi * static_cast<double>(j + 1) / nb;
    for (int i = 0; i < nl; ++i) {
      const double phi = two_pi * i / nl;
      const Vec3 d{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta)};
      ring[j * nl + i] = map(d) - p;
    }
  });

  double closest = std::min(norm(north), norm(south));
  for (const Vec3& v : ring) closest = std::min(closest, norm(v));
  if (!(closest > opt.min_distance))
    throw PointOnSurfaceError("point within " + std::to_string(opt.min_distance) +
                              " of the sampled image");

  auto at = [&](std::size_t j, int i) -> const Vec3& { return ring[j * nl + (i % nl)]; };
  double total = 0.0;
  for (int i = 0; i < nl; ++i) total += triangle_solid_angle(north, at(0, i), at(0, i + 1));
  for (std::size_t j = 0; j + 1 < rings; ++j) {
    for (int i = 0; i < nl; ++i) {
      total += triangle_solid_angle(at(j, i), at(j + 1, i), at(j, i + 1));
      total += triangle_solid_angle(at(j, i + 1), at(j + 1, i), at(j + 1, i + 1));
    }
  }
  for (int i = 0; i < nl; ++i)
    total += triangle_solid_angle(south, at(rings - 1, i + 1), at(rings - 1, i));
  return detail::round_turns(total / (4.0 * std::numbers::pi), "spherical_degree");
}

}  // namespace nfield
