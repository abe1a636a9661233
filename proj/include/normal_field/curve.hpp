#pragma once

// Smooth closed plane curves given by finite Fourier series.
//
//   x(t) = ax[0] + sum_{j>=1} ax[j] cos(jt) + bx[j] sin(jt),   t in [0, 2pi)
//
// and likewise for y. Derivatives are exact. Curvature is the signed value
// (x'y'' - y'x'') / |a'|^3; when it is negative everywhere the parameter is
// reversed at construction so that k > 0 and (tangent, normal) is right-handed.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normal_field/degree.hpp"
#include "normal_field/errors.hpp"
#include "normal_field/roots.hpp"
#include "normal_field/vec.hpp"

namespace nfield {

struct CurveSpec {
  std::vector<double> ax, bx, ay, by;
  /// Preset name ("ellipse", "circle", "limacon") when built from one.
  std::string preset;
  std::vector<double> params;

  static CurveSpec ellipse(double a, double b) {
    CurveSpec s;
    s.ax = {0.0, a};
    s.bx = {0.0, 0.0};
    s.ay = {0.0, 0.0};
    s.by = {0.0, b};
    s.preset = "ellipse";
    s.params = {a, b};
    return s;
  }

  static CurveSpec circle(double r, Vec2 center = {}) {
    CurveSpec s;
    s.ax = {center.x, r};
    s.bx = {0.0, 0.0};
    s.ay = {center.y, 0.0};
    s.by = {0.0, r};
    s.preset = "circle";
    s.params = {r, center.x, center.y};
    return s;
  }

  /// (cos 2t + c cos t, sin 2t + c sin t)
  static CurveSpec limacon(double c) {
    CurveSpec s;
    s.ax = {0.0, c, 1.0};
    s.bx = {0.0, 0.0, 0.0};
    s.ay = {0.0, 0.0, 0.0};
    s.by = {0.0, c, 1.0};
    s.preset = "limacon";
    s.params = {c};
    return s;
  }

  /// Build from a preset name and parameter list; throws SpecError.
  static CurveSpec from_preset(const std::string& name, const std::vector<double>& params) {
    if (name == "ellipse") {
      if (params.size() != 2) throw SpecError("ellipse preset takes [a, b]");
      return ellipse(params[0], params[1]);
    }
    if (name == "circle") {
      if (params.empty() || (params.size() != 1 && params.size() != 3))
        throw SpecError("circle preset takes [r] or [r, cx, cy]");
      return params.size() == 1 ? circle(params[0]) : circle(params[0], {params[1], params[2]});
    }
    if (name == "limacon") {
      if (params.size() != 1) throw SpecError("limacon preset takes [c]");
      return limacon(params[0]);
    }
    throw SpecError("unknown curve preset '" + name + "'");
  }

  std::size_t harmonics() const {
    return std::max({ax.size(), bx.size(), ay.size(), by.size()});
  }
};

namespace detail {

/// Value of the order-th derivative of one Fourier coordinate.
inline double fourier_derivative(const std::vector<double>& a, const std::vector<double>& b,
                                 double t, int order) {
  double sum = (order == 0 && !a.empty()) ? a[0] : 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t j = 1; j < n; ++j) {
    const double aj = j < a.size() ? a[j] : 0.0;
    const double bj = j < b.size() ? b[j] : 0.0;
    if (aj == 0.0 && bj == 0.0) continue;
    const double w = static_cast<double>(j);
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    const double scale = std::pow(w, order);
    // d^m/dt^m of cos and sin cycle with period 4
    switch (order % 4) {
      case 0: sum += scale * (aj * c + bj * s); break;
      case 1: sum += scale * (-aj * s + bj * c); break;
      case 2: sum += scale * (-aj * c - bj * s); break;
      default: sum += scale * (aj * s - bj * c); break;
    }
  }
  return sum;
}

}  // namespace detail

struct Frame {
  Vec2 position;
  Vec2 tangent;
  Vec2 normal;
  double curvature;
};

class ClosedCurve {
 public:
  static constexpr int kSamples = 4096;

  const CurveSpec& spec() const { return spec_; }

  Vec2 derivative(double t, int order) const {
    return {detail::fourier_derivative(spec_.ax, spec_.bx, t, order),
            detail::fourier_derivative(spec_.ay, spec_.by, t, order)};
  }
  Vec2 position(double t) const { return derivative(t, 0); }
  Vec2 velocity(double t) const { return derivative(t, 1); }
  Vec2 acceleration(double t) const { return derivative(t, 2); }
  double speed(double t) const { return norm(velocity(t)); }

  Vec2 tangent(double t) const { return normalized(velocity(t)); }
  Vec2 normal(double t) const { return perp(tangent(t)); }

  double curvature(double t) const {
    const Vec2 d1 = velocity(t);
    const Vec2 d2 = acceleration(t);
    const double s = norm(d1);
    return cross(d1, d2) / (s * s * s);
  }

  /// dk/dt (parameter derivative, not arc length).
  double curvature_rate(double t) const {
    const Vec2 d1 = velocity(t);
    const Vec2 d2 = acceleration(t);
    const Vec2 d3 = derivative(t, 3);
    const double num = cross(d1, d2);
    const double dnum = cross(d1, d3);
    const double q = dot(d1, d1);
    const double dq = 2.0 * dot(d1, d2);
    return dnum / std::pow(q, 1.5) - 1.5 * num * dq / std::pow(q, 2.5);
  }

  /// Centre of curvature a + n / k.
  Vec2 centre_of_curvature(double t) const { return position(t) + normal(t) / curvature(t); }

  double length() const { return length_; }
  /// True when the parameter was reversed to make k positive.
  bool reversed() const { return reversed_; }
  bool strictly_convex() const { return strictly_convex_; }
  double min_curvature() const { return min_k_; }
  double max_curvature() const { return max_k_; }

  /// Bounding radius of the curve about the origin (sampled).
  double extent() const { return extent_; }

 private:
  friend ClosedCurve make_curve(CurveSpec spec, bool strict);

  CurveSpec spec_;
  double length_ = 0.0;
  bool reversed_ = false;
  bool strictly_convex_ = false;
  double min_k_ = 0.0;
  double max_k_ = 0.0;
  double extent_ = 0.0;
};

/// Validate a spec and build the curve. With `strict`, curvature must keep one
/// sign (CurvatureSignError otherwise). A curve with k < 0 everywhere is
/// reversed so that k > 0.
inline ClosedCurve make_curve(CurveSpec spec, bool strict = true) {
  bool nonconstant = false;
  for (const auto* coeffs : {&spec.ax, &spec.bx, &spec.ay, &spec.by}) {
    for (std::size_t j = 1; j < coeffs->size(); ++j) {
      if (!std::isfinite((*coeffs)[j])) throw SpecError("non-finite Fourier coefficient");
      if ((*coeffs)[j] != 0.0) nonconstant = true;
    }
    if (!coeffs->empty() && !std::isfinite((*coeffs)[0]))
      throw SpecError("non-finite Fourier coefficient");
  }
  if (!nonconstant) throw SpecError("curve has no nonzero coefficient with j >= 1");

  ClosedCurve c;
  c.spec_ = std::move(spec);
  const int n = ClosedCurve::kSamples;

  double min_speed = std::numeric_limits<double>::infinity();
  double max_speed = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = c.speed(two_pi * i / n);
    min_speed = std::min(min_speed, s);
    max_speed = std::max(max_speed, s);
  }
  if (!(min_speed > 1e-9 * max_speed))
    throw RegularityError("curve is not regular: |a'| vanishes within tolerance");

  double kmin = std::numeric_limits<double>::infinity();
  double kmax = -kmin;
  for (int i = 0; i < n; ++i) {
    const double k = c.curvature(two_pi * i / n);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
  }
  if (kmax < 0.0) {
    // t -> -t flips the sine coefficients.
    for (double& b : c.spec_.bx) b = -b;
    for (double& b : c.spec_.by) b = -b;
    c.reversed_ = true;
    std::swap(kmin, kmax);
    kmin = -kmin;
    kmax = -kmax;
  }
  const double kscale = std::max(std::abs(kmin), std::abs(kmax));
  c.strictly_convex_ = kmin > 1e-12 * kscale;
  if (strict && !c.strictly_convex_)
    throw CurvatureSignError("curvature changes sign (sampled range [" + std::to_string(kmin) +
                             ", " + std::to_string(kmax) + "])");
  c.min_k_ = kmin;
  c.max_k_ = kmax;

  double len = 0.0;
  double extent = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = two_pi * i / n;
    len += c.speed(t);
    extent = std::max(extent, norm(c.position(t)));
  }
  c.length_ = len * two_pi / n;
  c.extent_ = extent;
  return c;
}

inline Frame curve_frame(const ClosedCurve& curve, double t) {
  const Vec2 tangent = curve.tangent(t);
  return {curve.position(t), tangent, perp(tangent), curve.curvature(t)};
}

/// Total turning (1/2pi) * integral of k ds, by trapezoidal quadrature.
inline double total_curvature_turns(const ClosedCurve& curve, int samples) {
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = two_pi * i / samples;
    const Vec2 d1 = curve.velocity(t);
    sum += cross(d1, curve.acceleration(t)) / dot(d1, d1);
  }
  return sum / samples;
}

/// Rotation index: degree of the unit tangent. The lifted-angle value is
/// cross-checked against the curvature integral to 1e-6 turns.
inline int rotation_index(const ClosedCurve& curve) {
  CircleLoop loop;
  loop.samples = ClosedCurve::kSamples;
  loop.eval = [&curve](double t) { return curve.velocity(t); };
  const LiftedAngle lift = lift_loop(loop);
  const double turns = lift.total() / two_pi;
  const int degree = static_cast<int>(std::round(turns));

  for (int n = ClosedCurve::kSamples; n <= (1 << 20); n *= 2) {
    const double integral = total_curvature_turns(curve, n);
    if (std::abs(integral - degree) < 1e-6) return degree;
  }
  throw DegreeResolutionError("rotation index: curvature integral disagrees with lifted angle");
}

struct VertexSet {
  std::vector<double> params;
  int nu = 0;
};

/// Vertices: sign changes of dk/dt, bracketed on the default grid and bisected
/// to 1e-10. Throws CircleDegeneracyError when dk/dt vanishes identically.
inline VertexSet vertices(const ClosedCurve& curve, RootOptions opt = {}) {
  double max_rate = 0.0;
  double max_k = 0.0;
  for (int i = 0; i < ClosedCurve::kSamples; ++i) {
    const double t = two_pi * i / ClosedCurve::kSamples;
    max_rate = std::max(max_rate, std::abs(curve.curvature_rate(t)));
    max_k = std::max(max_k, std::abs(curve.curvature(t)));
  }
  if (max_rate <= 1e-9 * max_k)
    throw CircleDegeneracyError("curvature is constant: vertices are undefined");

  VertexSet out;
  out.params = periodic_roots([&curve](double t) { return curve.curvature_rate(t); }, opt);
  out.nu = static_cast<int>(out.params.size());
  return out;
}

}  // namespace nfield
