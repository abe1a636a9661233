#pragma once

// The normal map F(t, rho) = a(t) + rho n(t) of a closed curve, read as a
// vector field on the cylinder S^1 x R. Its zeros relative to a query point p
// are the normals of the curve through p; their Poincare index is the sign of
// the Jacobian 1 - rho k.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "normal_field/curve.hpp"
#include "normal_field/degree.hpp"
#include "normal_field/errors.hpp"
#include "normal_field/roots.hpp"
#include "normal_field/vec.hpp"

namespace nfield {

/// Numerical thresholds shared by the curve pipeline. Every report echoes them.
struct Tolerances {
  /// Minimum distance from the query point to the curve and to its evolute.
  double genericity = 1e-6;
  /// A critical point is degenerate when |1 - rho k| <= degenerate * (1 + |rho k|).
  double degenerate = 1e-8;
  /// Bracketing and bisection policy for root finding.
  RootOptions roots{};
};

enum class CriticalKind { centre, saddle };
enum class DistanceExtremum { minimum, maximum };

inline const char* to_string(CriticalKind k) { return k == CriticalKind::centre ? "centre" : "saddle"; }
inline const char* to_string(DistanceExtremum d) {
  return d == DistanceExtremum::minimum ? "minimum" : "maximum";
}

struct CriticalPoint {
  double t_star = 0.0;
  double rho_star = 0.0;
  int index = 0;
  CriticalKind kind = CriticalKind::centre;
  DistanceExtremum d2_type = DistanceExtremum::minimum;
  /// 1 / k(t_star): the fold curve height above this parameter.
  double fold_value = 0.0;
};

struct SegmentCounts {
  int n_p = 0;  ///< normal segments through p (centres)
  int m_p = 0;  ///< normal segments with rho < 0 through p
  int N_p = 0;  ///< all normals through p
};

struct NormalMapValue {
  Vec2 point;
  double jacobian;
};

inline NormalMapValue normal_map(const ClosedCurve& curve, double t, double rho) {
  return {curve.position(t) + rho * curve.normal(t), 1.0 - rho * curve.curvature(t)};
}

struct GenericityReport {
  bool pass = true;
  /// "curve" or "evolute" when the check fails.
  std::string offending;
  double nearest_t = 0.0;
  double distance = 0.0;
  double tolerance = 0.0;

  std::string describe() const {
    std::ostringstream os;
    if (pass) {
      os << "generic (tolerance " << tolerance << ")";
    } else {
      os << "point lies on the " << offending << " (distance " << distance << " <= tolerance "
         << tolerance << ", nearest t = " << nearest_t << ")";
    }
    return os.str();
  }
};

/// Checks that p is farther than the tolerance from the curve and its evolute.
inline GenericityReport genericity(const ClosedCurve& curve, Vec2 p, double tolerance = 1e-6) {
  GenericityReport r;
  r.tolerance = tolerance;
  const auto [tc, dc2] = periodic_minimum([&](double t) {
    const Vec2 d = curve.position(t) - p;
    return dot(d, d);
  });
  double best = std::sqrt(dc2);
  r.nearest_t = tc;
  r.distance = best;
  r.offending = "curve";
  if (curve.strictly_convex()) {
    const auto [te, de2] = periodic_minimum([&](double t) {
      const Vec2 d = curve.centre_of_curvature(t) - p;
      return dot(d, d);
    });
    const double de = std::sqrt(de2);
    if (de < best) {
      best = de;
      r.nearest_t = te;
      r.distance = de;
      r.offending = "evolute";
    }
  }
  r.pass = best > tolerance;
  if (r.pass) r.offending.clear();
  return r;
}

namespace detail {

inline void require_convex(const ClosedCurve& curve) {
  if (!curve.strictly_convex())
    throw CurvatureSignError("operation requires a curve with k > 0 everywhere");
}

}  // namespace detail

/// Zeros of the normal-map field relative to p, sorted by parameter.
///
/// These are the roots of g(t) = (a(t) - p) . a'(t); rho follows in closed
/// form as -(a - p) . n. Throws GenericityError when p is on the curve or the
/// evolute and DegenerateCriticalPointError when a zero sits on the fold.
inline std::vector<CriticalPoint> critical_points(const ClosedCurve& curve, Vec2 p,
                                                  const Tolerances& tol = {}) {
  detail::require_convex(curve);
  const GenericityReport gen = genericity(curve, p, tol.genericity);
  if (!gen.pass) throw GenericityError(gen.describe());

  auto g = [&](double t) { return dot(curve.position(t) - p, curve.velocity(t)); };
  std::vector<CriticalPoint> out;
  for (double t : periodic_roots(g, tol.roots)) {
    CriticalPoint cp;
    cp.t_star = t;
    const double k = curve.curvature(t);
    cp.rho_star = -dot(curve.position(t) - p, curve.normal(t));
    cp.fold_value = 1.0 / k;
    const double jac = 1.0 - cp.rho_star * k;
    if (std::abs(jac) <= tol.degenerate * (1.0 + std::abs(cp.rho_star * k)))
      throw DegenerateCriticalPointError("critical point on the fold at t = " + std::to_string(t));
    cp.index = jac > 0.0 ? 1 : -1;
    cp.kind = jac > 0.0 ? CriticalKind::centre : CriticalKind::saddle;
    cp.d2_type = jac > 0.0 ? DistanceExtremum::minimum : DistanceExtremum::maximum;
    out.push_back(cp);
  }
  return out;
}

inline SegmentCounts count_segments(const std::vector<CriticalPoint>& points) {
  SegmentCounts c;
  for (const auto& cp : points) {
    ++c.N_p;
    if (cp.kind == CriticalKind::centre) {
      ++c.n_p;
      if (cp.rho_star < 0.0) ++c.m_p;
    }
  }
  return c;
}

inline SegmentCounts segment_counts(const ClosedCurve& curve, Vec2 p, const Tolerances& tol = {}) {
  return count_segments(critical_points(curve, p, tol));
}

/// Predicted parameter offsets of the saddle-centre pair created when the
/// curve is translated by eps along its tangent at a fold point.
struct PairPrediction {
  double delta_s = 0.0;  ///< arc-length offset magnitude; the pair sits at +/- delta_s
  double delta_t = 0.0;  ///< the same offset in the native parameter
  double rho = 0.0;      ///< 1 / k(t_fold)
  double k_dot = 0.0;    ///< dk/ds at t_fold
};

/// The arc-length offsets +/- sqrt(2 eps / (rho k_dot)), or nullopt when the
/// radicand is negative (no pair). Throws VertexDegeneracyError at a vertex.
inline std::optional<PairPrediction> predict_pair(const ClosedCurve& curve, double t_fold,
                                                  double epsilon) {
  detail::require_convex(curve);
  const double k = curve.curvature(t_fold);
  const double speed = curve.speed(t_fold);
  const double k_dot = curve.curvature_rate(t_fold) / speed;
  if (std::abs(k_dot) <= 1e-8 * k * k)
    throw VertexDegeneracyError("dk/ds vanishes at t = " + std::to_string(t_fold) +
                                ": the fold point is an evolute cusp");
  PairPrediction pred;
  pred.rho = 1.0 / k;
  pred.k_dot = k_dot;
  const double radicand = 2.0 * epsilon / (pred.rho * k_dot);
  if (!(radicand > 0.0)) return std::nullopt;
  pred.delta_s = std::sqrt(radicand);
  pred.delta_t = pred.delta_s / speed;
  return pred;
}

/// Query point equivalent to translating the curve by eps times its tangent at
/// t_fold while keeping the origin at the fold point a + n / k.
inline Vec2 fold_query_point(const ClosedCurve& curve, double t_fold, double epsilon) {
  return curve.centre_of_curvature(t_fold) - epsilon * curve.tangent(t_fold);
}

struct FieldSample {
  double t;
  double rho;
  Vec2 value;  ///< F(t, rho) - p
  double jacobian;
};

struct FieldGrid {
  int res_t = 0;
  int res_rho = 0;
  Vec2 point;
  std::vector<FieldSample> samples;  ///< row-major in rho, then t
  /// Fold curve rho = 1/k(t) as (t, rho) vertices.
  std::vector<Vec2> fold;
};

/// Uniform samples on [0, 2pi] x [rho_min, rho_max], endpoints included.
inline FieldGrid field_grid(const ClosedCurve& curve, double rho_min, double rho_max, int res_t,
                            int res_rho, Vec2 p = {}) {
  if (res_t < 2 || res_rho < 2) throw SpecError("grid resolution must be at least 2");
  FieldGrid g;
  g.res_t = res_t;
  g.res_rho = res_rho;
  g.point = p;
  g.samples.reserve(static_cast<std::size_t>(res_t) * res_rho);
  for (int j = 0; j < res_rho; ++j) {
    const double rho = rho_min + (rho_max - rho_min) * j / (res_rho - 1);
    for (int i = 0; i < res_t; ++i) {
      const double t = two_pi * i / (res_t - 1);
      const NormalMapValue f = normal_map(curve, t, rho);
      g.samples.push_back({t, rho, f.point - p, f.jacobian});
    }
  }
  if (curve.strictly_convex()) {
    const int n = std::max(res_t, 256);
    for (int i = 0; i < n; ++i) {
      const double t = two_pi * i / (n - 1);
      g.fold.push_back({t, 1.0 / curve.curvature(t)});
    }
  }
  return g;
}

/// The normal-map field relative to p on cylinder coordinates (t, rho).
inline PlaneField cylinder_field(const ClosedCurve& curve, Vec2 p) {
  return [&curve, p](Vec2 q) { return normal_map(curve, q.x, q.y).point - p; };
}

}  // namespace nfield
