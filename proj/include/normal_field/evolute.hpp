#pragma once

// The evolute b = a + (1/k) n of a curve with k > 0, its cusps, its rotation
// index, and the assembly of the full index vector for a query point with
// every counting identity checked against independent numerics.

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "normal_field/curve.hpp"
#include "normal_field/degree.hpp"
#include "normal_field/errors.hpp"
#include "normal_field/normal_field.hpp"
#include "normal_field/sphere_proj.hpp"

namespace nfield {

class Evolute {
 public:
  explicit Evolute(ClosedCurve curve) : curve_(std::move(curve)) {
    detail::require_convex(curve_);
    try {
      auto v = vertices(curve_);
      cusps_ = std::move(v.params);
      nu_ = v.nu;
    } catch (const CircleDegeneracyError&) {
      degenerate_ = true;
    }
  }

  const ClosedCurve& curve() const { return curve_; }
  Vec2 point(double t) const { return curve_.centre_of_curvature(t); }

  /// db/dt = -(dk/dt / k^2) n: parallel to the normal, zero at the cusps.
  Vec2 derivative(double t) const {
    const double k = curve_.curvature(t);
    return (-curve_.curvature_rate(t) / (k * k)) * curve_.normal(t);
  }

  /// Cusp parameters (the vertices of the parent curve).
  const std::vector<double>& cusps() const { return cusps_; }

  /// Cusp count; throws CircleDegeneracyError for a circle.
  int nu() const {
    if (degenerate_) throw CircleDegeneracyError("the evolute of a circle is a single point");
    return nu_;
  }

  /// True for a circle, whose evolute is constant.
  bool degenerate() const { return degenerate_; }

 private:
  ClosedCurve curve_;
  std::vector<double> cusps_;
  int nu_ = 0;
  bool degenerate_ = false;
};

inline Evolute evolute(const ClosedCurve& curve) { return Evolute(curve); }

struct EvoluteTurning {
  /// (nu + 2 r_alpha) / 2
  int formula = 0;
  /// Numerically accumulated turning of the evolute tangent through its cusps.
  int numeric = 0;
  double numeric_turns = 0.0;
};

/// Rotation index of the evolute, by the cusp formula and by direct turning.
///
/// The direct turning unwraps the angle of b' between cusps and adds a jump of
/// exactly pi at each cusp, signed like the turning on the approach to it.
inline EvoluteTurning evolute_rotation_index(const ClosedCurve& curve) {
  const Evolute ev(curve);
  const int nu = ev.nu();
  EvoluteTurning out;
  const int r_alpha = rotation_index(curve);
  out.formula = (nu + 2 * r_alpha) / 2;

  const auto& cusps = ev.cusps();
  auto tangent = [&ev](double t) { return ev.derivative(t); };
  auto angle_at = [&](double t) { return angle_of(ev.derivative(t)); };
  double total = 0.0;
  const std::size_t n = cusps.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double c0 = cusps[i];
    const double c1 = i + 1 < n ? cusps[i + 1] : cusps[0] + two_pi;
    const double gap = c1 - c0;
    const double prev_gap = c0 - (i > 0 ? cusps[i - 1] : cusps[n - 1] - two_pi);
    const double delta = std::min({1e-5, gap / 8.0, prev_gap / 8.0});

    // Jump across the cusp at c0.
    const double before = angle_at(c0 - delta);
    const double approach = principal_angle(before - angle_at(c0 - 2.0 * delta));
    const double leave = principal_angle(angle_at(c0 + 2.0 * delta) - angle_at(c0 + delta));
    const double sense = (approach + leave) >= 0.0 ? 1.0 : -1.0;
    const double raw = angle_at(c0 + delta) - before;
    total += sense * std::numbers::pi + principal_angle(raw - sense * std::numbers::pi);

    // Smooth arc from c0 to c1.
    const int samples = std::max(64, static_cast<int>(ClosedCurve::kSamples * gap / two_pi));
    const LiftedAngle arc =
        detail::lift_path(tangent, c0 + delta, c1 - delta, samples, 30, 0.0);
    total += arc.total();
  }
  out.numeric_turns = total / two_pi;
  out.numeric = detail::round_turns(out.numeric_turns, "evolute turning");
  return out;
}

/// Winding number of the evolute about p.
inline int evolute_winding(const ClosedCurve& curve, Vec2 p, double tolerance = 1e-6) {
  detail::require_convex(curve);
  const auto [t, d2] = periodic_minimum([&](double s) {
    const Vec2 d = curve.centre_of_curvature(s) - p;
    return dot(d, d);
  });
  if (std::sqrt(d2) <= tolerance)
    throw PointOnCurveError("point lies on the evolute near t = " + std::to_string(t));
  CircleLoop loop;
  loop.samples = ClosedCurve::kSamples;
  loop.eval = [&curve](double s) { return curve.centre_of_curvature(s); };
  return winding_number(loop, p, 0.0);
}

/// Winding of the curve about p.
inline int curve_winding(const ClosedCurve& curve, Vec2 p, double tolerance = 1e-8) {
  CircleLoop loop;
  loop.samples = ClosedCurve::kSamples;
  loop.eval = [&curve](double s) { return curve.position(s); };
  return winding_number(loop, p, tolerance);
}

/// (r_alpha, r_beta, w_alpha_p, w_beta_p) from (i_N, nu, m_p, n_p) through
/// the fixed 4x4 integer matrix minus the all-ones vector.
struct MatrixIndices {
  int r_alpha = 0;
  std::optional<int> r_beta;
  int w_alpha_p = 0;
  int w_beta_p = 0;
};

inline MatrixIndices matrix_formula(int i_north, std::optional<int> nu, int m_p, int n_p) {
  MatrixIndices m;
  m.r_alpha = i_north - 1;
  if (nu) m.r_beta = i_north + *nu / 2 - 1;
  m.w_alpha_p = i_north - m_p - 1;
  m.w_beta_p = i_north - n_p - 1;
  return m;
}

struct IndexReport {
  Vec2 p;
  int r_alpha = 0;
  std::optional<int> r_beta;  ///< numeric turning; absent for a circle
  std::optional<int> r_beta_formula;
  std::optional<int> nu;
  int i_N = 0;
  int i_S = 0;
  int n_p = 0;
  int m_p = 0;
  int N_p = 0;
  int w_alpha_p = 0;
  int w_beta_p = 0;
  int finite_index_sum = 0;
  MatrixIndices matrix;
  std::vector<CriticalPoint> critical;
  Tolerances tolerances;
  double rho0 = 1e6;
  /// Identity name -> holds.
  std::map<std::string, bool> checks;

  bool all_checks_pass() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return true;
  }
};

struct ReportOptions {
  Tolerances tolerances{};
  double rho0 = 1e6;
  /// Raise MatrixMismatchError when any identity fails.
  bool throw_on_mismatch = true;
};

/// Full index vector for a curve and query point. Each entry of
/// (r_alpha, r_beta, w_alpha_p, w_beta_p) is computed twice: through the
/// matrix formula from (i_N, nu, m_p, n_p), and directly (tangent degree, cusp-
/// aware evolute turning, windings of curve and evolute about p).
inline IndexReport index_report(const ClosedCurve& curve, Vec2 p, const ReportOptions& opt = {}) {
  IndexReport r;
  r.p = p;
  r.tolerances = opt.tolerances;
  r.rho0 = opt.rho0;
  r.critical = critical_points(curve, p, opt.tolerances);
  const SegmentCounts counts = count_segments(r.critical);
  r.n_p = counts.n_p;
  r.m_p = counts.m_p;
  r.N_p = counts.N_p;
  int saddles = 0;
  bool fold_rule = true;
  for (const auto& cp : r.critical) {
    r.finite_index_sum += cp.index;
    if (cp.kind == CriticalKind::saddle) ++saddles;
    const bool above = cp.rho_star > cp.fold_value;
    fold_rule = fold_rule && (above == (cp.kind == CriticalKind::saddle));
  }

  r.r_alpha = rotation_index(curve);
  r.i_N = pole_index(curve, Pole::north, opt.rho0, p);
  r.i_S = pole_index(curve, Pole::south, opt.rho0, p);
  r.w_alpha_p = curve_winding(curve, p);
  r.w_beta_p = evolute_winding(curve, p, opt.tolerances.genericity);

  const Evolute ev(curve);
  if (!ev.degenerate()) {
    r.nu = ev.nu();
    const EvoluteTurning turning = evolute_rotation_index(curve);
    r.r_beta = turning.numeric;
    r.r_beta_formula = turning.formula;
  }
  r.matrix = matrix_formula(r.i_N, r.nu, r.m_p, r.n_p);

  auto& c = r.checks;
  c["saddle_centre_balance"] = saddles == r.n_p && r.n_p >= 1;
  c["fold_rule"] = fold_rule;
  c["finite_index_sum_zero"] = r.finite_index_sum == 0;
  c["segments_N_eq_2n"] = r.N_p == 2 * r.n_p && r.m_p <= r.n_p;
  c["pole_north"] = r.i_N == 1 + r.r_alpha;
  c["pole_south"] = r.i_S == 1 - r.r_alpha;
  c["index_sum_two"] = r.i_N + r.i_S + r.finite_index_sum == 2;
  c["w_beta_eq_r_minus_n"] = r.w_beta_p == r.r_alpha - r.n_p;
  c["w_beta_eq_r_minus_half_N"] = 2 * r.w_beta_p == 2 * r.r_alpha - r.N_p;
  c["w_alpha_eq_r_minus_m"] = r.w_alpha_p == r.r_alpha - r.m_p;
  c["matrix_r_alpha"] = r.matrix.r_alpha == r.r_alpha;
  c["matrix_w_alpha"] = r.matrix.w_alpha_p == r.w_alpha_p;
  c["matrix_w_beta"] = r.matrix.w_beta_p == r.w_beta_p;
  if (r.nu) {
    c["nu_even"] = *r.nu % 2 == 0;
    c["cusp_formula"] = r.r_beta == r.r_beta_formula;
    c["matrix_r_beta"] = r.matrix.r_beta == r.r_beta;
  }

  if (opt.throw_on_mismatch && !r.all_checks_pass()) {
    std::string failed;
    for (const auto& [name, ok] : c)
      if (!ok) failed += (failed.empty() ? "" : ", ") + name;
    throw MatrixMismatchError("index identities failed: " + failed);
  }
  return r;
}

}  // namespace nfield
