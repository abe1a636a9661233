#pragma once

// Seeded random curves with k > 0 and generic query points, plus the
// verification loop that runs the index identities over them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "normal_field/curve.hpp"
#include "normal_field/evolute.hpp"
#include "normal_field/normal_field.hpp"
#include "normal_field/parallel.hpp"

namespace nfield {

struct BatteryCase {
  CurveSpec spec;
  std::vector<Vec2> points;
};

namespace detail {

/// Adds c e^{ijt} (complex c, signed j) to the Fourier coefficients.
inline void add_complex_harmonic(CurveSpec& s, int j, double cr, double ci) {
  const std::size_t m = static_cast<std::size_t>(std::abs(j));
  for (auto* v : {&s.ax, &s.bx, &s.ay, &s.by})
    if (v->size() <= m) v->resize(m + 1, 0.0);
  if (j >= 0) {
    s.ax[m] += cr;
    s.bx[m] -= ci;
    s.ay[m] += ci;
    s.by[m] += cr;
  } else {
    s.ax[m] += cr;
    s.bx[m] += ci;
    s.ay[m] += ci;
    s.by[m] -= cr;
  }
}

}  // namespace detail

/// A random curve with k > 0 everywhere: e^{irt} for r in {1, 2, 3}, plus a
/// few small harmonics, a stretch along x, and an offset. Rejection-sampled
/// until strictly convex.
inline CurveSpec random_convex_curve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> turns(1, 3);
  for (;;) {
    CurveSpec s;
    const int r = turns(rng);
    detail::add_complex_harmonic(s, r, 1.0, 0.0);
    const int extra = 1 + static_cast<int>(std::abs(unit(rng)) * 3.0);
    for (int e = 0; e < extra; ++e) {
      int j = std::uniform_int_distribution<int>(-3, 5)(rng);
      if (j == r || j == 0) j = r + 1;
      const double amp = 0.35 / (j * j);
      detail::add_complex_harmonic(s, j, amp * unit(rng), amp * unit(rng));
    }
    const double stretch = 1.0 + 0.35 * unit(rng);
    for (double& v : s.ax) v *= stretch;
    for (double& v : s.bx) v *= stretch;
    s.ax[0] = 0.3 * unit(rng);
    s.ay[0] = 0.3 * unit(rng);
    try {
      const ClosedCurve c = make_curve(s, true);
      if (c.min_curvature() > 0.05 * c.max_curvature()) return c.spec();
    } catch (const InputError&) {
    }
  }
}

/// Uniform points in the joint bounding box of curve and evolute (padded by
/// 20%) that keep a margin of 1e-3 times the curve size from both.
inline std::vector<Vec2> random_generic_points(const ClosedCurve& curve, int count,
                                               std::mt19937_64& rng) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (int i = 0; i < 512; ++i) {
    const double t = two_pi * i / 512;
    for (Vec2 q : {curve.position(t), curve.centre_of_curvature(t)}) {
      lo_x = std::min(lo_x, q.x);
      hi_x = std::max(hi_x, q.x);
      lo_y = std::min(lo_y, q.y);
      hi_y = std::max(hi_y, q.y);
    }
  }
  const double pad_x = 0.2 * (hi_x - lo_x);
  const double pad_y = 0.2 * (hi_y - lo_y);
  std::uniform_real_distribution<double> ux(lo_x - pad_x, hi_x + pad_x);
  std::uniform_real_distribution<double> uy(lo_y - pad_y, hi_y + pad_y);
  const double margin = 1e-3 * curve.extent();
  std::vector<Vec2> out;
  while (static_cast<int>(out.size()) < count) {
    const Vec2 p{ux(rng), uy(rng)};
    if (genericity(curve, p, margin).pass) out.push_back(p);
  }
  return out;
}

inline std::vector<BatteryCase> make_battery(int curves, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BatteryCase> out;
  for (int i = 0; i < curves; ++i) {
    BatteryCase bc;
    bc.spec = random_convex_curve(rng);
    bc.points = random_generic_points(make_curve(bc.spec), points, rng);
    out.push_back(std::move(bc));
  }
  return out;
}

/// Poincare index of the cylinder field on a small circle about critical
/// point `which`: radius a quarter of the distance to the nearest other
/// critical point in (t, rho), capped at 0.05.
inline int critical_point_planar_index(const ClosedCurve& curve, Vec2 p,
                                       const std::vector<CriticalPoint>& points,
                                       std::size_t which) {
  const CriticalPoint& c = points[which];
  double gap = 0.2;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i == which) continue;
    gap = std::min(gap, std::hypot(angular_distance(points[i].t_star, c.t_star),
                                   points[i].rho_star - c.rho_star));
  }
  return planar_index_shrinking(cylinder_field(curve, p), {c.t_star, c.rho_star},
                                std::min(0.05, 0.25 * gap));
}

struct BatteryOutcome {
  int curve = 0;
  int point = 0;
  Vec2 p;
  bool ok = false;
  bool planar_indices_agree = false;
  std::string failure;
  std::optional<IndexReport> report;
};

/// Runs index_report (without throwing on mismatch) and the planar index check
/// on every (curve, point) pair. Outcomes are ordered by (curve, point).
inline std::vector<BatteryOutcome> run_battery(const std::vector<BatteryCase>& cases,
                                               const ReportOptions& base = {}) {
  std::vector<std::pair<int, int>> jobs;
  for (std::size_t c = 0; c < cases.size(); ++c)
    for (std::size_t q = 0; q < cases[c].points.size(); ++q)
      jobs.emplace_back(static_cast<int>(c), static_cast<int>(q));
  std::vector<ClosedCurve> curves;
  for (const auto& bc : cases) curves.push_back(make_curve(bc.spec));

  std::vector<BatteryOutcome> out(jobs.size());
  ReportOptions opt = base;
  opt.throw_on_mismatch = false;
  parallel_for(jobs.size(), [&](std::size_t k) {
    auto [c, q] = jobs[k];
    BatteryOutcome& o = out[k];
    o.curve = c;
    o.point = q;
    o.p = cases[c].points[q];
    try {
      IndexReport r = index_report(curves[c], o.p, opt);
      o.planar_indices_agree = true;
      for (std::size_t i = 0; i < r.critical.size(); ++i)
        if (critical_point_planar_index(curves[c], o.p, r.critical, i) != r.critical[i].index)
          o.planar_indices_agree = false;
      o.ok = r.all_checks_pass() && o.planar_indices_agree;
      if (!r.all_checks_pass()) {
        for (const auto& [name, pass] : r.checks)
          if (!pass) o.failure += (o.failure.empty() ? "" : ", ") + name;
      } else if (!o.planar_indices_agree) {
        o.failure = "planar index disagrees with sign(1 - rho k)";
      }
      o.report = std::move(r);
    } catch (const std::exception& e) {
      o.failure = e.what();
    }
  });
  return out;
}

}  // namespace nfield
