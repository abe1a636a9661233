// Acceptance run: every criterion at its pinned tolerance, one PASS/FAIL line
// each. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "normal_field/battery.hpp"
#include "normal_field/curve.hpp"
#include "normal_field/degree.hpp"
#include "normal_field/evolute.hpp"
#include "normal_field/normal_field.hpp"
#include "normal_field/sphere_proj.hpp"
#include "normal_field/surface.hpp"

using namespace nfield;

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::uint64_t battery_seed = 20240601;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Collects failure messages for one criterion.
struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> failures{};

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  bool report(double elapsed) const {
    std::printf("%s criterion %d: %s (%.2f s)\n", failures.empty() ? "PASS" : "FAIL", number,
                title.c_str(), elapsed);
    const std::size_t shown = std::min<std::size_t>(failures.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) std::printf("    %s\n", failures[i].c_str());
    if (failures.size() > shown)
      std::printf("    ... %zu more\n", failures.size() - shown);
    std::fflush(stdout);
    return failures.empty();
  }
};

std::string where(const BatteryOutcome& o) {
  std::ostringstream os;
  os << "curve " << o.curve << " point " << o.point << " (" << o.p.x << ", " << o.p.y << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

bool ellipse_ground_truth() {
  const auto t0 = Clock::now();
  Criterion c{1, "ellipse(2,1) at the origin: critical points and index vector"};
  const ClosedCurve e = make_curve(CurveSpec::ellipse(2, 1));
  const IndexReport r = index_report(e, {0, 0});
  const double ts[] = {0, pi / 2, pi, 3 * pi / 2};
  const double rhos[] = {2, 1, 2, 1};
  const CriticalKind kinds[] = {CriticalKind::saddle, CriticalKind::centre, CriticalKind::saddle,
                                CriticalKind::centre};
  c.require(r.critical.size() == 4, "expected 4 critical points, got " + std::to_string(r.critical.size()));
  for (std::size_t i = 0; i < std::min<std::size_t>(4, r.critical.size()); ++i) {
    const auto& cp = r.critical[i];
    c.require(std::abs(cp.t_star - ts[i]) < 1e-8, "t* mismatch at " + std::to_string(i));
    c.require(std::abs(cp.rho_star - rhos[i]) < 1e-8, "rho* mismatch at " + std::to_string(i));
    c.require(cp.kind == kinds[i], "kind mismatch at " + std::to_string(i));
  }
  const int got[] = {r.r_alpha, r.r_beta.value_or(-99), r.nu.value_or(-99), r.i_N, r.i_S,
                     r.n_p,     r.m_p,                  r.N_p,             r.w_alpha_p, r.w_beta_p};
  const int want[] = {1, 3, 4, 2, 0, 2, 0, 4, 1, -1};
  std::ostringstream vec;
  for (int i = 0; i < 10; ++i) vec << (i ? "," : "") << got[i];
  c.require(std::equal(got, got + 10, want), "index vector (" + vec.str() + ")");
  const double elapsed = seconds_since(t0);
  c.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s exceeds 1 s");
  return c.report(elapsed);
}

struct Battery {
  std::vector<BatteryCase> cases;
  std::vector<ClosedCurve> curves;
  std::vector<BatteryOutcome> outcomes;
  double seconds = 0.0;
};

Battery run_shared_battery() {
  const auto t0 = Clock::now();
  Battery b;
  b.cases = make_battery(50, 20, battery_seed);
  for (const auto& bc : b.cases) b.curves.push_back(make_curve(bc.spec));
  b.outcomes = run_battery(b.cases);
  b.seconds = seconds_since(t0);
  return b;
}

bool saddle_centre_battery(const Battery& b) {
  Criterion c{2, "saddle/centre balance, fold rule and planar indices on 50 curves x 20 points"};
  for (const auto& o : b.outcomes) {
    if (!o.report) {
      c.require(false, where(o) + ": " + o.failure);
      continue;
    }
    const IndexReport& r = *o.report;
    c.require(r.checks.at("saddle_centre_balance"), where(o) + ": saddles != centres or none");
    c.require(r.checks.at("fold_rule"), where(o) + ": fold rule violated");
    c.require(r.finite_index_sum == 0, where(o) + ": finite index sum " + std::to_string(r.finite_index_sum));
    c.require(o.planar_indices_agree, where(o) + ": planar index disagrees with sign(1 - rho k)");
  }
  c.require(b.outcomes.size() == 1000, "expected 1000 cases");
  c.require(b.seconds < 120.0, "runtime " + std::to_string(b.seconds) + " s exceeds 2 min");
  return c.report(b.seconds);
}

bool pole_indices(const Battery& b) {
  const auto t0 = Clock::now();
  Criterion c{3, "pole indices 1 +/- r at rho0 in {1e3, 1e6, 1e9}"};
  for (std::size_t k = 0; k < b.curves.size(); ++k) {
    const int r = rotation_index(b.curves[k]);
    for (double rho0 : {1e3, 1e6, 1e9}) {
      const int n = pole_index(b.curves[k], Pole::north, rho0);
      const int s = pole_index(b.curves[k], Pole::south, rho0);
      c.require(n == 1 + r && s == 1 - r,
                "curve " + std::to_string(k) + " rho0 " + std::to_string(rho0) + ": (" +
                    std::to_string(n) + ", " + std::to_string(s) + ") with r = " + std::to_string(r));
    }
  }
  const ClosedCurve e = make_curve(CurveSpec::ellipse(2, 1));
  c.require(pole_index(e, Pole::north) == 2 && pole_index(e, Pole::south) == 0, "ellipse poles");
  const ClosedCurve l = make_curve(CurveSpec::limacon(0.5));
  c.require(pole_index(l, Pole::north) == 3 && pole_index(l, Pole::south) == -1, "limacon poles");
  return c.report(seconds_since(t0));
}

bool winding_identities(const Battery& b) {
  const auto t0 = Clock::now();
  Criterion c{4, "winding identities with windings by quadrature"};
  // Quadrature windings are recomputed here, independently of the lifted-angle
  // values inside the reports.
  std::vector<std::string> errs(b.outcomes.size());
  parallel_for(b.outcomes.size(), [&](std::size_t i) {
    const auto& o = b.outcomes[i];
    if (!o.report) {
      errs[i] = where(o) + ": " + o.failure;
      return;
    }
    const ClosedCurve& curve = b.curves[o.curve];
    const Evolute ev(curve);
    const IndexReport& r = *o.report;
    try {
      const int wa = winding_by_quadrature([&](double t) { return curve.position(t); },
                                           [&](double t) { return curve.velocity(t); }, o.p);
      const int wb = winding_by_quadrature([&](double t) { return ev.point(t); },
                                           [&](double t) { return ev.derivative(t); }, o.p);
      std::ostringstream os;
      if (wb != r.r_alpha - r.n_p) os << " w_beta " << wb << " != r - n_p";
      if (2 * wb != 2 * r.r_alpha - r.N_p) os << " w_beta " << wb << " != r - N_p/2";
      if (wa != r.r_alpha - r.m_p) os << " w_alpha " << wa << " != r - m_p";
      if (wa != r.w_alpha_p || wb != r.w_beta_p) os << " quadrature and lift disagree";
      if (!os.str().empty()) errs[i] = where(o) + ":" + os.str();
    } catch (const std::exception& e) {
      errs[i] = where(o) + ": " + e.what();
    }
  });
  for (const auto& e : errs) c.require(e.empty(), e);
  return c.report(seconds_since(t0));
}

bool matrix_formula_battery(const Battery& b) {
  const auto t0 = Clock::now();
  Criterion c{5, "matrix formula against independent numerics; cusp formula per curve"};
  for (const auto& o : b.outcomes) {
    if (!o.report) {
      c.require(false, where(o) + ": " + o.failure);
      continue;
    }
    const IndexReport& r = *o.report;
    c.require(r.matrix.r_alpha == r.r_alpha, where(o) + ": r_alpha");
    c.require(r.matrix.r_beta.has_value() && r.matrix.r_beta == r.r_beta, where(o) + ": r_beta");
    c.require(r.matrix.w_alpha_p == r.w_alpha_p, where(o) + ": w_alpha_p");
    c.require(r.matrix.w_beta_p == r.w_beta_p, where(o) + ": w_beta_p");
  }
  for (std::size_t k = 0; k < b.curves.size(); ++k) {
    try {
      const EvoluteTurning t = evolute_rotation_index(b.curves[k]);
      c.require(t.formula == t.numeric, "curve " + std::to_string(k) + ": formula " +
                                            std::to_string(t.formula) + " numeric " +
                                            std::to_string(t.numeric));
    } catch (const std::exception& e) {
      c.require(false, "curve " + std::to_string(k) + ": " + e.what());
    }
  }
  return c.report(seconds_since(t0));
}

bool pair_creation() {
  const auto t0 = Clock::now();
  Criterion c{6, "saddle-centre pair at the fold over t = pi/4 within 20%"};
  const ClosedCurve e = make_curve(CurveSpec::ellipse(2, 1));
  const double t_fold = pi / 4;
  const double eps = 1e-4;
  for (double sign : {1.0, -1.0}) {
    const double ee = sign * eps;
    const auto pred = predict_pair(e, t_fold, ee);
    const auto here = critical_points(e, fold_query_point(e, t_fold, ee));
    const auto there = critical_points(e, fold_query_point(e, t_fold, -ee));
    std::vector<double> near;
    for (const auto& cp : here) {
      const double dt = principal_angle(cp.t_star - t_fold);
      if (std::abs(dt) < 0.05) near.push_back(dt * e.speed(t_fold));
    }
    if (pred) {
      c.require(here.size() == there.size() + 2, "pair count with the predicted sign");
      c.require(near.size() == 2, "expected two critical points near the fold");
      if (near.size() == 2) {
        std::sort(near.begin(), near.end());
        for (double s : {-near[0], near[1]}) {
          const double rel = std::abs(s - pred->delta_s) / pred->delta_s;
          c.require(rel <= 0.2, "offset " + std::to_string(s) + " vs predicted " +
                                    std::to_string(pred->delta_s));
        }
      }
    } else {
      c.require(near.empty(), "pair present for the opposite sign");
      c.require(here.size() + 2 == there.size(), "pair count with the opposite sign");
    }
  }
  c.require(predict_pair(e, t_fold, eps).has_value() != predict_pair(e, t_fold, -eps).has_value(),
            "exactly one sign of eps should create the pair");
  bool raised = false;
  try {
    predict_pair(e, 0.0, eps);
  } catch (const VertexDegeneracyError&) {
    raised = true;
  }
  c.require(raised, "vertex fold did not raise VertexDegeneracyError");
  return c.report(seconds_since(t0));
}

bool degree_oracles() {
  const auto t0 = Clock::now();
  Criterion c{7, "degree oracles: lift vs preimages, relative-degree additivity, solid angle"};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    const int h = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<double> ax(h + 1), bx(h + 1), ay(h + 1), by(h + 1);
    for (auto* v : {&ax, &bx, &ay, &by})
      for (double& x : *v) x = u(rng);
    CircleLoop loop;
    loop.eval = [=](double t) {
      Vec2 v{};
      for (int j = 0; j <= h; ++j) {
        v.x += ax[j] * std::cos(j * t) + bx[j] * std::sin(j * t);
        v.y += ay[j] * std::cos(j * t) + by[j] * std::sin(j * t);
      }
      return v;
    };
    int lifted = 0;
    try {
      lifted = circle_degree(loop);
    } catch (const std::exception&) {
      continue;  // loop through the origin: not a valid comparison
    }
    ++compared;
    try {
      const int pre = degree_by_preimage_retry(loop, 0.0, i).degree;
      c.require(pre == lifted, "loop " + std::to_string(i) + ": lift " + std::to_string(lifted) +
                                   " preimages " + std::to_string(pre));
    } catch (const std::exception& e) {
      c.require(false, "loop " + std::to_string(i) + ": " + e.what());
    }
  }
  c.require(compared >= 95, "only " + std::to_string(compared) + " loops compared");

  auto unit_loop = [&]() {
    const int d = std::uniform_int_distribution<int>(-3, 3)(rng);
    const double a = 2 * u(rng), b = 2 * u(rng), k = u(rng);
    return std::function<Vec2(double)>([=](double t) {
      const double th = d * t + k + a * std::cos(t) + b * std::sin(2 * t);
      return Vec2{std::cos(th), std::sin(th)};
    });
  };
  for (int i = 0; i < 100; ++i) {
    const auto x = unit_loop(), y = unit_loop(), z = unit_loop();
    const int s = relative_degree(x, y) + relative_degree(y, z) + relative_degree(z, x);
    c.require(s == 0, "triple " + std::to_string(i) + ": cyclic sum " + std::to_string(s));
  }

  const Surface s = make_surface(SurfaceSpec::ellipsoid(2, 1.5, 1));
  const SphereMap pos = [&s](const Vec3& d) { return s.position(d); };
  for (Vec3 p : {Vec3{0, 0, 0}, Vec3{1.2, 0.5, 0.3}, Vec3{-0.5, -1.0, 0.4}})
    c.require(spherical_degree(pos, p) == 1, "interior point degree");
  for (Vec3 p : {Vec3{3, 0, 0}, Vec3{0, 2, 0}, Vec3{1.5, 1.2, 0.6}})
    c.require(spherical_degree(pos, p) == 0, "exterior point degree");
  return c.report(seconds_since(t0));
}

bool surface_suite() {
  const auto t0 = Clock::now();
  Criterion c{8, "ellipsoid(2,1.5,1): critical points, identities, umbilics, grid doubling"};
  const Surface s = make_surface(SurfaceSpec::ellipsoid(2, 1.5, 1));
  SurfaceReportOptions base;
  base.throw_on_mismatch = false;
  SurfaceReportOptions dense = base;
  dense.grid = {512, 256};
  dense.mesh.longitudes = 512;
  dense.mesh.latitudes = 256;

  std::vector<int> signature[2];
  int pass = 0;
  for (const SurfaceReportOptions* opt : {&base, &dense}) {
    const SurfaceIndexReport r = surface_report(s, {0, 0, 0}, *opt);
    const std::string tag = pass == 0 ? "default grid: " : "doubled grid: ";
    c.require(r.critical.size() == 6, tag + std::to_string(r.critical.size()) + " critical points");
    for (const auto& cp : r.critical) {
      const Vec3 x = cp.position;
      SurfaceExtremum want = SurfaceExtremum::minimum;
      if (std::abs(std::abs(x.x) - 2) < 1e-8) want = SurfaceExtremum::maximum;
      else if (std::abs(std::abs(x.y) - 1.5) < 1e-8) want = SurfaceExtremum::saddle;
      else c.require(std::abs(std::abs(x.z) - 1) < 1e-8, tag + "critical point off the axes");
      c.require(cp.d2_type == want, tag + "wrong type at an axis endpoint");
    }
    c.require(r.n_plus == 2 && r.n_minus == 2 && r.n_zero == 2, tag + "counts");
    c.require(r.index_sum == 2, tag + "index sum");
    c.require(r.n_plus + r.n_minus - r.n_zero == 2, tag + "count balance");
    c.require(r.w_beta1_p == 1 && r.w_beta2_p == 1, tag + "sheet windings");
    c.require(r.w_beta1_p == r.n_plus - 1 && r.w_beta2_p == r.n_minus - 1, tag + "degree vs counts");
    c.require(r.all_checks_pass(), tag + "report checks");
    std::vector<ChartPoint> us;
    try {
      us = umbilics(s, opt->grid);
    } catch (const std::exception& e) {
      c.require(false, tag + e.what());
    }
    c.require(us.size() == 4, tag + std::to_string(us.size()) + " umbilics");
    for (const auto& uc : us)
      c.require(std::abs(s.position(chart_to_direction(uc)).y) < 1e-6, tag + "umbilic off the x-z plane");
    signature[pass] = {r.n_plus,    r.n_minus,   r.n_zero, r.w_beta1_p, r.w_beta2_p,
                       r.deg_beta1, r.deg_beta2, r.N_p,    r.index_sum, static_cast<int>(us.size())};
    ++pass;
  }
  c.require(signature[0] == signature[1], "doubling the grid changed an integer output");
  const double elapsed = seconds_since(t0);
  c.require(elapsed < 120.0, "runtime exceeds 2 min");
  return c.report(elapsed);
}

/// Crossings of the segment a + s (b - a), s in [0, 1], with a dense evolute
/// polyline: (s, |sin| of the crossing angle).
std::vector<std::pair<double, double>> evolute_crossings(const ClosedCurve& curve, Vec2 a, Vec2 b) {
  const int n = 16384;
  std::vector<std::pair<double, double>> out;
  const Vec2 d = b - a;
  Vec2 prev = curve.centre_of_curvature(0.0);
  for (int i = 1; i <= n; ++i) {
    const Vec2 cur = curve.centre_of_curvature(two_pi * i / n);
    const Vec2 e = cur - prev;
    const double den = cross(d, e);
    if (den != 0.0) {
      const Vec2 w = prev - a;
      const double s = cross(w, e) / den;
      const double r = cross(w, d) / den;
      if (s >= 0 && s <= 1 && r >= 0 && r < 1)
        out.emplace_back(s, std::abs(den) / (norm(d) * norm(e)));
    }
    prev = cur;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool crossing_parity() {
  const auto t0 = Clock::now();
  Criterion c{9, "evolute crossings along 20 random transversal segments"};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int segments = 0, crossings = 0, attempts = 0;
  while (segments < 20 && attempts < 2000) {
    ++attempts;
    const ClosedCurve curve = make_curve(random_convex_curve(rng));
    // Through a random evolute point, in a random direction.
    const Vec2 mid = curve.centre_of_curvature(two_pi * u(rng));
    const double ang = two_pi * u(rng);
    const double half = 0.5 * curve.extent() * (0.2 + u(rng));
    const Vec2 dir{std::cos(ang), std::sin(ang)};
    const Vec2 a = mid - half * dir, b = mid + half * dir;
    const auto xs = evolute_crossings(curve, a, b);
    if (xs.empty()) continue;
    bool clean = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      clean = clean && xs[i].second > 0.05;
      if (i > 0) clean = clean && xs[i].first - xs[i - 1].first > 1e-3;
    }
    clean = clean && xs.front().first > 1e-3 && xs.back().first < 1 - 1e-3;
    if (!clean) continue;  // not transversal, or crossings too close to resolve
    // One sample in each gap between crossings.
    std::vector<double> probes{0.5 * xs.front().first};
    for (std::size_t i = 1; i < xs.size(); ++i) probes.push_back(0.5 * (xs[i - 1].first + xs[i].first));
    probes.push_back(0.5 * (xs.back().first + 1.0));
    std::vector<int> n_count, w_beta;
    bool generic = true;
    for (double s : probes) {
      const Vec2 p = a + s * (b - a);
      if (!genericity(curve, p, 1e-6).pass) {
        generic = false;
        break;
      }
      n_count.push_back(static_cast<int>(critical_points(curve, p).size()));
      w_beta.push_back(evolute_winding(curve, p));
    }
    if (!generic) continue;
    ++segments;
    for (std::size_t i = 0; i + 1 < probes.size(); ++i) {
      ++crossings;
      const int dn = n_count[i + 1] - n_count[i];
      const int dw = w_beta[i + 1] - w_beta[i];
      c.require(std::abs(dn) == 2 && dw == -dn / 2,
                "segment " + std::to_string(segments) + " crossing " + std::to_string(i) +
                    ": dN = " + std::to_string(dn) + ", dw = " + std::to_string(dw));
    }
  }
  c.require(segments == 20, "only " + std::to_string(segments) + " usable segments");
  std::printf("    %d segments, %d crossings\n", segments, crossings);
  return c.report(seconds_since(t0));
}

}  // namespace

int main() {
  int failed = 0;
  auto run = [&failed](bool ok) { failed += ok ? 0 : 1; };
  run(ellipse_ground_truth());
  const Battery battery = run_shared_battery();
  run(saddle_centre_battery(battery));
  run(pole_indices(battery));
  run(winding_identities(battery));
  run(matrix_formula_battery(battery));
  run(pair_creation());
  run(degree_oracles());
  run(surface_suite());
  run(crossing_parity());
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
