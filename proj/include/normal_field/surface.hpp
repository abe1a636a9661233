#pragma once

// Normal map of a convex topological sphere in space: principal curvatures
// from the fundamental forms, the two focal sheets, umbilics, the critical
// points of the distance-squared function from a query point, and the
// focal-sheet counting identities.
//
// A surface is a map from the unit sphere: an ellipsoid diag(a, b, c) d, or a
// radial graph r(d) d with r = 1 + sum c_lm Y_lm(d). Derivatives come from two
// spherical charts; chart 0 has its poles on the z axis, chart 1 is the same
// chart composed with the cyclic permutation (x, y, z) -> (z, x, y), so its
// poles lie on the x axis. In both, (u, v) = (longitude, colatitude), which
// makes su x sv point inward for an orientation-preserving embedding.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "normal_field/degree.hpp"
#include "normal_field/errors.hpp"
#include "normal_field/jet.hpp"
#include "normal_field/parallel.hpp"
#include "normal_field/roots.hpp"
#include "normal_field/vec.hpp"

namespace nfield {

struct Harmonic {
  int l = 0;
  int m = 0;
  double coeff = 0.0;
};

struct SurfaceSpec {
  enum class Kind { ellipsoid, radial };
  Kind kind = Kind::ellipsoid;
  std::array<double, 3> axes{1.0, 1.0, 1.0};
  std::vector<Harmonic> harmonics;

  static SurfaceSpec ellipsoid(double a, double b, double c) {
    SurfaceSpec s;
    s.axes = {a, b, c};
    return s;
  }
  static SurfaceSpec radial(std::vector<Harmonic> terms) {
    SurfaceSpec s;
    s.kind = Kind::radial;
    s.harmonics = std::move(terms);
    return s;
  }
};

namespace detail {

/// Real spherical harmonic of a unit vector, unnormalised: the associated
/// Legendre polynomial in z with its (1 - z^2)^{m/2} factor carried by
/// Re/Im (x + iy)^|m|. Smooth in d everywhere, so it differentiates through jets.
template <class T>
T spherical_harmonic(int l, int m, const Vec3T<T>& d) {
  const int am = std::abs(m);
  // Q_l^m(z): P_l^m(z) / (1 - z^2)^{m/2}
  double qmm = 1.0;
  for (int i = 1; i <= am; ++i) qmm *= -(2.0 * i - 1.0);
  T q_prev = T(qmm);
  T q = q_prev;
  if (l > am) {
    T q_next = (2.0 * am + 1.0) * d.z * q_prev;
    for (int ll = am + 2; ll <= l; ++ll) {
      T q_new = ((2.0 * ll - 1.0) * d.z * q_next - (ll + am - 1.0) * q_prev) / (ll - am);
      q_prev = q_next;
      q_next = q_new;
    }
    q = q_next;
  }
  T re = T(1.0);
  T im = T(0.0);
  for (int i = 0; i < am; ++i) {
    T nr = re * d.x - im * d.y;
    T ni = re * d.y + im * d.x;
    re = nr;
    im = ni;
  }
  return q * (m >= 0 ? re : im);
}

template <class T>
Vec3T<T> chart_direction(int chart, const T& u, const T& v) {
  using std::cos;
  using std::sin;
  const T sv = sin(v);
  const T a = sv * cos(u);
  const T b = sv * sin(u);
  const T c = cos(v);
  if (chart == 0) return {a, b, c};
  return {c, a, b};
}

}  // namespace detail

struct ChartPoint {
  int chart = 0;
  double u = 0.0;
  double v = 0.0;
};

/// Chart coordinates of a unit direction in the given chart.
inline ChartPoint to_chart(const Vec3& d, int chart) {
  if (chart == 0)
    return {0, wrap_period(std::atan2(d.y, d.x)), std::acos(std::clamp(d.z, -1.0, 1.0))};
  return {1, wrap_period(std::atan2(d.z, d.y)), std::acos(std::clamp(d.x, -1.0, 1.0))};
}

/// Chart that owns a direction: chart 0 while its colatitude is in [pi/6, 5pi/6].
inline int owner_chart(const Vec3& d) {
  return std::abs(d.z) <= std::cos(std::numbers::pi / 6.0) ? 0 : 1;
}

inline ChartPoint owned_chart_point(const Vec3& d) { return to_chart(d, owner_chart(d)); }

inline Vec3 chart_to_direction(const ChartPoint& c) {
  return detail::chart_direction<double>(c.chart, c.u, c.v);
}

/// Differential geometry at one chart point.
struct LocalGeometry {
  Vec3 position, su, sv, suu, suv, svv;
  Vec3 normal;  ///< inward unit normal
  double E = 0, F = 0, G = 0;
  double L = 0, M = 0, N = 0;
  double k1 = 0, k2 = 0;  ///< principal curvatures, k2 >= k1
};

class Surface {
 public:
  const SurfaceSpec& spec() const { return spec_; }

  template <class T>
  Vec3T<T> embed(const Vec3T<T>& d) const {
    if (spec_.kind == SurfaceSpec::Kind::ellipsoid)
      return {spec_.axes[0] * d.x, spec_.axes[1] * d.y, spec_.axes[2] * d.z};
    T r = T(1.0);
    for (const auto& h : spec_.harmonics) r = r + h.coeff * detail::spherical_harmonic(h.l, h.m, d);
    return r * d;
  }

  Vec3 position(const Vec3& d) const { return embed(d); }

  LocalGeometry local(const ChartPoint& c) const {
    const Jet2 u = Jet2::u_variable(c.u);
    const Jet2 v = Jet2::v_variable(c.v);
    const Vec3T<Jet2> s = embed(detail::chart_direction(c.chart, u, v));
    LocalGeometry g;
    g.position = {s.x.v, s.y.v, s.z.v};
    g.su = {s.x.du, s.y.du, s.z.du};
    g.sv = {s.x.dv, s.y.dv, s.z.dv};
    g.suu = {s.x.duu, s.y.duu, s.z.duu};
    g.suv = {s.x.duv, s.y.duv, s.z.duv};
    g.svv = {s.x.dvv, s.y.dvv, s.z.dvv};
    const Vec3 n = cross(g.su, g.sv);
    g.normal = n / norm(n);
    g.E = dot(g.su, g.su);
    g.F = dot(g.su, g.sv);
    g.G = dot(g.sv, g.sv);
    g.L = dot(g.suu, g.normal);
    g.M = dot(g.suv, g.normal);
    g.N = dot(g.svv, g.normal);
    // Second fundamental form in the orthonormal frame e1 = su/|su|, e2 with
    // sv = alpha e1 + h e2. The eigenvalue gap is then a sum of squares, so
    // umbilics get k1 == k2 to rounding rather than to sqrt(rounding).
    const double se = std::sqrt(g.E);
    const double alpha = g.F / se;
    const double h = std::sqrt(g.G - alpha * alpha);
    const double l11 = g.L / g.E;
    const double l12 = (g.M / se - alpha * l11) / h;
    const double l22 = (g.N - alpha * alpha * l11 - 2.0 * alpha * h * l12) / (h * h);
    const double mean = 0.5 * (l11 + l22);
    const double half_gap = 0.5 * std::hypot(l11 - l22, 2.0 * l12);
    g.k1 = mean - half_gap;
    g.k2 = mean + half_gap;
    return g;
  }

  LocalGeometry local(const Vec3& d) const { return local(owned_chart_point(d)); }

 private:
  friend Surface make_surface(SurfaceSpec spec);
  SurfaceSpec spec_;
};

/// Validate and build: the surface must be regular and have k1 > 0 on a
/// dense sample of both charts. Throws SpecError, RegularityError, ConvexityError.
inline Surface make_surface(SurfaceSpec spec) {
  if (spec.kind == SurfaceSpec::Kind::ellipsoid) {
    for (double a : spec.axes)
      if (!(a > 0.0) || !std::isfinite(a)) throw SpecError("ellipsoid semi-axes must be positive");
  } else {
    for (const auto& h : spec.harmonics) {
      if (h.l < 0 || std::abs(h.m) > h.l) throw SpecError("harmonic needs l >= 0 and |m| <= l");
      if (!std::isfinite(h.coeff)) throw SpecError("non-finite harmonic coefficient");
    }
  }
  Surface s;
  s.spec_ = std::move(spec);
  const int nu = 128;
  const int nv = 64;
  for (int chart = 0; chart < 2; ++chart) {
    for (int j = 0; j < nv; ++j) {
      const double v = std::numbers::pi * (j + 0.5) / nv;
      for (int i = 0; i < nu; ++i) {
        const ChartPoint c{chart, two_pi * i / nu, v};
        const Vec3 d = chart_to_direction(c);
        if (owner_chart(d) != chart) continue;
        if (s.spec_.kind == SurfaceSpec::Kind::radial && !(dot(s.position(d), d) > 0.0))
          throw RegularityError("radial function is not positive");
        const LocalGeometry g = s.local(c);
        const double area = norm(cross(g.su, g.sv));
        if (!(area > 1e-12 * std::sin(v))) throw RegularityError("surface is not regular");
        if (!(g.k1 > 0.0))
          throw ConvexityError("principal curvature k1 = " + std::to_string(g.k1) +
                               " is not positive at direction (" + std::to_string(d.x) + ", " +
                               std::to_string(d.y) + ", " + std::to_string(d.z) + ")");
      }
    }
  }
  return s;
}

struct PrincipalData {
  double k1 = 0.0;
  double k2 = 0.0;
  Vec3 position;
  Vec3 normal;
  Vec3 beta1;  ///< sigma + n / k1
  Vec3 beta2;  ///< sigma + n / k2
};

inline PrincipalData principal_data(const Surface& surface, const ChartPoint& c) {
  const LocalGeometry g = surface.local(c);
  return {g.k1, g.k2, g.position, g.normal, g.position + (1.0 / g.k1) * g.normal,
          g.position + (1.0 / g.k2) * g.normal};
}

inline PrincipalData principal_data(const Surface& surface, const Vec3& direction) {
  return principal_data(surface, owned_chart_point(normalized(direction)));
}

/// Principal directions in chart coordinates (coefficients of su, sv).
inline std::array<std::array<double, 2>, 2> principal_directions(const LocalGeometry& g) {
  std::array<std::array<double, 2>, 2> out{};
  const double ks[2] = {g.k1, g.k2};
  for (int i = 0; i < 2; ++i) {
    const double k = ks[i];
    const std::array<double, 2> a{g.M - k * g.F, -(g.L - k * g.E)};
    const std::array<double, 2> b{g.N - k * g.G, -(g.M - k * g.F)};
    out[i] = std::hypot(a[0], a[1]) >= std::hypot(b[0], b[1]) ? a : b;
  }
  return out;
}

/// Traceless part of the second fundamental form in an orthonormal frame,
/// (a - c, 2b); it vanishes exactly at umbilics.
inline std::array<double, 2> umbilic_defect(const LocalGeometry& g) {
  const double se = std::sqrt(g.E);
  const double h = std::sqrt(g.G - g.F * g.F / g.E);
  const std::array<double, 2> e1{1.0 / se, 0.0};
  const std::array<double, 2> e2{-g.F / (g.E * h), 1.0 / h};
  auto form = [&](const std::array<double, 2>& x, const std::array<double, 2>& y) {
    return x[0] * (g.L * y[0] + g.M * y[1]) + x[1] * (g.M * y[0] + g.N * y[1]);
  };
  return {form(e1, e1) - form(e2, e2), 2.0 * form(e1, e2)};
}

struct SurfaceGrid {
  int longitudes = 256;
  int latitudes = 128;
};

namespace detail {

/// Calls fn(chart_point, i, j) for grid cells of each chart within (or one
/// cell beyond) that chart's ownership band.
template <class Fn>
void for_each_owned_cell(const SurfaceGrid& grid, Fn&& fn) {
  const double band_lo = std::numbers::pi / 6.0 - std::numbers::pi / grid.latitudes;
  const double band_hi = 5.0 * std::numbers::pi / 6.0 + std::numbers::pi / grid.latitudes;
  for (int chart = 0; chart < 2; ++chart)
    for (int j = 0; j < grid.latitudes; ++j) {
      const double v = std::numbers::pi * (j + 0.5) / grid.latitudes;
      if (v < band_lo || v > band_hi) continue;
      for (int i = 0; i < grid.longitudes; ++i) fn(ChartPoint{chart, two_pi * i / grid.longitudes, v}, i, j);
    }
}

/// Grid cells whose score is a local minimum over the 8-neighbourhood
/// (periodic in u), restricted to each chart's ownership band.
template <class Score>
std::vector<ChartPoint> local_minima_seeds(const SurfaceGrid& grid, Score&& score) {
  const int nu = grid.longitudes;
  const int nv = grid.latitudes;
  std::vector<ChartPoint> seeds;
  for (int chart = 0; chart < 2; ++chart) {
    std::vector<double> f(static_cast<std::size_t>(nu) * nv);
    parallel_for(static_cast<std::size_t>(nv), [&](std::size_t j) {
      const double v = std::numbers::pi * (j + 0.5) / nv;
      for (int i = 0; i < nu; ++i) f[j * nu + i] = score(ChartPoint{chart, two_pi * i / nu, v});
    });
    for (int j = 1; j + 1 < nv; ++j) {
      const double v = std::numbers::pi * (j + 0.5) / nv;
      if (v < std::numbers::pi / 6.0 - std::numbers::pi / nv ||
          v > 5.0 * std::numbers::pi / 6.0 + std::numbers::pi / nv)
        continue;
      for (int i = 0; i < nu; ++i) {
        const double c = f[static_cast<std::size_t>(j) * nu + i];
        bool is_min = std::isfinite(c);
        for (int dj = -1; dj <= 1 && is_min; ++dj)
          for (int di = -1; di <= 1 && is_min; ++di) {
            if (di == 0 && dj == 0) continue;
            const int ii = (i + di + nu) % nu;
            if (f[static_cast<std::size_t>(j + dj) * nu + ii] < c) is_min = false;
          }
        if (is_min) seeds.push_back({chart, two_pi * i / nu, v});
      }
    }
  }
  return seeds;
}

/// Re-express a chart point in the chart that owns its direction.
inline ChartPoint rehome(const ChartPoint& c) { return owned_chart_point(chart_to_direction(c)); }

}  // namespace detail

/// Umbilics: grid minima of the scaled curvature gap seed a Newton solve of
/// umbilic_defect = 0; a solution is kept when k2 - k1 < 1e-6 k2, and copies
/// closer than 1e-4 in space are merged. Returns owning-chart coordinates.
inline std::vector<ChartPoint> umbilics(const Surface& surface, const SurfaceGrid& grid = {}) {
  double max_gap = 0.0;
  detail::for_each_owned_cell(SurfaceGrid{64, 32}, [&](const ChartPoint& c, int, int) {
    const LocalGeometry g = surface.local(c);
    max_gap = std::max(max_gap, (g.k2 - g.k1) / (g.k1 + g.k2));
  });
  if (max_gap < 1e-9) throw TotallyUmbilicError("every point is umbilic (round sphere)");

  const auto seeds = detail::local_minima_seeds(grid, [&](const ChartPoint& c) {
    const LocalGeometry g = surface.local(c);
    const double r = (g.k2 - g.k1) / (g.k1 + g.k2);
    return r * r;
  });

  std::vector<ChartPoint> found;
  std::vector<Vec3> where;
  for (ChartPoint c : seeds) {
    for (int it = 0; it < 60; ++it) {
      c = detail::rehome(c);
      const auto w = umbilic_defect(surface.local(c));
      const double h = 1e-6;
      auto at = [&](double du, double dv) {
        return umbilic_defect(surface.local(ChartPoint{c.chart, c.u + du, c.v + dv}));
      };
      const auto wu_p = at(h, 0), wu_m = at(-h, 0), wv_p = at(0, h), wv_m = at(0, -h);
      const double j11 = (wu_p[0] - wu_m[0]) / (2 * h), j21 = (wu_p[1] - wu_m[1]) / (2 * h);
      const double j12 = (wv_p[0] - wv_m[0]) / (2 * h), j22 = (wv_p[1] - wv_m[1]) / (2 * h);
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) break;
      double du = -(j22 * w[0] - j12 * w[1]) / det;
      double dv = -(-j21 * w[0] + j11 * w[1]) / det;
      const double step = std::hypot(du, dv);
      if (step > 0.1) {
        du *= 0.1 / step;
        dv *= 0.1 / step;
      }
      c.u += du;
      c.v += dv;
      if (c.v <= 0.0 || c.v >= std::numbers::pi) break;
      if (step < 1e-13) break;
    }
    // Acceptance rests on the curvature gap, not on the Newton step size.
    if (c.v <= 0.0 || c.v >= std::numbers::pi) continue;
    c = detail::rehome(c);
    const LocalGeometry g = surface.local(c);
    if (!(g.k2 - g.k1 < 1e-6 * g.k2)) continue;
    bool dup = false;
    for (const Vec3& q : where)
      if (norm(q - g.position) < 1e-4) dup = true;
    if (dup) continue;
    found.push_back(c);
    where.push_back(g.position);
  }
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Vec3& p = where[a];
    const Vec3& q = where[b];
    return std::tie(p.x, p.y, p.z) < std::tie(q.x, q.y, q.z);
  });
  std::vector<ChartPoint> sorted;
  for (std::size_t i : order) sorted.push_back(found[i]);
  return sorted;
}

enum class SurfaceExtremum { minimum, saddle, maximum };

inline const char* to_string(SurfaceExtremum e) {
  switch (e) {
    case SurfaceExtremum::minimum: return "minimum";
    case SurfaceExtremum::saddle: return "saddle";
    default: return "maximum";
  }
}

struct SurfaceCriticalPoint {
  ChartPoint where;
  Vec3 position;
  double rho_star = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  SurfaceExtremum d2_type = SurfaceExtremum::minimum;
  /// sgn[(1 - rho k1)(1 - rho k2)]
  int index = 0;
  /// Hessian classification agrees with the position relative to the sheets.
  bool sheet_rule_agrees = false;
};

struct SurfaceTolerances {
  double genericity = 1e-6;
  double degenerate = 1e-8;
  double gradient = 1e-10;
  double merge_radius = 1e-4;
};

namespace detail {

inline Jet2 distance_squared(const Surface& s, const ChartPoint& c, const Vec3& p) {
  const Vec3T<Jet2> x =
      s.embed(chart_direction(c.chart, Jet2::u_variable(c.u), Jet2::v_variable(c.v)));
  const Jet2 dx = x.x - p.x;
  const Jet2 dy = x.y - p.y;
  const Jet2 dz = x.z - p.z;
  return dx * dx + dy * dy + dz * dz;
}

/// Squared gradient length w.r.t. the round metric of the parameter sphere.
inline double gradient_score(const Jet2& f, double v) {
  const double sv = std::sin(v);
  return f.du * f.du / (sv * sv) + f.dv * f.dv;
}

}  // namespace detail

/// Stationary points of D^2 = |sigma - p|^2 over the sphere.
///
/// Seeds are grid minima of the gradient length in each chart's ownership
/// band; each is refined by Newton iteration with the exact Hessian (re-homed
/// to the owning chart at every step) to gradient length below 1e-10. Points
/// within the merge radius in space are merged.
inline std::vector<SurfaceCriticalPoint> surface_critical_points(
    const Surface& surface, const Vec3& p, const SurfaceGrid& grid = {},
    const SurfaceTolerances& tol = {}) {
  // Sampled genericity: distance from p to the surface and both focal sheets.
  double closest = std::numeric_limits<double>::infinity();
  std::string which;
  detail::for_each_owned_cell(grid, [&](const ChartPoint& c, int, int) {
    const PrincipalData pd = principal_data(surface, c);
    const double ds = norm(pd.position - p);
    const double d1 = norm(pd.beta1 - p);
    const double d2 = norm(pd.beta2 - p);
    if (ds < closest) { closest = ds; which = "surface"; }
    if (d1 < closest) { closest = d1; which = "focal sheet 1"; }
    if (d2 < closest) { closest = d2; which = "focal sheet 2"; }
  });
  if (!(closest > tol.genericity))
    throw GenericityError("point lies on the " + which + " (sampled distance " +
                          std::to_string(closest) + ")");

  const auto seeds = detail::local_minima_seeds(grid, [&](const ChartPoint& c) {
    return detail::gradient_score(detail::distance_squared(surface, c, p), c.v);
  });

  std::vector<SurfaceCriticalPoint> out;
  for (ChartPoint c : seeds) {
    bool converged = false;
    for (int it = 0; it < 80; ++it) {
      c = detail::rehome(c);
      const Jet2 f = detail::distance_squared(surface, c, p);
      if (std::sqrt(detail::gradient_score(f, c.v)) < tol.gradient) {
        converged = true;
        break;
      }
      const double det = f.duu * f.dvv - f.duv * f.duv;
      if (det == 0.0 || !std::isfinite(det)) break;
      double du = -(f.dvv * f.du - f.duv * f.dv) / det;
      double dv = -(-f.duv * f.du + f.duu * f.dv) / det;
      const double step = std::hypot(du, dv);
      if (step > 0.2) {
        du *= 0.2 / step;
        dv *= 0.2 / step;
      }
      c.u += du;
      c.v += dv;
      if (c.v <= 0.0 || c.v >= std::numbers::pi) break;
    }
    if (!converged) continue;

    const Jet2 f = detail::distance_squared(surface, c, p);
    const LocalGeometry g = surface.local(c);
    bool dup = false;
    for (const auto& q : out)
      if (norm(q.position - g.position) < tol.merge_radius) dup = true;
    if (dup) continue;

    SurfaceCriticalPoint cp;
    cp.where = c;
    cp.position = g.position;
    cp.k1 = g.k1;
    cp.k2 = g.k2;
    cp.rho_star = -dot(g.position - p, g.normal);
    if (std::abs(cp.rho_star) <= tol.genericity)
      throw GenericityError("point lies on the surface (distance " +
                            std::to_string(std::abs(cp.rho_star)) + ")");
    const double j1 = 1.0 - cp.rho_star * g.k1;
    const double j2 = 1.0 - cp.rho_star * g.k2;
    if (std::abs(j1) <= tol.degenerate * (1.0 + std::abs(cp.rho_star * g.k1)) ||
        std::abs(j2) <= tol.degenerate * (1.0 + std::abs(cp.rho_star * g.k2)))
      throw DegenerateCriticalPointError("critical point on a focal sheet");
    cp.index = (j1 * j2 > 0.0) ? 1 : -1;

    const double det = f.duu * f.dvv - f.duv * f.duv;
    if (det < 0.0)
      cp.d2_type = SurfaceExtremum::saddle;
    else
      cp.d2_type = (f.duu + f.dvv) > 0.0 ? SurfaceExtremum::minimum : SurfaceExtremum::maximum;

    const double far = 1.0 / g.k1;
    const double near = 1.0 / g.k2;
    switch (cp.d2_type) {
      case SurfaceExtremum::maximum: cp.sheet_rule_agrees = cp.rho_star > far; break;
      case SurfaceExtremum::minimum: cp.sheet_rule_agrees = cp.rho_star < near; break;
      default: cp.sheet_rule_agrees = cp.rho_star > near && cp.rho_star < far; break;
    }
    out.push_back(cp);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.position.x, a.position.y, a.position.z) <
           std::tie(b.position.x, b.position.y, b.position.z);
  });
  return out;
}

struct SurfaceIndexReport {
  Vec3 p;
  int n_plus = 0;   ///< maxima of D^2
  int n_minus = 0;  ///< minima of D^2
  int n_zero = 0;   ///< saddles of D^2
  /// Solid-angle degrees of the sheets about p, domain sphere outward-oriented.
  int deg_beta1 = 0;
  int deg_beta2 = 0;
  /// Focal-sheet windings: sheet 1 keeps the domain orientation, sheet 2 takes
  /// the reversed one, so w_beta2_p = -deg_beta2.
  int w_beta1_p = 0;
  int w_beta2_p = 0;
  int N_p = 0;
  int d = 1;
  int index_sum = 0;
  std::vector<SurfaceCriticalPoint> critical;
  std::map<std::string, bool> checks;

  bool all_checks_pass() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return true;
  }
};

struct SurfaceReportOptions {
  SurfaceGrid grid{};
  SphereMeshOptions mesh{};
  SurfaceTolerances tolerances{};
  bool throw_on_mismatch = true;
};

/// Focal sheet i (1 or 2) as a map from the unit sphere.
inline SphereMap focal_sheet_map(const Surface& surface, int sheet) {
  return [&surface, sheet](const Vec3& d) {
    const PrincipalData pd = principal_data(surface, d);
    return sheet == 1 ? pd.beta1 : pd.beta2;
  };
}

/// Counts of maxima, minima and saddles of D^2 from p, with the focal-sheet
/// windings measured independently as map degrees of the two sheets about p.
inline SurfaceIndexReport surface_report(const Surface& surface, const Vec3& p,
                                         const SurfaceReportOptions& opt = {}) {
  SurfaceIndexReport r;
  r.p = p;
  r.critical = surface_critical_points(surface, p, opt.grid, opt.tolerances);
  bool sheets = true;
  bool index_rule = true;
  for (const auto& cp : r.critical) {
    switch (cp.d2_type) {
      case SurfaceExtremum::maximum: ++r.n_plus; break;
      case SurfaceExtremum::minimum: ++r.n_minus; break;
      default: ++r.n_zero; break;
    }
    r.index_sum += cp.index;
    sheets = sheets && cp.sheet_rule_agrees;
    index_rule = index_rule && (cp.index == (cp.d2_type == SurfaceExtremum::saddle ? -1 : 1));
  }
  r.N_p = static_cast<int>(r.critical.size());
  r.deg_beta1 = spherical_degree(focal_sheet_map(surface, 1), p, opt.mesh);
  r.deg_beta2 = spherical_degree(focal_sheet_map(surface, 2), p, opt.mesh);
  r.w_beta1_p = r.deg_beta1;
  r.w_beta2_p = -r.deg_beta2;

  auto& c = r.checks;
  c["hessian_matches_sheets"] = sheets;
  c["index_matches_type"] = index_rule;
  c["index_sum_2d"] = r.index_sum == 2 * r.d;
  c["count_balance"] = r.n_plus + r.n_minus - r.n_zero == 2;
  c["w_beta1_eq_nplus_minus_1"] = r.w_beta1_p == r.n_plus - 1;
  c["w_beta2_eq_nminus_minus_1"] = r.w_beta2_p == r.n_minus - 1;
  c["N_eq_2_wsum_plus_2"] = r.N_p == 2 * (r.w_beta1_p + r.w_beta2_p) + 2;

  if (opt.throw_on_mismatch && !r.all_checks_pass()) {
    std::string failed;
    for (const auto& [name, ok] : c)
      if (!ok) failed += (failed.empty() ? "" : ", ") + name;
    throw IdentityMismatchError("surface identities failed: " + failed);
  }
  return r;
}

}  // namespace nfield
