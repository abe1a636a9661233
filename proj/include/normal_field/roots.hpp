#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace nfield {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduce an angle to [0, 2pi).
inline double wrap_period(double t) {
  double r = std::fmod(t, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

/// Reduce an angle to (-pi, pi].
inline double principal_angle(double a) {
  double r = std::remainder(a, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

/// Smallest distance between two angles on the circle.
inline double angular_distance(double a, double b) { return std::abs(principal_angle(a - b)); }

struct RootOptions {
  int samples = 4096;
  /// Number of allowed resolution doublings when two roots land in adjacent cells.
  int max_doublings = 2;
  double tolerance = 1e-10;
};

namespace detail {

template <class F>
double bisect(F& f, double a, double fa, double b, double tolerance) {
  for (int it = 0; it < 200 && (b - a) > tolerance; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// All sign-changing roots of a 2pi-periodic function, sorted in [0, 2pi).
///
/// The period is scanned on a uniform grid; every cell whose endpoint values
/// differ in sign is polished by bisection. When two roots fall in adjacent
/// cells the grid is doubled, up to `max_doublings` times.
template <class F>
std::vector<double> periodic_roots(F&& f, const RootOptions& opt = {}) {
  std::vector<double> roots;
  int n = opt.samples;
  for (int level = 0; level <= opt.max_doublings; ++level, n *= 2) {
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) values[i] = f(two_pi * i / n);

    std::vector<int> cells;
    for (int i = 0; i < n; ++i) {
      const double a = values[i];
      const double b = values[(i + 1) % n];
      // A grid value that is exactly zero belongs to the cell it starts.
      if (a == 0.0 || (b != 0.0 && (a < 0.0) != (b < 0.0))) cells.push_back(i);
    }

    bool crowded = false;
    for (std::size_t j = 0; j < cells.size() && !crowded; ++j) {
      const int next = cells[(j + 1) % cells.size()];
      if (cells.size() > 1 && (cells[j] + 1) % n == next) crowded = true;
    }
    if (crowded && level < opt.max_doublings) continue;

    roots.clear();
    for (int i : cells) {
      const double a = two_pi * i / n;
      if (values[i] == 0.0) {
        roots.push_back(a);
        continue;
      }
      const double b = two_pi * (i + 1) / n;
      roots.push_back(wrap_period(detail::bisect(f, a, values[i], b, opt.tolerance)));
    }
    break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Minimise a unimodal function on [a, b] by golden-section search.
template <class F>
double golden_minimize(F&& f, double a, double b, double tolerance = 1e-12) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tolerance; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Minimum over the period of a 2pi-periodic non-negative function, found by
/// dense sampling followed by golden-section refinement of every local minimum.
/// Returns {argmin, min}.
template <class F>
std::pair<double, double> periodic_minimum(F&& f, int samples = 4096) {
  std::vector<double> values(samples);
  for (int i = 0; i < samples; ++i) values[i] = f(two_pi * i / samples);
  const double h = two_pi / samples;
  double best_t = 0.0;
  double best = values[0];
  for (int i = 0; i < samples; ++i) {
    const double prev = values[(i + samples - 1) % samples];
    const double next = values[(i + 1) % samples];
    if (values[i] <= prev && values[i] <= next) {
      const double t0 = two_pi * i / samples;
      const double t = golden_minimize(f, t0 - h, t0 + h);
      const double v = f(t);
      const double fine = std::min(v, values[i]);
      if (fine < best) {
        best = fine;
        best_t = v < values[i] ? wrap_period(t) : t0;
      }
    }
  }
  return {best_t, best};
}

}  // namespace nfield
