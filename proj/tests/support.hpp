#pragma once

// Independent oracles shared by the unit tests. Nothing here calls into the
// library's numerics.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "normal_field/vec.hpp"

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Curvature of (a cos t, b sin t).
inline double ellipse_curvature(double a, double b, double t) {
  const double s = std::sin(t), c = std::cos(t);
  return a * b / std::pow(a * a * s * s + b * b * c * c, 1.5);
}

/// Centre of curvature of (a cos t, b sin t): the astroid-like evolute.
inline nfield::Vec2 ellipse_evolute(double a, double b, double t) {
  const double e = a * a - b * b;
  return {e / a * std::pow(std::cos(t), 3), -e / b * std::pow(std::sin(t), 3)};
}

inline nfield::Vec2 ellipse_evolute_derivative(double a, double b, double t) {
  const double e = a * a - b * b;
  const double c = std::cos(t), s = std::sin(t);
  return {-3.0 * e / a * c * c * s, -3.0 * e / b * s * s * c};
}

/// Winding number by midpoint quadrature of the angle form (x dy - y dx)/r^2.
inline double winding_quadrature(const std::function<nfield::Vec2(double)>& pos,
                                 const std::function<nfield::Vec2(double)>& vel, nfield::Vec2 p,
                                 int samples = 200000) {
  double sum = 0.0;
  const double h = 2.0 * pi / samples;
  for (int i = 0; i < samples; ++i) {
    const double t = (i + 0.5) * h;
    const nfield::Vec2 d = pos(t) - p;
    const nfield::Vec2 v = vel(t);
    sum += (d.x * v.y - d.y * v.x) / (d.x * d.x + d.y * d.y) * h;
  }
  return sum / (2.0 * pi);
}

/// Random trigonometric loop: 1 to 5 harmonics with coefficients in [-1, 1].
struct TrigLoop {
  std::vector<double> ax, bx, ay, by;

  nfield::Vec2 operator()(double t) const {
    nfield::Vec2 v{};
    for (std::size_t j = 0; j < ax.size(); ++j) {
      const double c = std::cos(j * t), s = std::sin(j * t);
      v.x += ax[j] * c + bx[j] * s;
      v.y += ay[j] * c + by[j] * s;
    }
    return v;
  }

  static TrigLoop random(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int h = std::uniform_int_distribution<int>(1, 5)(rng);
    TrigLoop l;
    for (auto* v : {&l.ax, &l.bx, &l.ay, &l.by}) {
      v->resize(h + 1);
      for (double& x : *v) x = u(rng);
    }
    return l;
  }
};

/// Unit loop whose angle is a random trigonometric polynomial plus d t.
inline std::function<nfield::Vec2(double)> random_unit_loop(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int d = std::uniform_int_distribution<int>(-3, 3)(rng);
  const double a1 = 2.0 * u(rng), b1 = 2.0 * u(rng), a2 = u(rng), b2 = u(rng), c = u(rng);
  return [=](double t) {
    const double th = d * t + c + a1 * std::cos(t) + b1 * std::sin(t) + a2 * std::cos(2 * t) +
                      b2 * std::sin(2 * t);
    return nfield::Vec2{std::cos(th), std::sin(th)};
  };
}

}  // namespace oracle
