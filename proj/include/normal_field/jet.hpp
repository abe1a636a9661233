#pragma once

#include <cmath>

namespace nfield {

/// Second-order forward-mode jet in two variables (u, v): value, gradient,
/// and the three distinct Hessian entries.
struct Jet2 {
  double v = 0.0;
  double du = 0.0;
  double dv = 0.0;
  double duu = 0.0;
  double duv = 0.0;
  double dvv = 0.0;

  Jet2() = default;
  Jet2(double value) : v(value) {}  // NOLINT: constants promote implicitly
  Jet2(double value, double gu, double gv, double huu, double huv, double hvv)
      : v(value), du(gu), dv(gv), duu(huu), duv(huv), dvv(hvv) {}

  static Jet2 u_variable(double x) { return {x, 1.0, 0.0, 0.0, 0.0, 0.0}; }
  static Jet2 v_variable(double x) { return {x, 0.0, 1.0, 0.0, 0.0, 0.0}; }

  Jet2& operator+=(const Jet2& o) {
    v += o.v; du += o.du; dv += o.dv; duu += o.duu; duv += o.duv; dvv += o.dvv;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v; du -= o.du; dv -= o.dv; duu -= o.duu; duv -= o.duv; dvv -= o.dvv;
    return *this;
  }
};

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv}; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v,
          a.du * b.v + a.v * b.du,
          a.dv * b.v + a.v * b.dv,
          a.duu * b.v + 2.0 * a.du * b.du + a.v * b.duu,
          a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv,
          a.dvv * b.v + 2.0 * a.dv * b.dv + a.v * b.dvv};
}
inline Jet2 operator*(double s, const Jet2& a) {
  return {s * a.v, s * a.du, s * a.dv, s * a.duu, s * a.duv, s * a.dvv};
}
inline Jet2 operator*(const Jet2& a, double s) { return s * a; }

/// f(a) given f, f', f'' at a.v.
inline Jet2 chain(const Jet2& a, double f, double f1, double f2) {
  return {f,
          f1 * a.du,
          f1 * a.dv,
          f2 * a.du * a.du + f1 * a.duu,
          f2 * a.du * a.dv + f1 * a.duv,
          f2 * a.dv * a.dv + f1 * a.dvv};
}

inline Jet2 reciprocal(const Jet2& a) {
  const double r = 1.0 / a.v;
  return chain(a, r, -r * r, 2.0 * r * r * r);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
inline Jet2 operator/(const Jet2& a, double s) { return (1.0 / s) * a; }

inline Jet2 sin(const Jet2& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet2 cos(const Jet2& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

}  // namespace nfield
