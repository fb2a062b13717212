#pragma once

// Truncated Taylor jets in two variables. Jet2 carries value, gradient and
// Hessian and propagates them exactly through +, -, *, / and sqrt, so that
// derived fields (normalised maps, projected spinors) keep analytic first
// and second derivatives.

#include <cmath>
#include <complex>

#include "dhlab/clifford.hpp"

namespace dhlab {

template <class T>
struct Jet1 {
  T v{}, x{}, y{};

  T d(Axis a) const { return a == Axis::x ? x : y; }

  Jet1& operator+=(const Jet1& o) {
    v += o.v;
    x += o.x;
    y += o.y;
    return *this;
  }
  Jet1& operator-=(const Jet1& o) {
    v -= o.v;
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
  friend Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
  friend Jet1 operator-(const Jet1& a) { return {-a.v, -a.x, -a.y}; }
  template <class S>
  friend auto operator*(const Jet1& a, const Jet1<S>& b) {
    using R = decltype(a.v * b.v);
    return Jet1<R>{a.v * b.v, a.x * b.v + a.v * b.x, a.y * b.v + a.v * b.y};
  }
  friend Jet1 operator*(double s, const Jet1& a) { return {s * a.v, s * a.x, s * a.y}; }
};

template <class T>
struct Jet2 {
  T v{}, x{}, y{}, xx{}, xy{}, yy{};

  /// First derivative along `a` as a first-order jet.
  Jet1<T> d(Axis a) const {
    if (a == Axis::x) return {x, xx, xy};
    return {y, xy, yy};
  }
  Jet1<T> trunc() const { return {v, x, y}; }
  T laplacian() const { return xx + yy; }

  Jet2& operator+=(const Jet2& o) {
    v += o.v;
    x += o.x;
    y += o.y;
    xx += o.xx;
    xy += o.xy;
    yy += o.yy;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v;
    x -= o.x;
    y -= o.y;
    xx -= o.xx;
    xy -= o.xy;
    yy -= o.yy;
    return *this;
  }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(double s, const Jet2& a) {
    return {s * a.v, s * a.x, s * a.y, s * a.xx, s * a.xy, s * a.yy};
  }
  template <class S>
  friend auto operator*(const Jet2& a, const Jet2<S>& b) {
    using R = decltype(a.v * b.v);
    return Jet2<R>{a.v * b.v,
                   a.x * b.v + a.v * b.x,
                   a.y * b.v + a.v * b.y,
                   a.xx * b.v + 2.0 * a.x * b.x + a.v * b.xx,
                   a.xy * b.v + a.x * b.y + a.y * b.x + a.v * b.xy,
                   a.yy * b.v + 2.0 * a.y * b.y + a.v * b.yy};
  }
};

using RJet = Jet2<double>;
using CJet = Jet2<cplx>;

inline RJet jet_sqrt(const RJet& a) {
  const double s = std::sqrt(a.v);
  const double d1 = 0.5 / s;             // f'
  const double d2 = -0.25 / (s * a.v);   // f''
  return {s,
          d1 * a.x,
          d1 * a.y,
          d1 * a.xx + d2 * a.x * a.x,
          d1 * a.xy + d2 * a.x * a.y,
          d1 * a.yy + d2 * a.y * a.y};
}

inline RJet jet_inv(const RJet& a) {
  const double r = 1.0 / a.v;
  const double d1 = -r * r;
  const double d2 = 2.0 * r * r * r;
  return {r,
          d1 * a.x,
          d1 * a.y,
          d1 * a.xx + d2 * a.x * a.x,
          d1 * a.xy + d2 * a.x * a.y,
          d1 * a.yy + d2 * a.y * a.y};
}

inline CJet to_complex(const RJet& a) {
  return {a.v, a.x, a.y, a.xx, a.xy, a.yy};
}

inline RJet real_part(const CJet& a) {
  return {a.v.real(), a.x.real(), a.y.real(), a.xx.real(), a.xy.real(), a.yy.real()};
}

/// Spinor-valued jet: one complex jet per component.
struct SpinorJet {
  CJet c1, c2;

  Spinor value() const { return {c1.v, c2.v}; }
  Spinor d(Axis a) const {
    return a == Axis::x ? Spinor{c1.x, c2.x} : Spinor{c1.y, c2.y};
  }
};

}  // namespace dhlab
