#pragma once

// Pointwise spinor algebra for the two-dimensional spin representation.
//
//   e_x . = [[ 0, 1],      e_y . = [[0, i],
//            [-1, 0]]               [i, 0]]
//
//   omega = i e_x e_y = diag(-1, 1),   P_(+/-) = (1 +/- omega) / 2
//
// The hermitian pairing is linear in the first slot:
//   <u, v> = u1 conj(v1) + u2 conj(v2).

#include <array>
#include <complex>

namespace dhlab {

using cplx = std::complex<double>;

enum class Axis { x = 0, y = 1 };
enum class Chirality { plus, minus };

struct Spinor {
  cplx c1{};
  cplx c2{};

  constexpr Spinor() = default;
  constexpr Spinor(cplx a, cplx b) : c1(a), c2(b) {}

  Spinor& operator+=(const Spinor& o) {
    c1 += o.c1;
    c2 += o.c2;
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    c1 -= o.c1;
    c2 -= o.c2;
    return *this;
  }
  Spinor& operator*=(cplx s) {
    c1 *= s;
    c2 *= s;
    return *this;
  }

  double norm2() const { return std::norm(c1) + std::norm(c2); }

  friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
  friend Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
  friend Spinor operator-(const Spinor& a) { return {-a.c1, -a.c2}; }
  friend Spinor operator*(cplx s, Spinor a) { return a *= s; }
  friend Spinor operator*(Spinor a, cplx s) { return a *= s; }
  friend Spinor operator*(double s, Spinor a) { return a *= cplx(s); }
  friend bool operator==(const Spinor&, const Spinor&) = default;
};

using Mat2 = std::array<std::array<cplx, 2>, 2>;

/// The fixed representation as explicit matrices. Used by tests and the
/// python bindings; the hot-path functions below are written out by hand.
struct CliffordRep {
  Mat2 gamma_x;
  Mat2 gamma_y;
  Mat2 omega;
  Mat2 p_plus;
  Mat2 p_minus;
};

CliffordRep clifford_rep();

Mat2 matmul(const Mat2& a, const Mat2& b);
Spinor apply(const Mat2& m, const Spinor& s);

inline Spinor clifford_mul(Axis direction, const Spinor& s) {
  constexpr cplx i{0.0, 1.0};
  if (direction == Axis::x) return {s.c2, -s.c1};
  return {i * s.c2, i * s.c1};
}

/// e_x . e_y . s = diag(i, -i) s
inline Spinor volume_mul(const Spinor& s) {
  constexpr cplx i{0.0, 1.0};
  return {i * s.c1, -i * s.c2};
}

inline cplx pairing(const Spinor& u, const Spinor& v) {
  return u.c1 * std::conj(v.c1) + u.c2 * std::conj(v.c2);
}

/// Real part of <u, e_a . v>.
inline double re_pair_gamma(const Spinor& u, Axis a, const Spinor& v) {
  return std::real(pairing(u, clifford_mul(a, v)));
}

inline Spinor omega_mul(const Spinor& s) { return {-s.c1, s.c2}; }

inline Spinor project_chirality(Chirality sign, const Spinor& s) {
  if (sign == Chirality::plus) return {cplx{}, s.c2};
  return {s.c1, cplx{}};
}

}  // namespace dhlab
