#pragma once

// Periodic n x n grid on the flat torus [0, L)^2.
//
// Storage is row-major with x fastest: value(ix, iy) lives at ix + n * iy,
// and grid point (ix, iy) sits at (ix * h, iy * h) with h = L / n.

#include <cstdint>
#include <string>
#include <vector>

#include "dhlab/clifford.hpp"
#include "dhlab/jet.hpp"

namespace dhlab {

enum class Scheme { central2, spectral };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct GridSpec {
  int n = 32;
  double length = 1.0;
  Scheme scheme = Scheme::spectral;

  double spacing() const { return length / n; }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(ix) + static_cast<std::size_t>(n) * iy;
  }
  double coord(int i) const { return i * spacing(); }
  /// Angular wave number 2*pi*m/L of integer mode m.
  double wavenumber(int m) const;

  /// Throws BadParams unless n >= 4, length > 0 and n is even for spectral.
  void validate() const;

  GridSpec with_scheme(Scheme s) const { return {n, length, s}; }
  bool same_lattice(const GridSpec& o) const { return n == o.n && length == o.length; }
};

template <class T>
struct Field {
  GridSpec grid;
  std::vector<T> values;

  Field() = default;
  explicit Field(const GridSpec& g, T fill = T{}) : grid(g), values(g.size(), fill) {}

  T& operator()(int ix, int iy) { return values[grid.index(ix, iy)]; }
  const T& operator()(int ix, int iy) const { return values[grid.index(ix, iy)]; }
  T& operator[](std::size_t k) { return values[k]; }
  const T& operator[](std::size_t k) const { return values[k]; }
  std::size_t size() const { return values.size(); }
};

using RealField = Field<double>;
using ComplexField = Field<cplx>;
using SpinorField = Field<Spinor>;

/// Sample a function f(x, y) at the grid points.
template <class T, class F>
Field<T> sample(const GridSpec& g, F&& f) {
  Field<T> out(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) out(ix, iy) = f(g.coord(ix), g.coord(iy));
  return out;
}

RealField partial(Axis direction, const RealField& f);
ComplexField partial(Axis direction, const ComplexField& f);
SpinorField partial(Axis direction, const SpinorField& f);

RealField laplacian(const RealField& f);
ComplexField laplacian(const ComplexField& f);

/// Flat Dirac operator e_x . d_x + e_y . d_y with the grid's scheme.
SpinorField dirac(const SpinorField& f);

double integrate(const RealField& f);
cplx integrate(const ComplexField& f);

/// Mean-zero u with laplacian(u) = rhs, by inversion of the spectral
/// Laplacian symbol. Throws NonZeroMean when |mean(rhs)| > 1e-10 max|rhs|.
RealField poisson_solve(const RealField& rhs);
ComplexField poisson_solve(const ComplexField& rhs);

/// Apply (1 + s(k))^(-power), where s is the symbol of the negative Laplacian
/// for `scheme` (4 sin^2(kh/2)/h^2 per axis for central2, k^2 with Nyquist
/// zeroed for spectral). This is the solver's Sobolev preconditioner.
ComplexField smooth_inverse(const ComplexField& f, Scheme scheme, int power);

double max_abs(const RealField& f);
double max_abs(const ComplexField& f);
double max_abs(const SpinorField& f);
double l2_norm(const RealField& f);
double l2_norm(const SpinorField& f);

ComplexField to_complex(const RealField& f);
RealField real_part(const ComplexField& f);
RealField imag_part(const ComplexField& f);

// -- analytic band-limited fields -------------------------------------------

struct FourierMode {
  int kx = 0;  // integer mode numbers; wave number is 2*pi*k/L
  int ky = 0;
  cplx amplitude{};
};

/// Finite trigonometric sum sum_k a_k exp(i (kx x + ky y)). Evaluation and
/// differentiation are exact, so derived jets carry machine-precision
/// derivatives.
struct FourierField {
  GridSpec grid;
  std::vector<FourierMode> modes;

  cplx value(double x, double y) const;
  CJet jet(double x, double y) const;
  /// Field with amplitudes scaled by i k_direction.
  FourierField derivative(Axis direction) const;
  ComplexField sample() const;
  RealField sample_real() const;
};

/// Deterministic random trigonometric field with |kx|, |ky| <= band and
/// complex Gaussian amplitudes scaled by `amplitude`. With `real_valued`
/// the modes come in conjugate pairs so the field is real.
FourierField random_bandlimited(const GridSpec& g, std::uint64_t seed, int band,
                                double amplitude, bool real_valued);

}  // namespace dhlab
