#pragma once

// Noether currents of the sigma model with spherical target and the
// identities they satisfy.
//
//   J^{im}_a = Re<psi^i, e_a psi^m> + (phi^i_a phi^m - phi^i phi^m_a)
//
// is antisymmetric in (i, m) and divergence free at critical points. On the
// torus its potentials (B with B_x = J_y, B_y = -J_x, and the stream
// function M = -B) are split into a linear drift plus a periodic part.

#include <array>
#include <vector>

#include "dhlab/fields.hpp"
#include "dhlab/sigma_model.hpp"

namespace dhlab {

/// Square array of fields indexed by an ordered target-index pair (i, m).
template <class T>
struct PairFields {
  GridSpec grid;
  int m = 0;
  std::vector<Field<T>> f;

  PairFields() = default;
  PairFields(const GridSpec& g, int components)
      : grid(g), m(components), f(static_cast<std::size_t>(components) * components, Field<T>(g)) {}

  Field<T>& operator()(int i, int k) { return f[static_cast<std::size_t>(i) * m + k]; }
  const Field<T>& operator()(int i, int k) const { return f[static_cast<std::size_t>(i) * m + k]; }
  double max_abs() const;
};

using RealPairFields = PairFields<double>;
using ComplexPairFields = PairFields<cplx>;

template <class T>
struct CurrentFieldT {
  PairFields<T> x;  // J^{im}_x
  PairFields<T> y;  // J^{im}_y

  const PairFields<T>& operator[](Axis a) const { return a == Axis::x ? x : y; }
  int components() const { return x.m; }
  const GridSpec& grid() const { return x.grid; }
};

using CurrentField = CurrentFieldT<double>;
using ComplexCurrentField = CurrentFieldT<cplx>;

/// Dense m x m real matrix, row-major.
using Matrix = std::vector<double>;

/// Linear Killing field X(p) = A p on S^n, A skew-symmetric.
struct KillingField {
  int m = 0;
  Matrix a;

  /// Validates A + A^T = 0.
  KillingField(int components, Matrix matrix);
  /// Infinitesimal rotation E_{im} - E_{mi}.
  static KillingField rotation(int components, int i, int k);
  double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * m + c]; }
};

CurrentField current_sphere(const SphereMap& phi, const VectorSpinor& psi);

template <class T>
PairFields<T> divergence(const CurrentFieldT<T>& j);

/// Current matrices J_x, J_y (m x m, row-major) at a single point.
struct PointCurrent {
  Matrix x, y;
};
PointCurrent current_at(const PointState& s);

struct IdentityGap {
  double gap = 0.0;    // max over pairs of the absolute residual
  double scale = 0.0;  // largest individual term entering the cancellation
  double relative() const { return scale > 0.0 ? gap / scale : gap; }
};

/// Divergence of J with lap phi and dslash psi replaced by the right-hand
/// sides of the Euler-Lagrange system:
///   -Re<dslash psi^i, psi^m> + Re<psi^i, dslash psi^m> + lap phi^i phi^m - lap phi^m phi^i
/// Pure pointwise algebra; vanishes for any admissible data.
/// Throws ConstraintViolation unless |phi| = 1, phi . dphi_a = 0 and
/// sum phi^i psi^i = 0 (relative tolerance 1e-10).
IdentityGap pointwise_divergence_identity(const PointState& s, double kappa);

/// Residual of
///   d_x J_y - d_y J_x - 2 [J_x, J_y]
///     = Re<T psi^i, psi^m> - Re<psi^i, T psi^m>
///       - 2 (sum_j s^{ij}_x s^{jm}_y - s^{ij}_y s^{jm}_x + mixed terms),
/// T = e_x d_y - e_y d_x, s^{im}_a = Re<psi^i, e_a psi^m>. Holds for every
/// admissible smooth pair, no field equations assumed. Evaluated with exact
/// jet derivatives.
Matrix algebra_residual_general_at(const PointJets& pj);
RealPairFields algebra_residual_general(const AnalyticPair& pair);

/// The same identity with T psi replaced by -e_x e_y dslash psi from the
/// field equation; derivatives of J taken on the grid. Small only near
/// critical points.
RealPairFields algebra_residual_critical(const SphereMap& phi, const VectorSpinor& psi,
                                         double kappa);

/// Potential of a curl-free target gradient (gx, gy) on the torus:
/// u = drift_x x + drift_y y + periodic.
template <class T>
struct Potential {
  PairFields<T> periodic;
  std::vector<T> drift_x, drift_y;  // per pair, index i*m+k
  double roundtrip_gap = 0.0;       // max |grad u - target|

  Field<T> derivative(Axis a, int i, int k) const;
  /// Samples drift + periodic part (not periodic itself when drift != 0).
  Field<T> value(int i, int k) const;
};

/// Integrate per-pair target gradients. Mean parts become drift
/// coefficients; the rest is inverted with poisson_solve on div(target).
template <class T>
Potential<T> integrate_gradient(const PairFields<T>& gx, const PairFields<T>& gy);

struct BReport {
  Potential<double> b;
  double divergence_max = 0.0;
  /// lap B - 2 (B^{ij}_x B^{jm}_y - B^{ij}_y B^{jm}_x) - (critical algebra right-hand side)
  RealPairFields equation_residual;
};

/// B for each pair (i, m) (the potential called B^{mi} in the literature):
/// B_x = J^{im}_y, B_y = -J^{im}_x. Throws NotConserved when max|div J| > tol.
BReport reconstruct_B(const SphereMap& phi, const VectorSpinor& psi, double kappa,
                      double tol = 1e-6);

struct WenteReport {
  Potential<double> m;            // J_x = dM/dy, J_y = -dM/dx
  double divergence_max = 0.0;
  double laplace_identity_gap = 0.0;  // max |lap phi^m + J^{im}_a phi^i_a|
  double wente_gap = 0.0;             // max |-lap phi - (phi_x M_y - phi_y M_x)|
};

WenteReport wente_decomposition(const SphereMap& phi, const VectorSpinor& psi, double tol = 1e-6);

struct NormReport {
  double coefficient = 0.0;  // least-squares c in sum|J|^2 = sum|Re<psi,e psi>|^2 + c |phi_a|^2
  double max_gap = 0.0;      // max residual of the fit
  double mixed_max = 0.0;    // max |sum_{im} s^{im}_a (phi^i_a phi^m - phi^i phi^m_a)|
  bool determined = false;   // false when |dphi| vanishes identically
};

NormReport norm_identity_check(const SphereMap& phi, const VectorSpinor& psi);

/// J_a = 2 <dphi_a, X(phi)> - Re sum <psi^r, e_a psi^c> (nabla X)_{cr}
/// with nabla X = Pi A Pi, Pi = 1 - phi phi^T.
std::array<RealField, 2> killing_current(const SphereMap& phi, const VectorSpinor& psi,
                                         const KillingField& x);

/// Covariant derivative of X(p) = A p on the sphere: Pi A Pi at p, row-major,
/// entry (c, r) = <e_c, nabla_{e_r} X>.
Matrix killing_covariant_derivative(const std::vector<double>& p, const Matrix& a);

struct ComplexGap {
  double real = 0.0;
  double imag = 0.0;
};

/// sum_{i,s} nabla_s X_i (<psi^j,psi^i><psi^j,psi^s> - |psi|^2 <psi^i,psi^s>)
/// with nabla_s X_i = (Pi A Pi)_{is} and unit curvature. The matrix is not
/// required to be skew so non-Killing controls can be evaluated.
/// Throws ConstraintViolation on inadmissible data.
ComplexGap killing_divergence_identity(const PointState& s, const Matrix& a);

}  // namespace dhlab
