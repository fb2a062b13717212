#pragma once

// Gross-Neveu model: the constant-map limit, q spinors without constraint.
//
//   E(psi) = int Re<psi, dslash psi> - lambda |psi|^2 - kappa/2 |psi|^4
//   dslash psi^i = lambda psi^i + kappa |psi|^2 psi^i
//
// Its current J^{im}_a = <psi^i, e_a psi^m> is complex.

#include <string>

#include "dhlab/fields.hpp"
#include "dhlab/noether.hpp"

namespace dhlab {

/// q spinor fields; VectorSpinor without the tangency constraint.
using GNField = VectorSpinor;

struct GNParams {
  double lambda = 0.0;
  double kappa = 1.0;

  void validate() const;
};

struct GNEnergyParts {
  double dirac = 0.0;       // Re int <psi, dslash psi>
  double dirac_imag = 0.0;  // vanishes up to round-off for a self-adjoint dslash
  double mass = 0.0;        // int |psi|^2
  double quartic = 0.0;     // int |psi|^4
  double total = 0.0;
};

GNEnergyParts gn_energy_parts(const GNField& psi, const GNParams& p);
double gn_energy(const GNField& psi, const GNParams& p);

/// dslash psi^i - lambda psi^i - kappa |psi|^2 psi^i
GNField gn_residual(const GNField& psi, const GNParams& p);

ComplexCurrentField gn_current(const GNField& psi);

/// Three-spinor Fierz identity in the form that holds for all inputs:
///   <a,e_x b><b,e_y c> - <a,e_y b><b,e_x c>
///     = 2 <a, e_x e_y c> |b|^2 + 2i (|P_- b|^2 <P_- a,P_- c> - |P_+ b|^2 <P_+ a,P_+ c>)
/// Returns LHS - RHS.
cplx fierz_gap(const Spinor& a, const Spinor& b, const Spinor& c);
/// The same with the chirality correction entering without the factor 2i.
/// Not an identity; kept for comparison.
cplx fierz_gap_printed(const Spinor& a, const Spinor& b, const Spinor& c);

/// | |P_- b|^2 <P_- a,P_- c> - |P_+ b|^2 <P_+ a,P_+ c> |
double majorana_check(const Spinor& a, const Spinor& b, const Spinor& c);

/// Largest majorana_check over all points and index triples, relative to
/// |psi|^4 at the point (absolute where psi vanishes).
struct MajoranaReport {
  double max_gap = 0.0;
  std::size_t point = 0;
  int i = 0, j = 0, m = 0;
};
MajoranaReport majorana_scan(const GNField& psi);

/// d_x J_y - d_y J_x - kappa (J^{ij}_x J^{jm}_y - J^{ij}_y J^{jm}_x)
///   - 2 lambda <psi^i, e_x e_y psi^m>
/// Throws MajoranaViolated when `enforce_majorana` and majorana_scan exceeds
/// `majorana_tol`.
ComplexPairFields gn_algebra_residual(const GNField& psi, const GNParams& p,
                                      bool enforce_majorana = true, double majorana_tol = 1e-10);

struct GNBReport {
  Potential<cplx> b;
  double divergence_max = 0.0;
  /// lap B - kappa (B^{ij}_x B^{jm}_y - B^{ij}_y B^{jm}_x) - 2 lambda <psi^i, e_x e_y psi^m>
  ComplexPairFields equation_residual;
};

/// B_x = J^{im}_y, B_y = -J^{im}_x. Throws NotConserved when max|div J| > tol.
GNBReport gn_reconstruct_B(const GNField& psi, const GNParams& p, double tol = 1e-6);

enum class GNKind { zero, constant, plane_wave };

GNKind gn_kind_from_string(const std::string& s);

struct GNSolutionParams {
  int q = 1;
  int kx = 1, ky = 0;   // plane_wave: integer modes, wave vector 2 pi (kx, ky) / L
  int branch = +1;      // eigenvalue sign of i (k . e) on the spinor
};

/// Manufactured solutions, placed in psi^1 (other components zero):
///  zero        psi = 0
///  constant    psi^1 = rho (1, 1)/sqrt(2), rho^2 = -lambda/kappa
///  plane_wave  psi^1 = rho exp(i k.x) u, i (k . e) u = s |k| u with
///              u = (i k_x - k_y, s |k|) / (sqrt(2) |k|), rho^2 = (s |k| - lambda)/kappa.
///              For k = (k, 0) this gives u = (1, -i)/sqrt(2) on the + branch.
/// Throws BadParams when the amplitude equation has no positive solution.
GNField make_gn_solution(GNKind kind, const GridSpec& g, const GNParams& p,
                         const GNSolutionParams& sp = {});

}  // namespace dhlab
