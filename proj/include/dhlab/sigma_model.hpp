#pragma once

// The energy E_kappa for maps into the unit sphere S^n coupled to vector
// spinors, its Euler-Lagrange residuals, spinorial symmetry checks and
// manufactured exact solutions.
//
// With R_ijkl = d_ik d_jl - d_il d_jk (unit round sphere):
//
//   E = int |dphi|^2 + Re sum_i <psi^i, dslash psi^i>
//         + kappa (|psi|^4 - sum_ij |<psi^i, psi^j>|^2)
//
// The twisted Dirac term reduces to the flat one because psi is tangent.
// Its variation gives the residuals
//
//   r_phi^i = lap phi^i + |dphi|^2 phi^i - Re<psi^i, e_a psi^j> phi^j_a
//   r_psi^i = dslash psi^i + phi^i phi^j_a e_a psi^j
//             + 2 kappa (|psi|^2 psi^i - <psi^i, psi^j> psi^j)

#include <string>
#include <utility>
#include <vector>

#include "dhlab/fields.hpp"

namespace dhlab {

struct ModelParams {
  double kappa = 0.0;
  int n = 2;  // sphere dimension; fields carry n+1 components

  void validate() const;
};

struct EnergyParts {
  double dirichlet = 0.0;   // int |dphi|^2
  double dirac = 0.0;       // Re int <psi, dslash psi>
  double dirac_imag = 0.0;  // Im of the same integral; a pure divergence
  double quartic = 0.0;     // int (|psi|^4 - sum |<psi^i,psi^j>|^2), without kappa
  double total = 0.0;
};

EnergyParts energy_parts(const SphereMap& phi, const VectorSpinor& psi, const ModelParams& p);
double energy(const SphereMap& phi, const VectorSpinor& psi, const ModelParams& p);

std::vector<RealField> el_residual_phi(const SphereMap& phi, const VectorSpinor& psi,
                                       const ModelParams& p);
VectorSpinor el_residual_psi(const SphereMap& phi, const VectorSpinor& psi, const ModelParams& p);

struct ELResiduals {
  std::vector<RealField> phi;
  VectorSpinor psi;
};

/// Both residuals in one pass, without constraint checks. The formulas are
/// evaluated for arbitrary ambient fields, which the solver's gradient
/// checks rely on.
ELResiduals el_residuals_unchecked(const SphereMap& phi, const VectorSpinor& psi, double kappa);

/// Pointwise right-hand sides of the EL system: the Laplacian and the
/// Dirac operator a solution must have. Exposed for the pointwise identity
/// checks in noether.
struct PointState {
  std::vector<double> phi;
  std::vector<double> dphi_x, dphi_y;
  std::vector<Spinor> psi;
};

/// lap phi^i at a critical point: -|dphi|^2 phi^i + Re<psi^i, e_a psi^j> phi^j_a
std::vector<double> critical_laplacian(const PointState& s);
/// dslash psi^i at a critical point:
/// -phi^i phi^j_a e_a psi^j - 2 kappa (|psi|^2 psi^i - <psi^i, psi^j> psi^j)
std::vector<Spinor> critical_dirac(const PointState& s, double kappa);

struct SymmetryReport {
  double energy = 0.0;
  double phase_gap = 0.0;   // max over 8 phases of |E(e^{ia} psi) - E(psi)|
  double volume_gap = 0.0;  // |E(omega psi) - E(psi)|
  /// |E(omega psi) - (E(psi) - 2 E_dirac(psi))|: omega anticommutes with
  /// dslash and is self-adjoint, so it flips the sign of the Dirac term and
  /// leaves the other two terms unchanged.
  double volume_law_gap = 0.0;
  double residual_equivariance_gap = 0.0;
};

SymmetryReport symmetry_check(const SphereMap& phi, const VectorSpinor& psi, const ModelParams& p);

enum class ExactKind { constant, rank1_spinor, geodesic_wrap };

ExactKind exact_kind_from_string(const std::string& s);

struct ExactParams {
  int n = 2;                           // sphere dimension
  Spinor spinor{cplx(1.0), cplx(0.0)}; // rank1_spinor: value of psi^1 (normalised)
  int winding = 1;                     // geodesic_wrap: phi = (cos, sin, 0...) (2 pi w x / L)
};

/// Manufactured solutions valid for every kappa:
///  constant       phi = e_{n+1}, psi = 0
///  rank1_spinor   phi = e_{n+1}, psi^1 = spinor/|spinor|, other psi^i = 0
///  geodesic_wrap  phi = (cos kx, sin kx, 0, ...), psi = 0, k = 2 pi w / L
std::pair<SphereMap, VectorSpinor> make_exact_solution(ExactKind kind, const GridSpec& g,
                                                       const ExactParams& params);

}  // namespace dhlab
