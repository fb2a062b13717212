#pragma once

// Field containers shared by the sigma model, the Noether machinery and the
// solver: maps into S^n as (n+1) real components, vector spinors as (n+1)
// spinor fields constrained pointwise orthogonal to the map.

#include <array>
#include <cstdint>
#include <vector>

#include "dhlab/grid.hpp"

namespace dhlab {

struct SphereMap {
  GridSpec grid;
  std::vector<RealField> comp;  // phi^1 .. phi^{n+1}

  SphereMap() = default;
  SphereMap(const GridSpec& g, int components) : grid(g), comp(components, RealField(g)) {}
  int components() const { return static_cast<int>(comp.size()); }
};

struct VectorSpinor {
  GridSpec grid;
  std::vector<SpinorField> comp;  // psi^1 .. psi^{n+1}

  VectorSpinor() = default;
  VectorSpinor(const GridSpec& g, int components) : grid(g), comp(components, SpinorField(g)) {}
  int components() const { return static_cast<int>(comp.size()); }
};

struct ConstraintDrift {
  double norm_gap = 0.0;      // max |1 - |phi|^2|
  double tangency_gap = 0.0;  // max |sum_i phi^i psi^i| (per spinor component)
};

ConstraintDrift constraint_drift(const SphereMap& phi, const VectorSpinor& psi);

/// Throws ConstraintViolation if either drift exceeds `tol`, or if the
/// component counts / grids disagree.
void check_constraints(const SphereMap& phi, const VectorSpinor& psi, double tol = 1e-8);

/// Rescale phi to unit length at every point.
void normalize(SphereMap& phi);

/// raw - phi (sum_i phi^i raw^i): the pointwise orthogonal projection onto
/// the tangent space of the sphere at phi.
VectorSpinor tangent_project(const SphereMap& phi, const VectorSpinor& raw);

/// Copy with every field switched to another derivative scheme.
SphereMap with_scheme(const SphereMap& phi, Scheme s);
VectorSpinor with_scheme(const VectorSpinor& psi, Scheme s);

// -- analytic admissible fields ---------------------------------------------

/// Pointwise jets of an admissible pair: phi = v/|v| and psi = P_phi chi
/// for band-limited v, chi. All first and second derivatives are exact.
struct PointJets {
  std::vector<RJet> phi;
  std::vector<SpinorJet> psi;
};

struct AnalyticPair {
  GridSpec grid;
  std::vector<FourierField> map_raw;                     // v^i (real)
  std::vector<std::array<FourierField, 2>> spinor_raw;  // chi^i, two complex components

  PointJets jets(double x, double y) const;
  /// Samples phi and psi at the grid points.
  void sample(SphereMap& phi, VectorSpinor& psi) const;
};

/// Random admissible pair with S^n target. The raw map gets a constant
/// offset so that |v| stays away from zero and phi is smooth. `spinor_scale`
/// multiplies the spinor amplitudes (0 gives psi = 0).
AnalyticPair random_analytic_pair(const GridSpec& g, int sphere_dim, std::uint64_t seed,
                                  int band = 2, double spinor_scale = 1.0);

}  // namespace dhlab
