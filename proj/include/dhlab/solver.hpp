#pragma once

// Approximate critical points by least squares on the field equations.
//
// The objective is R = ||r_phi||^2 + ||r_psi||^2 (grid L2 norms, h^2 sum),
// minimised by preconditioned gradient descent with Armijo backtracking.
// After every step phi is renormalised and psi projected back onto the
// tangent space, so the constraints hold to round-off throughout.

#include <cstdint>
#include <functional>
#include <vector>

#include "dhlab/fields.hpp"
#include "dhlab/gross_neveu.hpp"
#include "dhlab/sigma_model.hpp"

namespace dhlab {

struct SolveConfig {
  int max_iters = 10000;
  double step_size = 1.0;  // largest trial step of the line search
  double tol = 1e-6;       // target for sqrt(R)
  std::uint64_t seed = 0;  // initial-data seed for callers that generate it
  Scheme scheme = Scheme::central2;
  double backtrack = 0.5;
  double armijo = 1e-4;
  double min_step = 1e-14;
  bool precondition = true;  // (1 - lap)^-2 on phi, (1 - lap)^-1 on psi
  int log_every = 0;         // 0: no progress output

  void validate() const;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  double final_residual = 0.0;      // sqrt(R) with the inner scheme
  double final_residual_phi = 0.0;  // ||r_phi|| with the spectral scheme
  double final_residual_psi = 0.0;  // ||r_psi|| with the spectral scheme
  std::vector<double> residual_trace;  // sqrt(R) at the start and after each accepted step
  std::vector<double> energy_trace;
  std::vector<double> drift_trace;   // max(norm gap, tangency gap); unused for Gross-Neveu
  std::vector<double> slope_trace;   // directional derivative of R along the step, < 0
};

/// Gradient density of R: dR = h^2 sum (G_phi . dphi + Re <dpsi, G_psi>)
/// for ambient variations, without constraint handling.
struct SigmaGradient {
  std::vector<RealField> phi;
  VectorSpinor psi;
  double objective = 0.0;
};

double sigma_objective(const SphereMap& phi, const VectorSpinor& psi, double kappa);
SigmaGradient sigma_objective_gradient(const SphereMap& phi, const VectorSpinor& psi, double kappa);

struct GNGradient {
  GNField psi;
  double objective = 0.0;
};

double gn_objective(const GNField& psi, const GNParams& p);
GNGradient gn_objective_gradient(const GNField& psi, const GNParams& p);

struct SigmaSolution {
  SphereMap phi;
  VectorSpinor psi;
  SolveReport report;
};

/// Called every cfg.log_every accepted steps with the current iterate.
using SigmaCheckpoint = std::function<void(const SphereMap&, const VectorSpinor&, const SolveReport&)>;
using GNCheckpoint = std::function<void(const GNField&, const SolveReport&)>;

/// Throws ConstraintViolation for inadmissible input, Diverged when the
/// line search step drops below cfg.min_step.
SigmaSolution relax_sigma(const SphereMap& phi0, const VectorSpinor& psi0, const ModelParams& params,
                          const SolveConfig& cfg, const SigmaCheckpoint& checkpoint = {});

struct GNSolution {
  GNField psi;
  SolveReport report;
};

GNSolution relax_gn(const GNField& psi0, const GNParams& params, const SolveConfig& cfg,
                    const GNCheckpoint& checkpoint = {});

}  // namespace dhlab
