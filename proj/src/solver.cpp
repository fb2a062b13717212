#include "dhlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {

constexpr Axis kAxes[2] = {Axis::x, Axis::y};

double sum_sq(const std::vector<RealField>& f) {
  double s = 0.0;
  for (const auto& c : f)
    for (double v : c.values) s += v * v;
  return s;
}

double sum_sq(const VectorSpinor& f) {
  double s = 0.0;
  for (const auto& c : f.comp)
    for (const auto& v : c.values) s += v.norm2();
  return s;
}

SpinorField precondition(const SpinorField& f, Scheme scheme, int power) {
  ComplexField a(f.grid), b(f.grid);
  for (std::size_t k = 0; k < f.size(); ++k) {
    a[k] = f[k].c1;
    b[k] = f[k].c2;
  }
  a = smooth_inverse(a, scheme, power);
  b = smooth_inverse(b, scheme, power);
  SpinorField out(f.grid);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = {a[k], b[k]};
  return out;
}

RealField precondition(const RealField& f, Scheme scheme, int power) {
  return real_part(smooth_inverse(to_complex(f), scheme, power));
}

// Removes the radial part of a map variation: v - (v . phi) phi.
void project_map_tangent(const SphereMap& phi, std::vector<RealField>& v) {
  const int m = phi.components();
  for (std::size_t k = 0; k < phi.grid.size(); ++k) {
    double d = 0.0;
    for (int i = 0; i < m; ++i) d += v[i][k] * phi.comp[i][k];
    for (int i = 0; i < m; ++i) v[i][k] -= d * phi.comp[i][k];
  }
}

void log_progress(const char* what, int iter, double residual, double step) {
  std::fprintf(stderr, "%s iter %d residual %.6e step %.3e\n", what, iter, residual, step);
}

}  // namespace

void SolveConfig::validate() const {
  if (max_iters < 0) throw BadParams("solver: max_iters must be >= 0");
  if (!(step_size > 0.0)) throw BadParams("solver: step_size must be > 0");
  if (!(tol > 0.0)) throw BadParams("solver: tol must be > 0");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw BadParams("solver: backtrack must lie in (0, 1)");
  if (!(armijo > 0.0 && armijo < 1.0)) throw BadParams("solver: armijo must lie in (0, 1)");
  if (!(min_step > 0.0)) throw BadParams("solver: min_step must be > 0");
  if (log_every < 0) throw BadParams("solver: log_every must be >= 0");
}

double sigma_objective(const SphereMap& phi, const VectorSpinor& psi, double kappa) {
  const ELResiduals r = el_residuals_unchecked(phi, psi, kappa);
  const double h = phi.grid.spacing();
  return h * h * (sum_sq(r.phi) + sum_sq(r.psi));
}

SigmaGradient sigma_objective_gradient(const SphereMap& phi, const VectorSpinor& psi, double kappa) {
  const GridSpec& g = phi.grid;
  const int m = phi.components();
  const double h = g.spacing();
  const ELResiduals r = el_residuals_unchecked(phi, psi, kappa);
  const auto& a = r.phi;
  const auto& b = r.psi;

  std::vector<std::array<RealField, 2>> dphi(m);
  for (int i = 0; i < m; ++i)
    for (int al = 0; al < 2; ++al) dphi[i][al] = partial(kAxes[al], phi.comp[i]);

  SigmaGradient G;
  G.objective = h * h * (sum_sq(a) + sum_sq(b));
  G.psi = VectorSpinor(psi.grid, m);
  std::vector<std::array<RealField, 2>> flux(m, {RealField(g), RealField(g)});
  for (int i = 0; i < m; ++i) {
    RealField l = laplacian(a[i]);
    for (auto& v : l.values) v *= 2.0;
    G.phi.push_back(std::move(l));
    G.psi.comp[i] = dirac(b.comp[i]);
    for (auto& v : G.psi.comp[i].values) v *= cplx(2.0);
  }

  std::vector<Spinor> ps(m), bs(m);
  for (std::size_t k = 0; k < g.size(); ++k) {
    double q = 0.0, c = 0.0, n2 = 0.0;
    Spinor e, beta;
    cplx mu{};
    for (int j = 0; j < m; ++j) {
      ps[j] = psi.comp[j][k];
      bs[j] = b.comp[j][k];
      q += dphi[j][0][k] * dphi[j][0][k] + dphi[j][1][k] * dphi[j][1][k];
      c += a[j][k] * phi.comp[j][k];
      n2 += ps[j].norm2();
      for (int al = 0; al < 2; ++al) e += dphi[j][al][k] * clifford_mul(kAxes[al], ps[j]);
      beta += phi.comp[j][k] * bs[j];
      mu += pairing(ps[j], bs[j]);
    }

    for (int j = 0; j < m; ++j) {
      G.phi[j][k] += 2.0 * q * a[j][k] + 2.0 * std::real(pairing(e, bs[j]));
      for (int al = 0; al < 2; ++al) {
        double as = 0.0;
        for (int i = 0; i < m; ++i) as += a[i][k] * re_pair_gamma(ps[i], kAxes[al], ps[j]);
        flux[j][al][k] = -4.0 * c * dphi[j][al][k] + 2.0 * as -
                         2.0 * std::real(pairing(clifford_mul(kAxes[al], ps[j]), beta));
      }
    }

    for (int k2 = 0; k2 < m; ++k2) {
      Spinor s;
      for (int j = 0; j < m; ++j)
        for (int al = 0; al < 2; ++al) {
          const double w = a[k2][k] * dphi[j][al][k] - a[j][k] * dphi[k2][al][k];
          s -= (2.0 * w) * clifford_mul(kAxes[al], ps[j]);
        }
      for (int al = 0; al < 2; ++al) s -= (2.0 * dphi[k2][al][k]) * clifford_mul(kAxes[al], beta);
      s += (4.0 * kappa * n2) * bs[k2];
      s += (8.0 * kappa * mu.real()) * ps[k2];
      for (int i = 0; i < m; ++i) {
        s -= (4.0 * kappa) * (pairing(ps[k2], ps[i]) * bs[i]);
        s -= (4.0 * kappa) * (std::conj(pairing(ps[i], bs[k2])) * ps[i]);
        s -= (4.0 * kappa) * (pairing(ps[k2], bs[i]) * ps[i]);
      }
      G.psi.comp[k2][k] += s;
    }
  }

  for (int j = 0; j < m; ++j)
    for (int al = 0; al < 2; ++al) {
      const RealField d = partial(kAxes[al], flux[j][al]);
      for (std::size_t k = 0; k < g.size(); ++k) G.phi[j][k] += d[k];
    }
  return G;
}

double gn_objective(const GNField& psi, const GNParams& p) {
  const double h = psi.grid.spacing();
  return h * h * sum_sq(gn_residual(psi, p));
}

GNGradient gn_objective_gradient(const GNField& psi, const GNParams& p) {
  const GridSpec& g = psi.grid;
  const int m = psi.components();
  const double h = g.spacing();
  const GNField r = gn_residual(psi, p);
  GNGradient G;
  G.objective = h * h * sum_sq(r);
  G.psi = GNField(g, m);
  for (int i = 0; i < m; ++i) {
    G.psi.comp[i] = dirac(r.comp[i]);
    for (auto& v : G.psi.comp[i].values) v *= cplx(2.0);
  }
  for (std::size_t k = 0; k < g.size(); ++k) {
    double n2 = 0.0;
    cplx mu{};
    for (int i = 0; i < m; ++i) {
      n2 += psi.comp[i][k].norm2();
      mu += pairing(psi.comp[i][k], r.comp[i][k]);
    }
    for (int i = 0; i < m; ++i)
      G.psi.comp[i][k] -= (2.0 * (p.lambda + p.kappa * n2)) * r.comp[i][k] +
                          (4.0 * p.kappa * mu.real()) * psi.comp[i][k];
  }
  return G;
}

namespace {

void certify(SolveReport& rep, const SphereMap& phi, const VectorSpinor& psi, double kappa) {
  const ELResiduals r = el_residuals_unchecked(with_scheme(phi, Scheme::spectral),
                                               with_scheme(psi, Scheme::spectral), kappa);
  const double h = phi.grid.spacing();
  rep.final_residual_phi = h * std::sqrt(sum_sq(r.phi));
  rep.final_residual_psi = h * std::sqrt(sum_sq(r.psi));
}

double drift(const SphereMap& phi, const VectorSpinor& psi) {
  const ConstraintDrift d = constraint_drift(phi, psi);
  return std::max(d.norm_gap, d.tangency_gap);
}

}  // namespace

SigmaSolution relax_sigma(const SphereMap& phi0, const VectorSpinor& psi0, const ModelParams& params,
                          const SolveConfig& cfg, const SigmaCheckpoint& checkpoint) {
  params.validate();
  cfg.validate();
  if (phi0.components() != params.n + 1)
    throw ConstraintViolation("solver: map has " + std::to_string(phi0.components()) +
                              " components, model expects " + std::to_string(params.n + 1));
  check_constraints(phi0, psi0);

  SigmaSolution sol{with_scheme(phi0, cfg.scheme), with_scheme(psi0, cfg.scheme), {}};
  SphereMap& phi = sol.phi;
  VectorSpinor& psi = sol.psi;
  SolveReport& rep = sol.report;
  const GridSpec& g = phi.grid;
  const int m = phi.components();
  const double h2 = g.spacing() * g.spacing();
  double t_next = cfg.step_size;

  rep.energy_trace.push_back(energy(phi, psi, params));
  rep.drift_trace.push_back(drift(phi, psi));
  for (;;) {
    const SigmaGradient G = sigma_objective_gradient(phi, psi, params.kappa);
    const double R = G.objective;
    if (rep.residual_trace.empty()) rep.residual_trace.push_back(std::sqrt(R));
    rep.final_residual = std::sqrt(R);
    if (std::sqrt(R) <= cfg.tol) {
      rep.converged = true;
      break;
    }
    if (rep.iterations >= cfg.max_iters) break;

    // Gradient on the constraint set: the psi projection moves with phi.
    std::vector<RealField> gphi = G.phi;
    for (std::size_t k = 0; k < g.size(); ++k) {
      Spinor t;
      for (int i = 0; i < m; ++i) t += phi.comp[i][k] * G.psi.comp[i][k];
      for (int i = 0; i < m; ++i) gphi[i][k] -= std::real(pairing(psi.comp[i][k], t));
    }
    project_map_tangent(phi, gphi);
    const VectorSpinor gpsi = tangent_project(phi, G.psi);

    std::vector<RealField> dphi = gphi;
    VectorSpinor dpsi = gpsi;
    if (cfg.precondition) {
      for (int i = 0; i < m; ++i) {
        dphi[i] = precondition(gphi[i], cfg.scheme, 2);
        dpsi.comp[i] = precondition(gpsi.comp[i], cfg.scheme, 1);
      }
      project_map_tangent(phi, dphi);
      dpsi = tangent_project(phi, dpsi);
    }

    double slope = 0.0;
    for (int i = 0; i < m; ++i)
      for (std::size_t k = 0; k < g.size(); ++k)
        slope -= gphi[i][k] * dphi[i][k] + std::real(pairing(dpsi.comp[i][k], gpsi.comp[i][k]));
    slope *= h2;

    double t = t_next;
    for (;;) {
      SphereMap trial_phi = phi;
      for (int i = 0; i < m; ++i)
        for (std::size_t k = 0; k < g.size(); ++k) trial_phi.comp[i][k] -= t * dphi[i][k];
      normalize(trial_phi);
      VectorSpinor raw = psi;
      for (int i = 0; i < m; ++i)
        for (std::size_t k = 0; k < g.size(); ++k) raw.comp[i][k] -= t * dpsi.comp[i][k];
      VectorSpinor trial_psi = tangent_project(trial_phi, raw);
      const double Rt = sigma_objective(trial_phi, trial_psi, params.kappa);
      if (Rt <= R + cfg.armijo * t * slope) {
        phi = std::move(trial_phi);
        psi = std::move(trial_psi);
        rep.residual_trace.push_back(std::sqrt(Rt));
        break;
      }
      t *= cfg.backtrack;
      if (t < cfg.min_step)
        throw Diverged("line search step underflow at iteration " + std::to_string(rep.iterations) +
                       ", residual " + std::to_string(std::sqrt(R)));
    }
    ++rep.iterations;
    rep.slope_trace.push_back(slope);
    rep.energy_trace.push_back(energy(phi, psi, params));
    rep.drift_trace.push_back(drift(phi, psi));
    t_next = std::min(t / cfg.backtrack, cfg.step_size);
    if (cfg.log_every > 0 && rep.iterations % cfg.log_every == 0) {
      log_progress("sigma", rep.iterations, rep.residual_trace.back(), t);
      if (checkpoint) checkpoint(phi, psi, rep);
    }
  }
  certify(rep, phi, psi, params.kappa);
  return sol;
}

GNSolution relax_gn(const GNField& psi0, const GNParams& params, const SolveConfig& cfg,
                    const GNCheckpoint& checkpoint) {
  params.validate();
  cfg.validate();
  GNSolution sol{with_scheme(psi0, cfg.scheme), {}};
  GNField& psi = sol.psi;
  SolveReport& rep = sol.report;
  const GridSpec& g = psi.grid;
  const int m = psi.components();
  const double h2 = g.spacing() * g.spacing();
  double t_next = cfg.step_size;

  rep.energy_trace.push_back(gn_energy(psi, params));
  for (;;) {
    const GNGradient G = gn_objective_gradient(psi, params);
    const double R = G.objective;
    if (rep.residual_trace.empty()) rep.residual_trace.push_back(std::sqrt(R));
    rep.final_residual = std::sqrt(R);
    if (std::sqrt(R) <= cfg.tol) {
      rep.converged = true;
      break;
    }
    if (rep.iterations >= cfg.max_iters) break;

    GNField d = G.psi;
    if (cfg.precondition)
      for (int i = 0; i < m; ++i) d.comp[i] = precondition(G.psi.comp[i], cfg.scheme, 1);
    double slope = 0.0;
    for (int i = 0; i < m; ++i)
      for (std::size_t k = 0; k < g.size(); ++k)
        slope -= std::real(pairing(d.comp[i][k], G.psi.comp[i][k]));
    slope *= h2;

    double t = t_next;
    for (;;) {
      GNField trial = psi;
      for (int i = 0; i < m; ++i)
        for (std::size_t k = 0; k < g.size(); ++k) trial.comp[i][k] -= t * d.comp[i][k];
      const double Rt = gn_objective(trial, params);
      if (Rt <= R + cfg.armijo * t * slope) {
        psi = std::move(trial);
        rep.residual_trace.push_back(std::sqrt(Rt));
        break;
      }
      t *= cfg.backtrack;
      if (t < cfg.min_step)
        throw Diverged("line search step underflow at iteration " + std::to_string(rep.iterations) +
                       ", residual " + std::to_string(std::sqrt(R)));
    }
    ++rep.iterations;
    rep.slope_trace.push_back(slope);
    rep.energy_trace.push_back(gn_energy(psi, params));
    t_next = std::min(t / cfg.backtrack, cfg.step_size);
    if (cfg.log_every > 0 && rep.iterations % cfg.log_every == 0) {
      log_progress("gross-neveu", rep.iterations, rep.residual_trace.back(), t);
      if (checkpoint) checkpoint(psi, rep);
    }
  }
  const GNField r = gn_residual(with_scheme(psi, Scheme::spectral), params);
  rep.final_residual_psi = std::sqrt(h2 * sum_sq(r));
  return sol;
}

}  // namespace dhlab
