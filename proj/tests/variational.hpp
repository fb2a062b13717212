#pragma once

// Directional derivatives of the energies against the Euler-Lagrange
// residuals along curves that stay on the constraint set.

#include <cmath>
#include <cstdint>

#include "dhlab/fields.hpp"
#include "dhlab/gross_neveu.hpp"
#include "dhlab/sigma_model.hpp"

namespace dhlab::testing {

struct DirectionalCheck {
  double fd = 0.0;
  double analytic = 0.0;
  double relative() const {
    const double s = std::max(std::abs(fd), std::abs(analytic));
    return s > 0.0 ? std::abs(fd - analytic) / s : 0.0;
  }
};

inline std::pair<SphereMap, VectorSpinor> sigma_curve(const SphereMap& phi, const VectorSpinor& psi,
                                                      const SphereMap& dphi, const VectorSpinor& dpsi,
                                                      double t) {
  SphereMap p = phi;
  VectorSpinor s = psi;
  for (int i = 0; i < phi.components(); ++i)
    for (std::size_t k = 0; k < phi.grid.size(); ++k) {
      p.comp[i][k] += t * dphi.comp[i][k];
      s.comp[i][k] += t * dpsi.comp[i][k];
    }
  normalize(p);
  return {p, tangent_project(p, s)};
}

/// d/dt E along phi_t = normalize(phi + t dphi), psi_t = P_{phi_t}(psi + t dpsi)
/// against 2 h^2 sum (-r_phi . dphi + Re <dpsi, r_psi>) for tangent directions.
inline DirectionalCheck sigma_directional(const SphereMap& phi, const VectorSpinor& psi,
                                          const ModelParams& p, std::uint64_t seed, double t = 1e-5) {
  SphereMap raw;
  VectorSpinor draw;
  random_analytic_pair(phi.grid, p.n, seed, 2).sample(raw, draw);
  SphereMap dphi = raw;
  for (std::size_t k = 0; k < phi.grid.size(); ++k) {
    double dot = 0.0;
    for (int i = 0; i < phi.components(); ++i) dot += phi.comp[i][k] * raw.comp[i][k];
    for (int i = 0; i < phi.components(); ++i) dphi.comp[i][k] = raw.comp[i][k] - dot * phi.comp[i][k];
  }
  const VectorSpinor dpsi = tangent_project(phi, draw);

  const auto [pp, sp] = sigma_curve(phi, psi, dphi, dpsi, t);
  const auto [pm, sm] = sigma_curve(phi, psi, dphi, dpsi, -t);
  DirectionalCheck c;
  c.fd = (energy(pp, sp, p) - energy(pm, sm, p)) / (2.0 * t);

  const auto rphi = el_residual_phi(phi, psi, p);
  const auto rpsi = el_residual_psi(phi, psi, p);
  const double h2 = phi.grid.spacing() * phi.grid.spacing();
  double s = 0.0;
  for (int i = 0; i < phi.components(); ++i)
    for (std::size_t k = 0; k < phi.grid.size(); ++k)
      s += -rphi[i][k] * dphi.comp[i][k] + std::real(pairing(dpsi.comp[i][k], rpsi.comp[i][k]));
  c.analytic = 2.0 * h2 * s;
  return c;
}

/// d/dt E(psi + t dpsi) against 2 h^2 sum Re <dpsi, r>.
inline DirectionalCheck gn_directional(const GNField& psi, const GNParams& p, std::uint64_t seed,
                                       double t = 1e-5) {
  const GridSpec& g = psi.grid;
  GNField d(g, psi.components());
  for (int i = 0; i < psi.components(); ++i) {
    const ComplexField a = random_bandlimited(g, seed + 2 * i, 2, 0.3, false).sample();
    const ComplexField b = random_bandlimited(g, seed + 2 * i + 1, 2, 0.3, false).sample();
    for (std::size_t k = 0; k < g.size(); ++k) d.comp[i][k] = {a[k], b[k]};
  }
  auto shifted = [&](double s) {
    GNField out = psi;
    for (int i = 0; i < psi.components(); ++i)
      for (std::size_t k = 0; k < g.size(); ++k) out.comp[i][k] += s * d.comp[i][k];
    return out;
  };
  DirectionalCheck c;
  c.fd = (gn_energy(shifted(t), p) - gn_energy(shifted(-t), p)) / (2.0 * t);
  const GNField r = gn_residual(psi, p);
  double s = 0.0;
  for (int i = 0; i < psi.components(); ++i)
    for (std::size_t k = 0; k < g.size(); ++k) s += std::real(pairing(d.comp[i][k], r.comp[i][k]));
  c.analytic = 2.0 * g.spacing() * g.spacing() * s;
  return c;
}

/// Random GN field built from band-limited components.
inline GNField random_gn_field(const GridSpec& g, int q, std::uint64_t seed, double amplitude = 0.3) {
  GNField psi(g, q);
  for (int i = 0; i < q; ++i) {
    const ComplexField a = random_bandlimited(g, seed + 2 * i, 2, amplitude, false).sample();
    const ComplexField b = random_bandlimited(g, seed + 2 * i + 1, 2, amplitude, false).sample();
    for (std::size_t k = 0; k < g.size(); ++k) psi.comp[i][k] = {a[k], b[k]};
  }
  return psi;
}

}  // namespace dhlab::testing
