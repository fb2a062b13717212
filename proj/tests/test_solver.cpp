#include <doctest.h>

#include "dhlab/errors.hpp"
#include "dhlab/solver.hpp"
#include "helpers.hpp"
#include "variational.hpp"

using namespace dhlab;
using namespace dhlab::testing;

namespace {

GridSpec grid(int n, Scheme s = Scheme::central2) { return {n, 2.0 * kPi, s}; }

void perturb(SphereMap& phi, VectorSpinor& psi, double amp, std::uint64_t seed) {
  SphereMap dp;
  VectorSpinor ds;
  random_analytic_pair(phi.grid, phi.components() - 1, seed).sample(dp, ds);
  for (int i = 0; i < phi.components(); ++i)
    for (std::size_t k = 0; k < phi.grid.size(); ++k) {
      phi.comp[i][k] += amp * dp.comp[i][k];
      psi.comp[i][k] += amp * ds.comp[i][k];
    }
  normalize(phi);
  psi = tangent_project(phi, psi);
}

bool monotone(const std::vector<double>& r) {
  for (std::size_t k = 1; k < r.size(); ++k)
    if (!(r[k] < r[k - 1])) return false;
  return true;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("config validation") {
    SolveConfig c;
    CHECK_NOTHROW(c.validate());
    c.backtrack = 1.5;
    CHECK_THROWS_AS(c.validate(), BadParams);
    c = {};
    c.tol = -1.0;
    CHECK_THROWS_AS(c.validate(), BadParams);
    c = {};
    c.max_iters = -1;
    CHECK_THROWS_AS(c.validate(), BadParams);
  }

  TEST_CASE("sigma objective gradient matches finite differences") {
    for (Scheme s : {Scheme::central2, Scheme::spectral}) {
      const GridSpec g = grid(16, s);
      SphereMap phi, dphi;
      VectorSpinor psi, dpsi;
      random_analytic_pair(g, 2, 3).sample(phi, psi);
      random_analytic_pair(g, 2, 4).sample(dphi, dpsi);
      const double kappa = -1.0 / 6.0;
      const SigmaGradient grad = sigma_objective_gradient(phi, psi, kappa);
      CHECK(grad.objective == doctest::Approx(sigma_objective(phi, psi, kappa)).epsilon(1e-13));
      const double t = 1e-6, h2 = g.spacing() * g.spacing();
      auto at = [&](double a) {
        SphereMap p = phi;
        VectorSpinor q = psi;
        for (int i = 0; i < 3; ++i)
          for (std::size_t k = 0; k < g.size(); ++k) {
            p.comp[i][k] += a * dphi.comp[i][k];
            q.comp[i][k] += a * dpsi.comp[i][k];
          }
        return sigma_objective(p, q, kappa);
      };
      const double fd = (at(t) - at(-t)) / (2.0 * t);
      double an = 0.0;
      for (int i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < g.size(); ++k)
          an += grad.phi[i][k] * dphi.comp[i][k] + std::real(pairing(dpsi.comp[i][k], grad.psi.comp[i][k]));
      an *= h2;
      CHECK(std::abs(fd - an) <= 1e-6 * std::abs(an));
    }
  }

  TEST_CASE("gn objective gradient matches finite differences") {
    for (Scheme s : {Scheme::central2, Scheme::spectral}) {
      const GridSpec g = grid(16, s);
      const GNField psi = random_gn_field(g, 2, 7), d = random_gn_field(g, 2, 8);
      const GNParams p{-1.0, 1.0};
      const GNGradient grad = gn_objective_gradient(psi, p);
      const double t = 1e-6;
      auto at = [&](double a) {
        GNField q = psi;
        for (int i = 0; i < 2; ++i)
          for (std::size_t k = 0; k < g.size(); ++k) q.comp[i][k] += a * d.comp[i][k];
        return gn_objective(q, p);
      };
      const double fd = (at(t) - at(-t)) / (2.0 * t);
      double an = 0.0;
      for (int i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < g.size(); ++k) an += std::real(pairing(d.comp[i][k], grad.psi.comp[i][k]));
      an *= g.spacing() * g.spacing();
      CHECK(std::abs(fd - an) <= 1e-6 * std::abs(an));
    }
  }

  TEST_CASE("exact initial data returns immediately") {
    const GridSpec g = grid(16);
    const auto [phi, psi] = make_exact_solution(ExactKind::constant, g, {});
    const SigmaSolution s = relax_sigma(phi, psi, {0.7, 2}, {});
    CHECK(s.report.iterations == 0);
    CHECK(s.report.converged);
    SolveConfig cfg;
    cfg.scheme = Scheme::spectral;
    cfg.tol = 1e-7;
    const GNParams p{-1.0, 1.0};
    const GNSolution w = relax_gn(make_gn_solution(GNKind::plane_wave, g.with_scheme(Scheme::spectral), p), p, cfg);
    CHECK(w.report.iterations == 0);
    CHECK(w.report.converged);
  }

  TEST_CASE("residual decreases monotonically from random data") {
    const GridSpec g = grid(16);
    SphereMap phi;
    VectorSpinor psi;
    random_analytic_pair(g, 2, 15).sample(phi, psi);
    SolveConfig cfg;
    cfg.max_iters = 40;
    const SigmaSolution s = relax_sigma(phi, psi, {0.0, 2}, cfg);
    CHECK(s.report.residual_trace.size() == static_cast<std::size_t>(s.report.iterations) + 1);
    CHECK(monotone(s.report.residual_trace));
    for (double d : s.report.drift_trace) CHECK(d <= 1e-12);
    for (double sl : s.report.slope_trace) CHECK(sl < 0.0);
  }

  TEST_CASE("perturbed rank1 solution converges and is deterministic") {
    const GridSpec g = grid(16);
    ExactParams ep;
    ep.spinor = Spinor{cplx(0.6, 0.2), cplx(0.3, -0.5)};
    auto [phi, psi] = make_exact_solution(ExactKind::rank1_spinor, g, ep);
    perturb(phi, psi, 1e-2, 9);
    SolveConfig cfg;
    cfg.tol = 1e-6;
    int calls = 0;
    cfg.log_every = 5;
    const auto count = [&](const SphereMap&, const VectorSpinor&, const SolveReport&) { ++calls; };
    const SigmaSolution a = relax_sigma(phi, psi, {-1.0 / 6.0, 2}, cfg, count);
    const SigmaSolution b = relax_sigma(phi, psi, {-1.0 / 6.0, 2}, cfg);
    CHECK(a.report.converged);
    CHECK(a.report.final_residual <= 1e-6);
    CHECK(monotone(a.report.residual_trace));
    CHECK(calls == a.report.iterations / 5);
    CHECK(a.report.iterations == b.report.iterations);
    CHECK(a.report.final_residual == b.report.final_residual);
    CHECK(gap(a.phi.comp[0], b.phi.comp[0]) == 0.0);
    const ConstraintDrift d = constraint_drift(a.phi, a.psi);
    CHECK(d.norm_gap <= 1e-12);
    CHECK(d.tangency_gap <= 1e-12);
  }

  TEST_CASE("iteration cap reports non-convergence") {
    const GridSpec g = grid(16);
    SphereMap phi;
    VectorSpinor psi;
    random_analytic_pair(g, 2, 19).sample(phi, psi);
    SolveConfig cfg;
    cfg.max_iters = 3;
    const SigmaSolution s = relax_sigma(phi, psi, {0.0, 2}, cfg);
    CHECK_FALSE(s.report.converged);
    CHECK(s.report.iterations == 3);
  }

  TEST_CASE("inadmissible input is rejected") {
    const GridSpec g = grid(16);
    SphereMap phi;
    VectorSpinor psi;
    random_analytic_pair(g, 2, 19).sample(phi, psi);
    for (auto& v : phi.comp[0].values) v += 0.5;
    CHECK_THROWS_AS(relax_sigma(phi, psi, {0.0, 2}, {}), ConstraintViolation);
  }

  TEST_CASE("perturbed gross-neveu constant converges") {
    const GridSpec g = grid(16, Scheme::spectral);
    const GNParams p{-1.0, 1.0};
    GNField psi = make_gn_solution(GNKind::constant, g, p);
    const GNField d = random_gn_field(g, 1, 77, 1.0);
    for (std::size_t k = 0; k < g.size(); ++k) psi.comp[0][k] += 1e-2 * d.comp[0][k];
    SolveConfig cfg;
    cfg.scheme = Scheme::spectral;
    cfg.tol = 1e-7;
    const GNSolution s = relax_gn(psi, p, cfg);
    CHECK(s.report.converged);
    CHECK(s.report.final_residual <= 1e-7);
    CHECK(monotone(s.report.residual_trace));
  }
}
