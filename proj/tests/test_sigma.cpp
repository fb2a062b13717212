#include <doctest.h>

#include "dhlab/errors.hpp"
#include "dhlab/fields.hpp"
#include "dhlab/sigma_model.hpp"
#include "helpers.hpp"
#include "variational.hpp"

using namespace dhlab;
using namespace dhlab::testing;

namespace {

GridSpec grid(int n = 32, double length = 2.0 * kPi) { return {n, length, Scheme::spectral}; }

SphereMap north(const GridSpec& g, int n = 2) {
  SphereMap phi(g, n + 1);
  for (auto& v : phi.comp[n].values) v = 1.0;
  return phi;
}

double max_of(const std::vector<RealField>& f) {
  double m = 0.0;
  for (const auto& c : f) m = std::max(m, max_abs(c));
  return m;
}

double max_of(const VectorSpinor& f) {
  double m = 0.0;
  for (const auto& c : f.comp) m = std::max(m, max_abs(c));
  return m;
}

}  // namespace

TEST_SUITE("sigma_model") {
  TEST_CASE("constraints and projection") {
    const GridSpec g = grid(16);
    SphereMap phi;
    VectorSpinor psi;
    random_analytic_pair(g, 2, 4).sample(phi, psi);
    const ConstraintDrift d = constraint_drift(phi, psi);
    CHECK(d.norm_gap <= 1e-12);
    CHECK(d.tangency_gap <= 1e-12);
    CHECK_NOTHROW(check_constraints(phi, psi));

    CHECK(gap(tangent_project(phi, psi).comp[1], psi.comp[1]) <= 1e-15);

    VectorSpinor normal(g, 3);
    const Spinor chi{cplx(0.4, -1.0), cplx(2.0, 0.1)};
    for (int i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < g.size(); ++k) normal.comp[i][k] = phi.comp[i][k] * chi;
    CHECK(max_of(tangent_project(phi, normal)) <= 1e-15 * max_of(normal));

    SphereMap junk_phi;
    VectorSpinor raw;
    random_analytic_pair(g, 2, 99).sample(junk_phi, raw);
    for (int i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < g.size(); ++k) raw.comp[i][k] += phi.comp[i][k] * chi;
    const VectorSpinor once = tangent_project(phi, raw);
    CHECK(constraint_drift(phi, once).tangency_gap <= 1e-14);
    double idem = 0.0;
    const VectorSpinor twice = tangent_project(phi, once);
    for (int i = 0; i < 3; ++i) idem = std::max(idem, gap(once.comp[i], twice.comp[i]));
    CHECK(idem <= 1e-15 * max_of(once));

    CHECK_THROWS_AS(check_constraints(phi, raw), ConstraintViolation);
    SphereMap scaled = phi;
    for (auto& c : scaled.comp)
      for (auto& v : c.values) v *= 1.1;
    CHECK_THROWS_AS(check_constraints(scaled, psi), ConstraintViolation);
    normalize(scaled);
    CHECK(constraint_drift(scaled, psi).norm_gap <= 1e-12);
  }

  TEST_CASE("energy examples") {
    const GridSpec g = grid(32);
    for (double kappa : {0.0, -1.0 / 6.0, 0.7}) {
      const ModelParams p{kappa, 2};
      CHECK(std::abs(energy(north(g), VectorSpinor(g, 3), p)) <= 1e-14);
      ExactParams ep;
      CHECK(std::abs(energy(make_exact_solution(ExactKind::rank1_spinor, g, ep).first,
                            make_exact_solution(ExactKind::rank1_spinor, g, ep).second, p)) <= 1e-12);
      const auto [phi, psi] = make_exact_solution(ExactKind::geodesic_wrap, g, ep);
      CHECK(energy(phi, psi, p) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));
    }
    const GridSpec g3{32, 3.0, Scheme::spectral};
    const auto [phi, psi] = make_exact_solution(ExactKind::geodesic_wrap, g3, {});
    CHECK(energy(phi, psi, {0.0, 2}) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));
  }

  TEST_CASE("residual examples") {
    const GridSpec g = grid(32);
    for (double kappa : {0.0, -1.0 / 6.0, 1.0}) {
      const ModelParams p{kappa, 2};
      const SphereMap phi = north(g);
      const VectorSpinor zero(g, 3);
      CHECK(max_of(el_residual_phi(phi, zero, p)) == 0.0);
      CHECK(max_of(el_residual_psi(phi, zero, p)) == 0.0);
      ExactParams ep;
      ep.spinor = Spinor{1.0, cplx(0.0, 2.0)};
      const auto [p1, s1] = make_exact_solution(ExactKind::rank1_spinor, g, ep);
      CHECK(std::abs(s1.comp[0][0].c2 - cplx(0.0, 2.0 / std::sqrt(5.0))) <= 1e-15);
      CHECK(max_of(el_residual_phi(p1, s1, p)) <= 1e-12);
      CHECK(max_of(el_residual_psi(p1, s1, p)) <= 1e-12);
      const auto [pw, sw] = make_exact_solution(ExactKind::geodesic_wrap, g, ep);
      CHECK(max_of(el_residual_phi(pw, sw, p)) <= 1e-10);
      CHECK(max_of(el_residual_psi(pw, sw, p)) <= 1e-10);
    }
  }

  TEST_CASE("psi residual with two tangent components") {
    const GridSpec g = grid(8);
    const double kappa = 0.7;
    const SphereMap phi = north(g);
    const Spinor a{cplx(0.3, 0.1), cplx(-0.2, 0.5)}, b{cplx(0.6, -0.4), cplx(0.1, 0.2)};
    VectorSpinor psi(g, 3);
    for (std::size_t k = 0; k < g.size(); ++k) {
      psi.comp[0][k] = a;
      psi.comp[1][k] = b;
    }
    const double n2 = a.norm2() + b.norm2();
    const Spinor ra = 2.0 * kappa * (n2 * a - pairing(a, a) * a - pairing(a, b) * b);
    const Spinor rb = 2.0 * kappa * (n2 * b - pairing(b, a) * a - pairing(b, b) * b);
    const VectorSpinor r = el_residual_psi(phi, psi, {kappa, 2});
    CHECK(gap(r.comp[0][3], ra) <= 1e-15);
    CHECK(gap(r.comp[1][5], rb) <= 1e-15);
    CHECK(max_abs(r.comp[2]) == 0.0);
    CHECK(gap(ra, Spinor{}) > 1e-3);
  }

  TEST_CASE("residuals match energy finite differences") {
    const GridSpec g = grid(32);
    SphereMap phi;
    VectorSpinor psi;
    random_analytic_pair(g, 2, 17).sample(phi, psi);
    for (double kappa : {0.0, -1.0 / 6.0, 0.7})
      for (std::uint64_t s = 0; s < 4; ++s) {
        const DirectionalCheck c = sigma_directional(phi, psi, {kappa, 2}, 1000 + s);
        CHECK(c.relative() <= 1e-5);
      }
  }

  TEST_CASE("symmetry and equivariance") {
    const GridSpec g = grid(32);
    SphereMap phi;
    VectorSpinor psi;
    random_analytic_pair(g, 2, 23).sample(phi, psi);
    const SymmetryReport r = symmetry_check(phi, psi, {-1.0 / 6.0, 2});
    const double scale = 1.0 + std::abs(r.energy);
    CHECK(r.phase_gap <= 1e-10 * scale);
    CHECK(r.volume_law_gap <= 1e-10 * scale);
    CHECK(r.residual_equivariance_gap <= 1e-12 * scale);
    const SymmetryReport z = symmetry_check(phi, VectorSpinor(g, 3), {-1.0 / 6.0, 2});
    CHECK(z.phase_gap == 0.0);
    CHECK(z.volume_gap == 0.0);
  }

  TEST_CASE("exact solution kinds") {
    CHECK(exact_kind_from_string("geodesic_wrap") == ExactKind::geodesic_wrap);
    CHECK_THROWS_AS(exact_kind_from_string("soliton"), BadParams);
    CHECK_THROWS_AS((ModelParams{0.0, 0}.validate()), BadParams);
  }
}
