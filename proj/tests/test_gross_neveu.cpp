#include <doctest.h>

#include "dhlab/errors.hpp"
#include "dhlab/gross_neveu.hpp"
#include "helpers.hpp"
#include "variational.hpp"

using namespace dhlab;
using namespace dhlab::testing;

namespace {

GridSpec grid(int n = 32, double length = 2.0 * kPi) { return {n, length, Scheme::spectral}; }

double max_of(const GNField& f) {
  double m = 0.0;
  for (const auto& c : f.comp) m = std::max(m, max_abs(c));
  return m;
}

}  // namespace

TEST_SUITE("gross_neveu") {
  TEST_CASE("energy examples") {
    const GridSpec g = grid(16, 3.0);
    const GNParams p{-0.4, 0.9};
    CHECK(gn_energy(GNField(g, 2), p) == 0.0);
    const cplx c(0.7, -0.3);
    GNField psi(g, 1);
    for (auto& v : psi.comp[0].values) v = {c, 0.0};
    const double l2 = g.length * g.length, n = std::norm(c);
    CHECK(gn_energy(psi, p) == doctest::Approx(-p.lambda * n * l2 - 0.5 * p.kappa * n * n * l2).epsilon(1e-13));
  }

  TEST_CASE("energy gradient matches finite differences") {
    const GridSpec g = grid(32);
    const GNField psi = random_gn_field(g, 2, 41);
    for (const GNParams p : {GNParams{0.0, 1.0}, GNParams{-1.0, 1.0}, GNParams{0.5, -2.0}})
      for (std::uint64_t s = 0; s < 4; ++s) CHECK(gn_directional(psi, p, 500 + 10 * s).relative() <= 1e-5);
  }

  TEST_CASE("phase invariance and hermitian Dirac term") {
    const GridSpec g = grid(32);
    const GNField psi = random_gn_field(g, 2, 43);
    const GNParams p{-0.3, 1.2};
    const double e = gn_energy(psi, p);
    GNField rotated = psi;
    for (auto& c : rotated.comp)
      for (auto& v : c.values) v *= std::polar(1.0, 0.9);
    CHECK(std::abs(gn_energy(rotated, p) - e) <= 1e-12 * (1.0 + std::abs(e)));
    CHECK(std::abs(gn_energy_parts(psi, p).dirac_imag) <= 1e-12);
  }

  TEST_CASE("residual examples") {
    const GridSpec g = grid();
    const GNParams p{-1.0, 1.0};
    CHECK(max_of(gn_residual(GNField(g, 1), p)) == 0.0);
    GNField c(g, 1);
    for (auto& v : c.comp[0].values) v = {1.0, 0.0};
    CHECK(max_of(gn_residual(c, p)) == 0.0);
    const double k = 2.0 * kPi / g.length;
    const GNParams p0{0.0, 1.0};
    const double rho = std::sqrt(k);
    const cplx i(0.0, 1.0);
    GNField w(g, 1);
    w.comp[0] = sample<Spinor>(g, [&](double x, double) {
      return (rho * std::exp(i * k * x) / std::sqrt(2.0)) * Spinor{1.0, -i};
    });
    CHECK(max_of(gn_residual(w, p0)) <= 1e-11);
  }

  TEST_CASE("manufactured solutions") {
    const GridSpec g = grid();
    const GNParams p{-1.0, 1.0};
    CHECK(max_of(make_gn_solution(GNKind::zero, g, p)) == 0.0);
    const GNField c = make_gn_solution(GNKind::constant, g, p);
    CHECK(c.comp[0][5].norm2() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(max_of(gn_residual(c, p)) <= 1e-14);
    const GNParams p0{0.0, 1.0};
    const GNField w = make_gn_solution(GNKind::plane_wave, g, p0);
    CHECK(w.comp[0][3].norm2() == doctest::Approx(2.0 * kPi / g.length).epsilon(1e-14));
    CHECK(max_of(gn_residual(w, p0)) <= 1e-11);
    for (int branch : {1, -1}) {
      const GNParams pb{branch > 0 ? -1.0 : -3.0, 1.0};
      const GNField d = make_gn_solution(GNKind::plane_wave, g, pb, {2, 1, 2, branch});
      CHECK(max_of(gn_residual(d, pb)) <= 1e-11);
    }
    CHECK_THROWS_AS(make_gn_solution(GNKind::constant, g, {1.0, 1.0}), BadParams);
    CHECK_THROWS_AS(make_gn_solution(GNKind::plane_wave, g, p0, {1, 0, 0, 1}), BadParams);
    CHECK_THROWS_AS(make_gn_solution(GNKind::plane_wave, g, p0, {1, 1, 0, -1}), BadParams);
    CHECK(gn_kind_from_string("plane-wave") == GNKind::plane_wave);
    CHECK_THROWS_AS(gn_kind_from_string("kink"), BadParams);
  }

  TEST_CASE("currents of solutions") {
    const GridSpec g = grid();
    const GNParams p{-1.0, 1.0};
    CHECK(divergence(gn_current(make_gn_solution(GNKind::constant, g, p))).max_abs() == 0.0);
    const GNField w = make_gn_solution(GNKind::plane_wave, g, p);
    const ComplexCurrentField j = gn_current(w);
    CHECK(divergence(j).max_abs() <= 1e-11);
    CHECK(std::abs(j.x(0, 0)[0] - j.x(0, 0)[77]) <= 1e-14);
  }

  TEST_CASE("Fierz identity and Majorana gate") {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 1000; ++k) {
      const Spinor a = random_spinor(rng), b = random_spinor(rng), c = random_spinor(rng);
      const double scale = std::sqrt(a.norm2() * c.norm2()) * b.norm2();
      CHECK(std::abs(fierz_gap(a, b, c)) <= 1e-13 * scale);
    }
    const Spinor a{cplx(0.3, 1.0), cplx(-0.7, 0.2)}, c{cplx(1.1, 0.0), cplx(0.4, -0.9)};
    CHECK(std::abs(fierz_gap(a, Spinor{}, c)) == 0.0);
    const Spinor u{cplx(1.0 / std::sqrt(2.0)), cplx(1.0 / std::sqrt(2.0))};
    CHECK(std::abs(fierz_gap(u, u, u)) <= 1e-16);
    CHECK(majorana_check(u, u, u) <= 1e-16);
    const Spinor bal{std::polar(0.8, 0.3), std::polar(0.8, -1.1)};
    CHECK(majorana_check(bal, bal, bal) <= 1e-14);
    CHECK(majorana_check(a, Spinor{1.0, 0.0}, c) > 1e-3);
    CHECK(majorana_check(a, Spinor{}, c) == 0.0);
    CHECK(std::abs(fierz_gap_printed(a, Spinor{1.0, 0.0}, c)) > 1e-3);
  }

  TEST_CASE("algebra residual") {
    const GridSpec g = grid();
    const GNParams p{-1.0, 1.0};
    const GNField c = make_gn_solution(GNKind::constant, g, p);
    CHECK(gn_algebra_residual(c, p).max_abs() <= 1e-11);
    const GNParams p0{0.0, 1.0};
    const GNField w = make_gn_solution(GNKind::plane_wave, g, p0);
    CHECK(gn_algebra_residual(w, p0).max_abs() <= 1e-10);
    const GNField r = random_gn_field(g, 2, 5);
    CHECK_THROWS_AS(gn_algebra_residual(r, p), MajoranaViolated);
    CHECK(gn_algebra_residual(r, p, false).max_abs() > 0.0);
  }

  TEST_CASE("B potential") {
    const GridSpec g = grid();
    const GNParams p0{0.0, 1.0};
    const GNBReport w = gn_reconstruct_B(make_gn_solution(GNKind::plane_wave, g, p0), p0);
    CHECK(w.b.roundtrip_gap <= 1e-8);
    CHECK(w.equation_residual.max_abs() <= 1e-9);
    const GNBReport z = gn_reconstruct_B(GNField(g, 1), p0);
    CHECK(z.b.periodic.max_abs() == 0.0);
    CHECK(std::abs(z.b.drift_x[0]) == 0.0);
    CHECK(std::abs(z.b.drift_y[0]) == 0.0);
    const GNParams p{-1.0, 1.0};
    const GNBReport c = gn_reconstruct_B(make_gn_solution(GNKind::constant, g, p), p);
    CHECK(c.b.periodic.max_abs() <= 1e-14);
    CHECK(c.equation_residual.max_abs() <= 1e-9);
    CHECK_THROWS_AS(gn_reconstruct_B(random_gn_field(g, 1, 3), p, 1e-8), NotConserved);
  }
}
