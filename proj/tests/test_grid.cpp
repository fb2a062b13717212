#include <doctest.h>

#include "dhlab/errors.hpp"
#include "dhlab/grid.hpp"
#include "helpers.hpp"

using namespace dhlab;
using namespace dhlab::testing;

namespace {

GridSpec grid(int n, Scheme s = Scheme::spectral, double length = 3.0) { return {n, length, s}; }

RealField sine(const GridSpec& g, double scale = 1.0) {
  const double k = 2.0 * kPi / g.length;
  return sample<double>(g, [&](double x, double) { return scale * std::sin(k * x); });
}

double central_error(int n) {
  const GridSpec g = grid(n, Scheme::central2);
  const double k = 2.0 * kPi / g.length;
  const RealField exact = sample<double>(g, [&](double x, double) { return k * std::cos(k * x); });
  return gap(partial(Axis::x, sine(g)), exact);
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("grid validation") {
    CHECK_THROWS_AS(grid(2).validate(), BadParams);
    CHECK_THROWS_AS(grid(7, Scheme::spectral).validate(), BadParams);
    CHECK_NOTHROW(grid(7, Scheme::central2).validate());
    CHECK_THROWS_AS((GridSpec{8, 0.0, Scheme::spectral}.validate()), BadParams);
    CHECK_THROWS_AS((GridSpec{8, -1.0, Scheme::central2}.validate()), BadParams);
    CHECK(scheme_from_string("central2") == Scheme::central2);
    CHECK(scheme_from_string("spectral") == Scheme::spectral);
    CHECK_THROWS_AS(scheme_from_string("upwind"), BadParams);
  }

  TEST_CASE("partial examples") {
    for (Scheme s : {Scheme::spectral, Scheme::central2}) {
      const GridSpec g = grid(16, s);
      CHECK(max_abs(partial(Axis::x, RealField(g, 2.5))) == 0.0);
    }
    const GridSpec g = grid(32);
    const double k = 2.0 * kPi / g.length;
    const RealField exact = sample<double>(g, [&](double x, double) { return k * std::cos(k * x); });
    CHECK(gap(partial(Axis::x, sine(g)), exact) <= 1e-12);
    CHECK(max_abs(partial(Axis::y, sine(g))) <= 1e-12);
  }

  TEST_CASE("central2 is second order") {
    const double ratio = central_error(32) / central_error(64);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
  }

  TEST_CASE("laplacian examples") {
    const GridSpec g = grid(32);
    const double k = 2.0 * kPi / g.length;
    CHECK(max_abs(laplacian(RealField(g, 1.0))) == 0.0);
    CHECK(gap(laplacian(sine(g)), sine(g, -k * k)) <= 1e-11);
    const FourierField f = random_bandlimited(g, 4, 5, 1.0, true);
    const RealField u = f.sample_real();
    const RealField dd = partial(Axis::x, partial(Axis::x, u));
    RealField sum = partial(Axis::y, partial(Axis::y, u));
    for (std::size_t p = 0; p < sum.size(); ++p) sum[p] += dd[p];
    CHECK(gap(laplacian(u), sum) <= 1e-12 * (1.0 + max_abs(sum)));
  }

  TEST_CASE("integrate examples") {
    const GridSpec g = grid(32);
    const double l = g.length;
    CHECK(integrate(RealField(g, 1.0)) == doctest::Approx(l * l).epsilon(1e-15));
    CHECK(std::abs(integrate(sine(g))) <= 1e-13);
    const double k = 2.0 * kPi / l;
    const RealField s2 = sample<double>(g, [&](double x, double) { return std::pow(std::sin(k * x), 2); });
    CHECK(std::abs(integrate(s2) - l * l / 2.0) <= 1e-12);
  }

  TEST_CASE("poisson_solve examples") {
    const GridSpec g = grid(32);
    const double k = 2.0 * kPi / g.length;
    CHECK(max_abs(poisson_solve(RealField(g))) == 0.0);
    CHECK(gap(poisson_solve(sine(g, -k * k)), sine(g)) <= 1e-11);
    RealField shifted = sine(g);
    for (auto& v : shifted.values) v += 0.5;
    CHECK_THROWS_AS(poisson_solve(shifted), NonZeroMean);
    const RealField u = random_bandlimited(g, 9, 4, 1.0, true).sample_real();
    RealField mean_free = u;
    const double mean = integrate(u) / (g.length * g.length);
    for (auto& v : mean_free.values) v -= mean;
    CHECK(gap(poisson_solve(laplacian(u)), mean_free) <= 1e-11);
  }

  TEST_CASE("random band-limited fields") {
    const GridSpec g = grid(16);
    const FourierField a = random_bandlimited(g, 11, 3, 1.0, false);
    const FourierField b = random_bandlimited(g, 11, 3, 1.0, false);
    CHECK(gap(a.sample(), b.sample()) == 0.0);
    CHECK(max_abs(random_bandlimited(g, 11, 3, 0.0, false).sample()) == 0.0);
    for (Axis ax : {Axis::x, Axis::y})
      CHECK(gap(partial(ax, a.sample()), a.derivative(ax).sample()) <= 1e-12);
    const FourierField r = random_bandlimited(g, 12, 3, 1.0, true);
    CHECK(max_abs(imag_part(r.sample())) <= 1e-14);
    const CJet j = a.jet(0.3, 1.1);
    CHECK(std::abs(j.x - a.derivative(Axis::x).value(0.3, 1.1)) <= 1e-12);
    CHECK(std::abs(j.xy - a.derivative(Axis::x).derivative(Axis::y).value(0.3, 1.1)) <= 1e-12);
  }

  TEST_CASE("dirac operator squares to minus the laplacian") {
    const GridSpec g = grid(32);
    const FourierField a = random_bandlimited(g, 21, 3, 1.0, false);
    const FourierField b = random_bandlimited(g, 22, 3, 1.0, false);
    SpinorField s(g);
    const ComplexField sa = a.sample(), sb = b.sample();
    for (std::size_t p = 0; p < s.size(); ++p) s[p] = {sa[p], sb[p]};
    const SpinorField dd = dirac(dirac(s));
    const ComplexField la = laplacian(sa), lb = laplacian(sb);
    SpinorField expect(g);
    for (std::size_t p = 0; p < s.size(); ++p) expect[p] = {-la[p], -lb[p]};
    CHECK(gap(dd, expect) <= 1e-10);
  }
}
