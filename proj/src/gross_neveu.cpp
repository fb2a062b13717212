#include "dhlab/gross_neveu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {

constexpr cplx kI{0.0, 1.0};

double density(const GNField& psi, std::size_t p) {
  double n = 0.0;
  for (const auto& c : psi.comp) n += c[p].norm2();
  return n;
}

// |P_- b|^2 <P_- a, P_- c> - |P_+ b|^2 <P_+ a, P_+ c>
cplx chirality_correction(const Spinor& a, const Spinor& b, const Spinor& c) {
  return std::norm(b.c1) * a.c1 * std::conj(c.c1) - std::norm(b.c2) * a.c2 * std::conj(c.c2);
}

cplx fierz_lhs_minus_main(const Spinor& a, const Spinor& b, const Spinor& c) {
  const cplx lhs = pairing(a, clifford_mul(Axis::x, b)) * pairing(b, clifford_mul(Axis::y, c)) -
                   pairing(a, clifford_mul(Axis::y, b)) * pairing(b, clifford_mul(Axis::x, c));
  return lhs - 2.0 * pairing(a, volume_mul(c)) * b.norm2();
}

std::size_t at(int m, int i, int k) { return static_cast<std::size_t>(i) * m + k; }

// sum_j x(i,j) y(j,k) - y(i,j) x(j,k) for complex pair fields at point p.
std::vector<cplx> commutator_at(const ComplexPairFields& x, const ComplexPairFields& y,
                                std::size_t p) {
  const int m = x.m;
  std::vector<cplx> c(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      cplx v{};
      for (int j = 0; j < m; ++j) v += x(i, j)[p] * y(j, k)[p] - y(i, j)[p] * x(j, k)[p];
      c[at(m, i, k)] = v;
    }
  return c;
}

}  // namespace

void GNParams::validate() const {
  if (!std::isfinite(lambda) || !std::isfinite(kappa))
    throw BadParams("gross-neveu: lambda and kappa must be finite");
}

GNEnergyParts gn_energy_parts(const GNField& psi, const GNParams& p) {
  p.validate();
  const GridSpec& g = psi.grid;
  std::vector<SpinorField> d;
  for (const auto& c : psi.comp) d.push_back(dirac(c));
  ComplexField dd(g);
  RealField n(g), n2(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    cplx s{};
    for (std::size_t i = 0; i < d.size(); ++i) s += pairing(psi.comp[i][k], d[i][k]);
    dd[k] = s;
    n[k] = density(psi, k);
    n2[k] = n[k] * n[k];
  }
  GNEnergyParts e;
  const cplx di = integrate(dd);
  e.dirac = di.real();
  e.dirac_imag = di.imag();
  e.mass = integrate(n);
  e.quartic = integrate(n2);
  e.total = e.dirac - p.lambda * e.mass - 0.5 * p.kappa * e.quartic;
  return e;
}

double gn_energy(const GNField& psi, const GNParams& p) { return gn_energy_parts(psi, p).total; }

GNField gn_residual(const GNField& psi, const GNParams& p) {
  p.validate();
  GNField r(psi.grid, psi.components());
  for (int i = 0; i < psi.components(); ++i) r.comp[i] = dirac(psi.comp[i]);
  for (std::size_t k = 0; k < psi.grid.size(); ++k) {
    const double c = p.lambda + p.kappa * density(psi, k);
    for (int i = 0; i < psi.components(); ++i) r.comp[i][k] -= c * psi.comp[i][k];
  }
  return r;
}

ComplexCurrentField gn_current(const GNField& psi) {
  const int m = psi.components();
  ComplexCurrentField j{ComplexPairFields(psi.grid, m), ComplexPairFields(psi.grid, m)};
  for (std::size_t p = 0; p < psi.grid.size(); ++p)
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) {
        j.x(i, k)[p] = pairing(psi.comp[i][p], clifford_mul(Axis::x, psi.comp[k][p]));
        j.y(i, k)[p] = pairing(psi.comp[i][p], clifford_mul(Axis::y, psi.comp[k][p]));
      }
  return j;
}

cplx fierz_gap(const Spinor& a, const Spinor& b, const Spinor& c) {
  return fierz_lhs_minus_main(a, b, c) - 2.0 * kI * chirality_correction(a, b, c);
}

cplx fierz_gap_printed(const Spinor& a, const Spinor& b, const Spinor& c) {
  return fierz_lhs_minus_main(a, b, c) - chirality_correction(a, b, c);
}

double majorana_check(const Spinor& a, const Spinor& b, const Spinor& c) {
  return std::abs(chirality_correction(a, b, c));
}

MajoranaReport majorana_scan(const GNField& psi) {
  MajoranaReport r;
  const int m = psi.components();
  for (std::size_t p = 0; p < psi.grid.size(); ++p) {
    const double n = density(psi, p);
    const double scale = n > 0.0 ? n * n : 1.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          const double v = majorana_check(psi.comp[i][p], psi.comp[j][p], psi.comp[k][p]) / scale;
          if (v > r.max_gap) r = {v, p, i, j, k};
        }
  }
  return r;
}

ComplexPairFields gn_algebra_residual(const GNField& psi, const GNParams& p, bool enforce_majorana,
                                      double majorana_tol) {
  p.validate();
  if (enforce_majorana) {
    const MajoranaReport mr = majorana_scan(psi);
    if (mr.max_gap > majorana_tol)
      throw MajoranaViolated("majorana condition violated at point " + std::to_string(mr.point) +
                             " for indices (" + std::to_string(mr.i + 1) + "," +
                             std::to_string(mr.j + 1) + "," + std::to_string(mr.m + 1) +
                             "), relative gap " + std::to_string(mr.max_gap));
  }
  const ComplexCurrentField j = gn_current(psi);
  const int m = psi.components();
  ComplexPairFields out(psi.grid, m);
  for (std::size_t q = 0; q < out.f.size(); ++q) {
    out.f[q] = partial(Axis::x, j.y.f[q]);
    const ComplexField d = partial(Axis::y, j.x.f[q]);
    for (std::size_t k = 0; k < d.size(); ++k) out.f[q][k] -= d[k];
  }
  for (std::size_t k = 0; k < psi.grid.size(); ++k) {
    const auto c = commutator_at(j.x, j.y, k);
    for (int i = 0; i < m; ++i)
      for (int n = 0; n < m; ++n)
        out(i, n)[k] -= p.kappa * c[at(m, i, n)] +
                        2.0 * p.lambda * pairing(psi.comp[i][k], volume_mul(psi.comp[n][k]));
  }
  return out;
}

GNBReport gn_reconstruct_B(const GNField& psi, const GNParams& p, double tol) {
  p.validate();
  const ComplexCurrentField j = gn_current(psi);
  GNBReport r;
  r.divergence_max = divergence(j).max_abs();
  if (!(r.divergence_max <= tol))
    throw NotConserved("current divergence " + std::to_string(r.divergence_max) +
                       " exceeds tolerance " + std::to_string(tol));
  const int m = psi.components();
  ComplexPairFields gx(psi.grid, m), gy(psi.grid, m);
  for (std::size_t q = 0; q < gx.f.size(); ++q) {
    gx.f[q] = j.y.f[q];
    gy.f[q] = j.x.f[q];
    for (auto& v : gy.f[q].values) v = -v;
  }
  r.b = integrate_gradient(gx, gy);

  ComplexPairFields bx(r.b.periodic.grid, m), by(r.b.periodic.grid, m);
  r.equation_residual = ComplexPairFields(psi.grid, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      bx(i, k) = r.b.derivative(Axis::x, i, k);
      by(i, k) = r.b.derivative(Axis::y, i, k);
      r.equation_residual(i, k).values = laplacian(r.b.periodic(i, k)).values;
    }
  for (std::size_t k = 0; k < psi.grid.size(); ++k) {
    const auto c = commutator_at(bx, by, k);
    for (int i = 0; i < m; ++i)
      for (int n = 0; n < m; ++n)
        r.equation_residual(i, n)[k] -=
            p.kappa * c[at(m, i, n)] +
            2.0 * p.lambda * pairing(psi.comp[i][k], volume_mul(psi.comp[n][k]));
  }
  return r;
}

GNKind gn_kind_from_string(const std::string& s) {
  if (s == "zero") return GNKind::zero;
  if (s == "constant") return GNKind::constant;
  if (s == "plane_wave" || s == "plane-wave") return GNKind::plane_wave;
  throw BadParams("unknown gross-neveu solution kind '" + s + "'");
}

GNField make_gn_solution(GNKind kind, const GridSpec& g, const GNParams& p,
                         const GNSolutionParams& sp) {
  g.validate();
  p.validate();
  if (sp.q < 1) throw BadParams("gross-neveu: q must be >= 1");
  GNField psi(g, sp.q);
  if (kind == GNKind::zero) return psi;

  if (kind == GNKind::constant) {
    if (p.kappa == 0.0 || !(p.lambda / p.kappa < 0.0))
      throw BadParams("constant solution needs lambda/kappa < 0");
    const double rho = std::sqrt(-p.lambda / p.kappa);
    const Spinor s{cplx(rho / std::numbers::sqrt2), cplx(rho / std::numbers::sqrt2)};
    for (auto& v : psi.comp[0].values) v = s;
    return psi;
  }

  if (sp.branch != 1 && sp.branch != -1) throw BadParams("plane wave branch must be +1 or -1");
  if (sp.kx == 0 && sp.ky == 0) throw BadParams("plane wave needs a nonzero wave vector");
  if (p.kappa == 0.0) throw BadParams("plane wave needs kappa != 0");
  const double kx = g.wavenumber(sp.kx), ky = g.wavenumber(sp.ky);
  const double kn = std::hypot(kx, ky);
  const double mu = sp.branch * kn;
  const double rho2 = (mu - p.lambda) / p.kappa;
  if (!(rho2 > 0.0)) throw BadParams("plane wave needs (branch*|k| - lambda)/kappa > 0");
  const double norm = std::numbers::sqrt2 * kn;
  const Spinor u{cplx(-ky, kx) / norm, cplx(mu) / norm};
  const double rho = std::sqrt(rho2);
  psi.comp[0] = sample<Spinor>(g, [&](double x, double y) {
    return (rho * std::exp(kI * (kx * x + ky * y))) * u;
  });
  return psi;
}

}  // namespace dhlab
