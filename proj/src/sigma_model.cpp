#include "dhlab/sigma_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {

constexpr Axis kAxes[2] = {Axis::x, Axis::y};

void check_inputs(const SphereMap& phi, const VectorSpinor& psi, const ModelParams& p) {
  p.validate();
  if (phi.components() != p.n + 1)
    throw ConstraintViolation("map has " + std::to_string(phi.components()) +
                              " components, model expects " + std::to_string(p.n + 1));
  check_constraints(phi, psi);
}

// dphi[i][a] = d_a phi^i
std::vector<std::array<RealField, 2>> map_gradient(const SphereMap& phi) {
  std::vector<std::array<RealField, 2>> d(phi.components());
  for (int i = 0; i < phi.components(); ++i)
    for (int a = 0; a < 2; ++a) d[i][a] = partial(kAxes[a], phi.comp[i]);
  return d;
}

// |psi|^2 psi^i - sum_j <psi^i, psi^j> psi^j at one point.
std::vector<Spinor> quartic_force(const std::vector<Spinor>& psi) {
  const std::size_t m = psi.size();
  double n2 = 0.0;
  for (const auto& s : psi) n2 += s.norm2();
  std::vector<Spinor> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    Spinor acc = n2 * psi[i];
    for (std::size_t j = 0; j < m; ++j) acc -= pairing(psi[i], psi[j]) * psi[j];
    out[i] = acc;
  }
  return out;
}

double quartic_density(const std::vector<Spinor>& psi) {
  double n2 = 0.0;
  for (const auto& s : psi) n2 += s.norm2();
  double offdiag = 0.0;
  for (const auto& a : psi)
    for (const auto& b : psi) offdiag += std::norm(pairing(a, b));
  return n2 * n2 - offdiag;
}

std::vector<Spinor> spinors_at(const VectorSpinor& psi, std::size_t k) {
  std::vector<Spinor> s(psi.components());
  for (int i = 0; i < psi.components(); ++i) s[i] = psi.comp[i][k];
  return s;
}

VectorSpinor scaled(const VectorSpinor& psi, cplx a) {
  VectorSpinor out = psi;
  for (auto& c : out.comp)
    for (auto& v : c.values) v *= a;
  return out;
}

}  // namespace

void ModelParams::validate() const {
  if (n < 1) throw BadParams("model: sphere dimension n must be >= 1");
  if (!std::isfinite(kappa)) throw BadParams("model: kappa must be finite");
}

EnergyParts energy_parts(const SphereMap& phi, const VectorSpinor& psi, const ModelParams& p) {
  check_inputs(phi, psi, p);
  const GridSpec& g = phi.grid;
  const auto dphi = map_gradient(phi);
  std::vector<SpinorField> dpsi;
  for (const auto& c : psi.comp) dpsi.push_back(dirac(c));

  RealField dirichlet(g), quartic(g);
  ComplexField dirac_density(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    double q = 0.0;
    for (const auto& d : dphi) q += d[0][k] * d[0][k] + d[1][k] * d[1][k];
    dirichlet[k] = q;
    cplx dd{};
    for (int i = 0; i < psi.components(); ++i) dd += pairing(psi.comp[i][k], dpsi[i][k]);
    dirac_density[k] = dd;
    quartic[k] = quartic_density(spinors_at(psi, k));
  }
  EnergyParts e;
  e.dirichlet = integrate(dirichlet);
  const cplx d = integrate(dirac_density);
  e.dirac = d.real();
  e.dirac_imag = d.imag();
  e.quartic = integrate(quartic);
  e.total = e.dirichlet + e.dirac + p.kappa * e.quartic;
  return e;
}

double energy(const SphereMap& phi, const VectorSpinor& psi, const ModelParams& p) {
  return energy_parts(phi, psi, p).total;
}

ELResiduals el_residuals_unchecked(const SphereMap& phi, const VectorSpinor& psi, double kappa) {
  const GridSpec& g = phi.grid;
  const int m = phi.components();
  const auto dphi = map_gradient(phi);
  ELResiduals r;
  for (const auto& c : phi.comp) r.phi.push_back(laplacian(c));
  r.psi = VectorSpinor(psi.grid, m);
  for (int i = 0; i < m; ++i) r.psi.comp[i] = dirac(psi.comp[i]);

  for (std::size_t k = 0; k < g.size(); ++k) {
    double q = 0.0;
    for (const auto& d : dphi) q += d[0][k] * d[0][k] + d[1][k] * d[1][k];
    Spinor e;
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < 2; ++a) e += dphi[j][a][k] * clifford_mul(kAxes[a], psi.comp[j][k]);
    const auto quartic = quartic_force(spinors_at(psi, k));
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int j = 0; j < m; ++j)
        for (int a = 0; a < 2; ++a)
          s += re_pair_gamma(psi.comp[i][k], kAxes[a], psi.comp[j][k]) * dphi[j][a][k];
      r.phi[i][k] += q * phi.comp[i][k] - s;
      r.psi.comp[i][k] += phi.comp[i][k] * e + (2.0 * kappa) * quartic[i];
    }
  }
  return r;
}

std::vector<RealField> el_residual_phi(const SphereMap& phi, const VectorSpinor& psi,
                                       const ModelParams& p) {
  check_inputs(phi, psi, p);
  return el_residuals_unchecked(phi, psi, p.kappa).phi;
}

VectorSpinor el_residual_psi(const SphereMap& phi, const VectorSpinor& psi, const ModelParams& p) {
  check_inputs(phi, psi, p);
  return el_residuals_unchecked(phi, psi, p.kappa).psi;
}

std::vector<double> critical_laplacian(const PointState& s) {
  const std::size_t m = s.phi.size();
  double q = 0.0;
  for (std::size_t j = 0; j < m; ++j) q += s.dphi_x[j] * s.dphi_x[j] + s.dphi_y[j] * s.dphi_y[j];
  std::vector<double> lap(m);
  for (std::size_t i = 0; i < m; ++i) {
    double v = -q * s.phi[i];
    for (std::size_t j = 0; j < m; ++j)
      v += re_pair_gamma(s.psi[i], Axis::x, s.psi[j]) * s.dphi_x[j] +
           re_pair_gamma(s.psi[i], Axis::y, s.psi[j]) * s.dphi_y[j];
    lap[i] = v;
  }
  return lap;
}

std::vector<Spinor> critical_dirac(const PointState& s, double kappa) {
  const std::size_t m = s.phi.size();
  Spinor e;
  for (std::size_t j = 0; j < m; ++j)
    e += s.dphi_x[j] * clifford_mul(Axis::x, s.psi[j]) + s.dphi_y[j] * clifford_mul(Axis::y, s.psi[j]);
  const auto quartic = quartic_force(s.psi);
  std::vector<Spinor> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = -(s.phi[i] * e) - (2.0 * kappa) * quartic[i];
  return out;
}

SymmetryReport symmetry_check(const SphereMap& phi, const VectorSpinor& psi, const ModelParams& p) {
  SymmetryReport rep;
  const EnergyParts base = energy_parts(phi, psi, p);
  rep.energy = base.total;
  const auto rphi = el_residual_phi(phi, psi, p);
  const auto rpsi = el_residual_psi(phi, psi, p);

  for (int k = 0; k < 8; ++k) {
    const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * (k + 1) / 9.0);
    const VectorSpinor rotated = scaled(psi, phase);
    rep.phase_gap = std::max(rep.phase_gap, std::abs(energy(phi, rotated, p) - base.total));

    const auto rphi2 = el_residual_phi(phi, rotated, p);
    const auto rpsi2 = el_residual_psi(phi, rotated, p);
    for (std::size_t i = 0; i < rphi.size(); ++i) {
      for (std::size_t q = 0; q < phi.grid.size(); ++q) {
        const Spinor d = rpsi2.comp[i][q] - phase * rpsi.comp[i][q];
        rep.residual_equivariance_gap =
            std::max({rep.residual_equivariance_gap, std::abs(rphi2[i][q] - rphi[i][q]),
                      std::abs(d.c1), std::abs(d.c2)});
      }
    }
  }

  VectorSpinor flipped = psi;
  for (auto& c : flipped.comp)
    for (auto& v : c.values) v = omega_mul(v);
  const double e_omega = energy(phi, flipped, p);
  rep.volume_gap = std::abs(e_omega - base.total);
  rep.volume_law_gap = std::abs(e_omega - (base.total - 2.0 * base.dirac));
  return rep;
}

ExactKind exact_kind_from_string(const std::string& s) {
  if (s == "constant") return ExactKind::constant;
  if (s == "rank1_spinor") return ExactKind::rank1_spinor;
  if (s == "geodesic_wrap") return ExactKind::geodesic_wrap;
  throw BadParams("unknown exact solution kind '" + s + "'");
}

std::pair<SphereMap, VectorSpinor> make_exact_solution(ExactKind kind, const GridSpec& g,
                                                       const ExactParams& params) {
  g.validate();
  if (params.n < 1) throw BadParams("exact solution: sphere dimension must be >= 1");
  const int m = params.n + 1;
  SphereMap phi(g, m);
  VectorSpinor psi(g, m);
  switch (kind) {
    case ExactKind::constant:
      phi.comp[m - 1] = RealField(g, 1.0);
      break;
    case ExactKind::rank1_spinor: {
      if (m < 2) throw BadParams("rank1_spinor needs n >= 1");
      const double norm = std::sqrt(params.spinor.norm2());
      if (!(norm > 0.0)) throw BadParams("rank1_spinor: spinor must be nonzero");
      phi.comp[m - 1] = RealField(g, 1.0);
      psi.comp[0] = SpinorField(g, (1.0 / norm) * params.spinor);
      break;
    }
    case ExactKind::geodesic_wrap: {
      if (params.winding == 0) throw BadParams("geodesic_wrap: winding must be nonzero");
      const double k = g.wavenumber(params.winding);
      phi.comp[0] = sample<double>(g, [&](double x, double) { return std::cos(k * x); });
      phi.comp[1] = sample<double>(g, [&](double x, double) { return std::sin(k * x); });
      break;
    }
  }
  return {std::move(phi), std::move(psi)};
}

}  // namespace dhlab
