#include "dhlab/fields.hpp"

#include <algorithm>
#include <cmath>

#include "dhlab/errors.hpp"

namespace dhlab {

ConstraintDrift constraint_drift(const SphereMap& phi, const VectorSpinor& psi) {
  ConstraintDrift d;
  const std::size_t npts = phi.grid.size();
  for (std::size_t k = 0; k < npts; ++k) {
    double norm2 = 0.0;
    Spinor dot;
    for (int i = 0; i < phi.components(); ++i) {
      norm2 += phi.comp[i][k] * phi.comp[i][k];
      if (i < psi.components()) dot += phi.comp[i][k] * psi.comp[i][k];
    }
    d.norm_gap = std::max(d.norm_gap, std::abs(1.0 - norm2));
    d.tangency_gap = std::max({d.tangency_gap, std::abs(dot.c1), std::abs(dot.c2)});
  }
  return d;
}

void check_constraints(const SphereMap& phi, const VectorSpinor& psi, double tol) {
  if (phi.components() < 2) throw ConstraintViolation("map needs at least two components");
  if (psi.components() != phi.components())
    throw ConstraintViolation("map and vector spinor have different component counts");
  if (!phi.grid.same_lattice(psi.grid)) throw ConstraintViolation("map and spinor grids differ");
  const auto d = constraint_drift(phi, psi);
  if (!(d.norm_gap <= tol))
    throw ConstraintViolation("|phi| = 1 violated by " + std::to_string(d.norm_gap));
  if (!(d.tangency_gap <= tol))
    throw ConstraintViolation("psi not tangent to phi, gap " + std::to_string(d.tangency_gap));
}

void normalize(SphereMap& phi) {
  for (std::size_t k = 0; k < phi.grid.size(); ++k) {
    double norm2 = 0.0;
    for (const auto& c : phi.comp) norm2 += c[k] * c[k];
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : phi.comp) c[k] *= inv;
  }
}

VectorSpinor tangent_project(const SphereMap& phi, const VectorSpinor& raw) {
  VectorSpinor out = raw;
  for (std::size_t k = 0; k < phi.grid.size(); ++k) {
    Spinor dot;
    for (int i = 0; i < phi.components(); ++i) dot += phi.comp[i][k] * raw.comp[i][k];
    for (int i = 0; i < phi.components(); ++i) out.comp[i][k] -= phi.comp[i][k] * dot;
  }
  return out;
}

SphereMap with_scheme(const SphereMap& phi, Scheme s) {
  SphereMap out = phi;
  out.grid.scheme = s;
  for (auto& c : out.comp) c.grid.scheme = s;
  return out;
}

VectorSpinor with_scheme(const VectorSpinor& psi, Scheme s) {
  VectorSpinor out = psi;
  out.grid.scheme = s;
  for (auto& c : out.comp) c.grid.scheme = s;
  return out;
}

PointJets AnalyticPair::jets(double x, double y) const {
  const int m = static_cast<int>(map_raw.size());
  PointJets pj;
  pj.phi.resize(m);
  RJet norm2;
  for (int i = 0; i < m; ++i) {
    pj.phi[i] = real_part(map_raw[i].jet(x, y));
    norm2 += pj.phi[i] * pj.phi[i];
  }
  const RJet inv = jet_inv(jet_sqrt(norm2));
  for (auto& p : pj.phi) p = p * inv;

  std::vector<SpinorJet> chi(m);
  CJet dot1, dot2;
  for (int i = 0; i < m; ++i) {
    chi[i] = {spinor_raw[i][0].jet(x, y), spinor_raw[i][1].jet(x, y)};
    dot1 += to_complex(pj.phi[i]) * chi[i].c1;
    dot2 += to_complex(pj.phi[i]) * chi[i].c2;
  }
  pj.psi.resize(m);
  for (int i = 0; i < m; ++i) {
    const CJet p = to_complex(pj.phi[i]);
    pj.psi[i] = {chi[i].c1 - p * dot1, chi[i].c2 - p * dot2};
  }
  return pj;
}

void AnalyticPair::sample(SphereMap& phi, VectorSpinor& psi) const {
  const int m = static_cast<int>(map_raw.size());
  phi = SphereMap(grid, m);
  psi = VectorSpinor(grid, m);
  for (int iy = 0; iy < grid.n; ++iy) {
    for (int ix = 0; ix < grid.n; ++ix) {
      const auto pj = jets(grid.coord(ix), grid.coord(iy));
      for (int i = 0; i < m; ++i) {
        phi.comp[i](ix, iy) = pj.phi[i].v;
        psi.comp[i](ix, iy) = pj.psi[i].value();
      }
    }
  }
}

AnalyticPair random_analytic_pair(const GridSpec& g, int sphere_dim, std::uint64_t seed, int band,
                                  double spinor_scale) {
  AnalyticPair a{g, {}, {}};
  const int m = sphere_dim + 1;
  // Per-mode amplitudes shrink with the band so the field size stays O(1).
  const double map_amp = 0.5 / (2 * band + 1);
  const double spinor_amp = 0.6 / (2 * band + 1) * spinor_scale;
  for (int i = 0; i < m; ++i) {
    auto v = random_bandlimited(g, seed * 1000 + i, band, map_amp, true);
    // Offset keeps |v| >= ~1 so the normalised map stays smooth.
    if (i == m - 1) v.modes.push_back({0, 0, cplx(2.0)});
    a.map_raw.push_back(std::move(v));
  }
  for (int i = 0; i < m; ++i) {
    a.spinor_raw.push_back({random_bandlimited(g, seed * 1000 + 100 + 2 * i, band, spinor_amp, false),
                            random_bandlimited(g, seed * 1000 + 101 + 2 * i, band, spinor_amp, false)});
  }
  return a;
}

}  // namespace dhlab
