#include "dhlab/noether.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {

constexpr Axis kAxes[2] = {Axis::x, Axis::y};
constexpr double kAdmissibleTol = 1e-10;

std::size_t at(int m, int i, int k) { return static_cast<std::size_t>(i) * m + k; }

void check_point(const PointState& s) {
  const std::size_t m = s.phi.size();
  if (m == 0 || s.dphi_x.size() != m || s.dphi_y.size() != m || s.psi.size() != m)
    throw ConstraintViolation("point data: component counts disagree");
  double n2 = 0.0, px = 0.0, py = 0.0, dscale = 0.0, pscale = 0.0;
  Spinor t;
  for (std::size_t i = 0; i < m; ++i) {
    n2 += s.phi[i] * s.phi[i];
    px += s.phi[i] * s.dphi_x[i];
    py += s.phi[i] * s.dphi_y[i];
    dscale += s.dphi_x[i] * s.dphi_x[i] + s.dphi_y[i] * s.dphi_y[i];
    pscale += s.psi[i].norm2();
    t += s.phi[i] * s.psi[i];
  }
  if (std::abs(n2 - 1.0) > kAdmissibleTol)
    throw ConstraintViolation("point data: |phi| != 1");
  if (std::max(std::abs(px), std::abs(py)) > kAdmissibleTol * (1.0 + std::sqrt(dscale)))
    throw ConstraintViolation("point data: dphi not tangent to the sphere");
  if (std::sqrt(t.norm2()) > kAdmissibleTol * (1.0 + std::sqrt(pscale)))
    throw ConstraintViolation("point data: psi not orthogonal to phi");
}

// s_a(i, k) = Re<psi^i, e_a psi^k>
std::array<Matrix, 2> spinor_bilinear(const std::vector<Spinor>& psi) {
  const int m = static_cast<int>(psi.size());
  std::array<Matrix, 2> s{Matrix(m * m), Matrix(m * m)};
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) s[a][at(m, i, k)] = re_pair_gamma(psi[i], kAxes[a], psi[k]);
  return s;
}

// sum_j x(i,j) y(j,k) - y(i,j) x(j,k)
Matrix commutator(const Matrix& x, const Matrix& y, int m) {
  Matrix c(m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      double v = 0.0;
      for (int j = 0; j < m; ++j) v += x[at(m, i, j)] * y[at(m, j, k)] - y[at(m, i, j)] * x[at(m, j, k)];
      c[at(m, i, k)] = v;
    }
  return c;
}

// Right-hand side of the current algebra given T psi = (e_x d_y - e_y d_x) psi.
Matrix algebra_rhs(const std::vector<double>& phi, const std::vector<double>& dx,
                   const std::vector<double>& dy, const std::vector<Spinor>& psi,
                   const std::vector<Spinor>& tpsi) {
  const int m = static_cast<int>(phi.size());
  const auto s = spinor_bilinear(psi);
  const Matrix ss = commutator(s[0], s[1], m);
  Matrix r(m * m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      double mixed = 0.0;
      for (int j = 0; j < m; ++j) {
        mixed += s[0][at(m, i, j)] * dy[j] * phi[k] - phi[i] * dx[j] * s[1][at(m, j, k)] -
                 s[1][at(m, i, j)] * dx[j] * phi[k] + phi[i] * dy[j] * s[0][at(m, j, k)];
      }
      r[at(m, i, k)] = std::real(pairing(tpsi[i], psi[k])) - std::real(pairing(psi[i], tpsi[k])) -
                       2.0 * (ss[at(m, i, k)] + mixed);
    }
  return r;
}

struct MapGrad {
  std::vector<RealField> x, y;
};

MapGrad map_gradient(const SphereMap& phi) {
  MapGrad d;
  for (const auto& c : phi.comp) {
    d.x.push_back(partial(Axis::x, c));
    d.y.push_back(partial(Axis::y, c));
  }
  return d;
}

PointState state_at(const SphereMap& phi, const MapGrad& d, const VectorSpinor& psi, std::size_t k) {
  const int m = phi.components();
  PointState s;
  s.phi.resize(m);
  s.dphi_x.resize(m);
  s.dphi_y.resize(m);
  s.psi.resize(m);
  for (int i = 0; i < m; ++i) {
    s.phi[i] = phi.comp[i][k];
    s.dphi_x[i] = d.x[i][k];
    s.dphi_y[i] = d.y[i][k];
    s.psi[i] = psi.comp[i][k];
  }
  return s;
}

void check_pair(const SphereMap& phi, const VectorSpinor& psi) { check_constraints(phi, psi); }

// Pi A Pi with Pi = 1 - p p^T.
Matrix projected(const std::vector<double>& p, const Matrix& a) {
  const int m = static_cast<int>(p.size());
  if (a.size() != static_cast<std::size_t>(m) * m)
    throw BadParams("matrix size does not match the number of components");
  Matrix pi(m * m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) pi[at(m, i, k)] = (i == k ? 1.0 : 0.0) - p[i] * p[k];
  Matrix t(m * m, 0.0), out(m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) t[at(m, i, k)] += a[at(m, i, j)] * pi[at(m, j, k)];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) out[at(m, i, k)] += pi[at(m, i, j)] * t[at(m, j, k)];
  return out;
}

template <class T>
Field<T> on_grid(const Field<T>& f, const GridSpec& g) {
  Field<T> out = f;
  out.grid = g;
  return out;
}

template <class T>
T mean(const Field<T>& f) {
  T s{};
  for (const auto& v : f.values) s += v;
  return s / static_cast<double>(f.size());
}

}  // namespace

template <class T>
double PairFields<T>::max_abs() const {
  double r = 0.0;
  for (const auto& x : f) r = std::max(r, dhlab::max_abs(x));
  return r;
}

KillingField::KillingField(int components, Matrix matrix) : m(components), a(std::move(matrix)) {
  if (m < 1 || a.size() != static_cast<std::size_t>(m) * m)
    throw BadParams("killing field: matrix must be m x m");
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      if (a[at(m, i, k)] + a[at(m, k, i)] != 0.0)
        throw BadParams("killing field: matrix is not skew-symmetric");
}

KillingField KillingField::rotation(int components, int i, int k) {
  if (i < 0 || k < 0 || i >= components || k >= components)
    throw BadParams("killing field: index out of range");
  Matrix a(static_cast<std::size_t>(components) * components, 0.0);
  if (i != k) {
    a[at(components, i, k)] = 1.0;
    a[at(components, k, i)] = -1.0;
  }
  return KillingField(components, std::move(a));
}

PointCurrent current_at(const PointState& s) {
  const int m = static_cast<int>(s.phi.size());
  auto b = spinor_bilinear(s.psi);
  PointCurrent j{std::move(b[0]), std::move(b[1])};
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      j.x[at(m, i, k)] += s.dphi_x[i] * s.phi[k] - s.phi[i] * s.dphi_x[k];
      j.y[at(m, i, k)] += s.dphi_y[i] * s.phi[k] - s.phi[i] * s.dphi_y[k];
    }
  return j;
}

CurrentField current_sphere(const SphereMap& phi, const VectorSpinor& psi) {
  check_pair(phi, psi);
  const GridSpec& g = phi.grid;
  const int m = phi.components();
  const MapGrad d = map_gradient(phi);
  CurrentField j{RealPairFields(g, m), RealPairFields(g, m)};
  for (std::size_t p = 0; p < g.size(); ++p) {
    const PointCurrent c = current_at(state_at(phi, d, psi, p));
    for (std::size_t q = 0; q < c.x.size(); ++q) {
      j.x.f[q][p] = c.x[q];
      j.y.f[q][p] = c.y[q];
    }
  }
  return j;
}

template <class T>
PairFields<T> divergence(const CurrentFieldT<T>& j) {
  PairFields<T> out(j.grid(), j.components());
  for (std::size_t q = 0; q < out.f.size(); ++q) {
    auto dx = partial(Axis::x, j.x.f[q]);
    const auto dy = partial(Axis::y, j.y.f[q]);
    for (std::size_t p = 0; p < dx.size(); ++p) dx[p] += dy[p];
    out.f[q] = std::move(dx);
  }
  return out;
}

IdentityGap pointwise_divergence_identity(const PointState& s, double kappa) {
  check_point(s);
  const int m = static_cast<int>(s.phi.size());
  const auto lap = critical_laplacian(s);
  const auto dsl = critical_dirac(s, kappa);
  double d2 = 0.0, p2 = 0.0;
  for (int i = 0; i < m; ++i) {
    d2 += s.dphi_x[i] * s.dphi_x[i] + s.dphi_y[i] * s.dphi_y[i];
    p2 += s.psi[i].norm2();
  }
  IdentityGap r;
  r.scale = d2 + std::sqrt(d2) * p2 + std::abs(kappa) * p2 * p2;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      const double v = -std::real(pairing(dsl[i], s.psi[k])) + std::real(pairing(s.psi[i], dsl[k])) +
                       lap[i] * s.phi[k] - lap[k] * s.phi[i];
      r.gap = std::max(r.gap, std::abs(v));
    }
  return r;
}

Matrix algebra_residual_general_at(const PointJets& pj) {
  const int m = static_cast<int>(pj.phi.size());
  std::vector<double> phi(m), dx(m), dy(m);
  std::vector<Spinor> psi(m), px(m), py(m), tpsi(m);
  for (int i = 0; i < m; ++i) {
    phi[i] = pj.phi[i].v;
    dx[i] = pj.phi[i].x;
    dy[i] = pj.phi[i].y;
    psi[i] = pj.psi[i].value();
    px[i] = pj.psi[i].d(Axis::x);
    py[i] = pj.psi[i].d(Axis::y);
    tpsi[i] = clifford_mul(Axis::x, py[i]) - clifford_mul(Axis::y, px[i]);
  }

  // J and its first derivatives, d_b J_a.
  Matrix jx(m * m), jy(m * m), dxjy(m * m), dyjx(m * m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      const auto& a = pj.phi[i];
      const auto& b = pj.phi[k];
      jx[at(m, i, k)] = re_pair_gamma(psi[i], Axis::x, psi[k]) + a.x * b.v - a.v * b.x;
      jy[at(m, i, k)] = re_pair_gamma(psi[i], Axis::y, psi[k]) + a.y * b.v - a.v * b.y;
      dxjy[at(m, i, k)] = re_pair_gamma(px[i], Axis::y, psi[k]) + re_pair_gamma(psi[i], Axis::y, px[k]) +
                          a.xy * b.v + a.y * b.x - a.x * b.y - a.v * b.xy;
      dyjx[at(m, i, k)] = re_pair_gamma(py[i], Axis::x, psi[k]) + re_pair_gamma(psi[i], Axis::x, py[k]) +
                          a.xy * b.v + a.x * b.y - a.y * b.x - a.v * b.xy;
    }
  const Matrix c = commutator(jx, jy, m);
  const Matrix rhs = algebra_rhs(phi, dx, dy, psi, tpsi);
  Matrix r(m * m);
  for (std::size_t q = 0; q < r.size(); ++q) r[q] = dxjy[q] - dyjx[q] - 2.0 * c[q] - rhs[q];
  return r;
}

RealPairFields algebra_residual_general(const AnalyticPair& pair) {
  const GridSpec& g = pair.grid;
  const int m = static_cast<int>(pair.map_raw.size());
  RealPairFields out(g, m);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const Matrix r = algebra_residual_general_at(pair.jets(g.coord(ix), g.coord(iy)));
      for (std::size_t q = 0; q < r.size(); ++q) out.f[q](ix, iy) = r[q];
    }
  return out;
}

namespace {

// Critical right-hand side of the algebra, sampled on the grid.
RealPairFields critical_rhs(const SphereMap& phi, const MapGrad& d, const VectorSpinor& psi,
                            double kappa) {
  const GridSpec& g = phi.grid;
  const int m = phi.components();
  RealPairFields out(g, m);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const PointState s = state_at(phi, d, psi, p);
    const auto dsl = critical_dirac(s, kappa);
    std::vector<Spinor> tpsi(m);
    for (int i = 0; i < m; ++i) tpsi[i] = -volume_mul(dsl[i]);
    const Matrix r = algebra_rhs(s.phi, s.dphi_x, s.dphi_y, s.psi, tpsi);
    for (std::size_t q = 0; q < r.size(); ++q) out.f[q][p] = r[q];
  }
  return out;
}

}  // namespace

RealPairFields algebra_residual_critical(const SphereMap& phi, const VectorSpinor& psi,
                                         double kappa) {
  const CurrentField j = current_sphere(phi, psi);
  const GridSpec& g = phi.grid;
  const int m = phi.components();
  const MapGrad d = map_gradient(phi);
  RealPairFields out = critical_rhs(phi, d, psi, kappa);
  std::vector<RealField> dxjy, dyjx;
  for (std::size_t q = 0; q < j.x.f.size(); ++q) {
    dxjy.push_back(partial(Axis::x, j.y.f[q]));
    dyjx.push_back(partial(Axis::y, j.x.f[q]));
  }
  Matrix jx(m * m), jy(m * m);
  for (std::size_t p = 0; p < g.size(); ++p) {
    for (std::size_t q = 0; q < jx.size(); ++q) {
      jx[q] = j.x.f[q][p];
      jy[q] = j.y.f[q][p];
    }
    const Matrix c = commutator(jx, jy, m);
    for (std::size_t q = 0; q < jx.size(); ++q)
      out.f[q][p] = dxjy[q][p] - dyjx[q][p] - 2.0 * c[q] - out.f[q][p];
  }
  return out;
}

template <class T>
Field<T> Potential<T>::derivative(Axis a, int i, int k) const {
  Field<T> d = partial(a, periodic(i, k));
  const std::size_t q = at(periodic.m, i, k);
  const T c = a == Axis::x ? drift_x[q] : drift_y[q];
  for (auto& v : d.values) v += c;
  return d;
}

template <class T>
Field<T> Potential<T>::value(int i, int k) const {
  const GridSpec& g = periodic.grid;
  const std::size_t q = at(periodic.m, i, k);
  Field<T> u = periodic(i, k);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) u(ix, iy) += drift_x[q] * g.coord(ix) + drift_y[q] * g.coord(iy);
  return u;
}

template <class T>
Potential<T> integrate_gradient(const PairFields<T>& gx, const PairFields<T>& gy) {
  if (!gx.grid.same_lattice(gy.grid) || gx.m != gy.m)
    throw BadParams("potential: gradient components live on different grids");
  const GridSpec g = gx.grid.with_scheme(Scheme::spectral);
  Potential<T> u;
  u.periodic = PairFields<T>(g, gx.m);
  u.drift_x.resize(gx.f.size());
  u.drift_y.resize(gx.f.size());
  for (std::size_t q = 0; q < gx.f.size(); ++q) {
    const Field<T> tx = on_grid(gx.f[q], g);
    const Field<T> ty = on_grid(gy.f[q], g);
    u.drift_x[q] = mean(tx);
    u.drift_y[q] = mean(ty);
    Field<T> rhs = partial(Axis::x, tx);
    const Field<T> dy = partial(Axis::y, ty);
    for (std::size_t p = 0; p < rhs.size(); ++p) rhs[p] += dy[p];
    u.periodic.f[q] = poisson_solve(rhs);

    const int i = static_cast<int>(q) / gx.m, k = static_cast<int>(q) % gx.m;
    const Field<T> ux = u.derivative(Axis::x, i, k);
    const Field<T> uy = u.derivative(Axis::y, i, k);
    for (std::size_t p = 0; p < rhs.size(); ++p)
      u.roundtrip_gap = std::max({u.roundtrip_gap, std::abs(ux[p] - tx[p]), std::abs(uy[p] - ty[p])});
  }
  return u;
}

namespace {

double require_conserved(const CurrentField& j, double tol) {
  const double d = divergence(j).max_abs();
  if (!(d <= tol))
    throw NotConserved("current divergence " + std::to_string(d) + " exceeds tolerance " +
                       std::to_string(tol));
  return d;
}

}  // namespace

BReport reconstruct_B(const SphereMap& phi, const VectorSpinor& psi, double kappa, double tol) {
  const CurrentField j = current_sphere(phi, psi);
  BReport r;
  r.divergence_max = require_conserved(j, tol);
  const int m = phi.components();
  RealPairFields gx(phi.grid, m), gy(phi.grid, m);
  for (std::size_t q = 0; q < gx.f.size(); ++q) {
    gx.f[q] = j.y.f[q];
    gy.f[q] = j.x.f[q];
    for (auto& v : gy.f[q].values) v = -v;
  }
  r.b = integrate_gradient(gx, gy);

  const MapGrad d = map_gradient(phi);
  r.equation_residual = critical_rhs(phi, d, psi, kappa);
  std::vector<RealField> bx, by, lap;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      bx.push_back(r.b.derivative(Axis::x, i, k));
      by.push_back(r.b.derivative(Axis::y, i, k));
      lap.push_back(laplacian(r.b.periodic(i, k)));
    }
  Matrix mx(m * m), my(m * m);
  for (std::size_t p = 0; p < phi.grid.size(); ++p) {
    for (std::size_t q = 0; q < mx.size(); ++q) {
      mx[q] = bx[q][p];
      my[q] = by[q][p];
    }
    const Matrix c = commutator(mx, my, m);
    for (std::size_t q = 0; q < mx.size(); ++q) {
      auto& e = r.equation_residual.f[q][p];
      e = lap[q][p] - 2.0 * c[q] - e;
    }
  }
  return r;
}

WenteReport wente_decomposition(const SphereMap& phi, const VectorSpinor& psi, double tol) {
  const CurrentField j = current_sphere(phi, psi);
  WenteReport r;
  r.divergence_max = require_conserved(j, tol);
  const int m = phi.components();
  RealPairFields gx(phi.grid, m), gy(phi.grid, m);
  for (std::size_t q = 0; q < gx.f.size(); ++q) {
    gx.f[q] = j.y.f[q];
    for (auto& v : gx.f[q].values) v = -v;
    gy.f[q] = j.x.f[q];
  }
  r.m = integrate_gradient(gx, gy);

  const MapGrad d = map_gradient(phi);
  for (int k = 0; k < m; ++k) {
    const RealField lap = laplacian(phi.comp[k]);
    std::vector<RealField> mx, my;
    for (int i = 0; i < m; ++i) {
      mx.push_back(r.m.derivative(Axis::x, i, k));
      my.push_back(r.m.derivative(Axis::y, i, k));
    }
    for (std::size_t p = 0; p < phi.grid.size(); ++p) {
      double jd = 0.0, wente = 0.0;
      for (int i = 0; i < m; ++i) {
        jd += j.x(i, k)[p] * d.x[i][p] + j.y(i, k)[p] * d.y[i][p];
        wente += d.x[i][p] * my[i][p] - d.y[i][p] * mx[i][p];
      }
      r.laplace_identity_gap = std::max(r.laplace_identity_gap, std::abs(lap[p] + jd));
      r.wente_gap = std::max(r.wente_gap, std::abs(-lap[p] - wente));
    }
  }
  return r;
}

NormReport norm_identity_check(const SphereMap& phi, const VectorSpinor& psi) {
  check_pair(phi, psi);
  const int m = phi.components();
  const MapGrad d = map_gradient(phi);
  std::vector<double> xs, ys;
  NormReport r;
  for (std::size_t p = 0; p < phi.grid.size(); ++p) {
    const PointState s = state_at(phi, d, psi, p);
    const PointCurrent j = current_at(s);
    const auto b = spinor_bilinear(s.psi);
    for (int a = 0; a < 2; ++a) {
      const Matrix& ja = a == 0 ? j.x : j.y;
      const auto& da = a == 0 ? s.dphi_x : s.dphi_y;
      double jj = 0.0, bb = 0.0, mixed = 0.0, dd = 0.0;
      for (std::size_t q = 0; q < ja.size(); ++q) {
        jj += ja[q] * ja[q];
        bb += b[a][q] * b[a][q];
        mixed += b[a][q] * (ja[q] - b[a][q]);
      }
      for (int i = 0; i < m; ++i) dd += da[i] * da[i];
      xs.push_back(dd);
      ys.push_back(jj - bb);
      r.mixed_max = std::max(r.mixed_max, std::abs(mixed));
    }
  }
  double xy = 0.0, xx = 0.0;
  for (std::size_t q = 0; q < xs.size(); ++q) {
    xy += xs[q] * ys[q];
    xx += xs[q] * xs[q];
  }
  r.determined = xx > 1e-300;
  r.coefficient = r.determined ? xy / xx : 0.0;
  for (std::size_t q = 0; q < xs.size(); ++q)
    r.max_gap = std::max(r.max_gap, std::abs(ys[q] - r.coefficient * xs[q]));
  return r;
}

Matrix killing_covariant_derivative(const std::vector<double>& p, const Matrix& a) {
  return projected(p, a);
}

std::array<RealField, 2> killing_current(const SphereMap& phi, const VectorSpinor& psi,
                                         const KillingField& x) {
  check_pair(phi, psi);
  const int m = phi.components();
  if (x.m != m) throw BadParams("killing field dimension does not match the map");
  const MapGrad d = map_gradient(phi);
  std::array<RealField, 2> out{RealField(phi.grid), RealField(phi.grid)};
  for (std::size_t p = 0; p < phi.grid.size(); ++p) {
    const PointState s = state_at(phi, d, psi, p);
    const Matrix nx = projected(s.phi, x.a);
    const auto b = spinor_bilinear(s.psi);
    for (int a = 0; a < 2; ++a) {
      const auto& da = a == 0 ? s.dphi_x : s.dphi_y;
      double v = 0.0;
      for (int i = 0; i < m; ++i) {
        double xi = 0.0;
        for (int k = 0; k < m; ++k) xi += x(i, k) * s.phi[k];
        v += 2.0 * da[i] * xi;
      }
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) v -= b[a][at(m, r, c)] * nx[at(m, c, r)];
      out[a][p] = v;
    }
  }
  return out;
}

ComplexGap killing_divergence_identity(const PointState& s, const Matrix& a) {
  check_point(s);
  const int m = static_cast<int>(s.phi.size());
  const Matrix nx = projected(s.phi, a);
  double n2 = 0.0;
  for (const auto& v : s.psi) n2 += v.norm2();
  cplx total{};
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      cplx g{};
      for (int j = 0; j < m; ++j) g += pairing(s.psi[j], s.psi[i]) * pairing(s.psi[j], s.psi[k]);
      total += nx[at(m, i, k)] * (g - n2 * pairing(s.psi[i], s.psi[k]));
    }
  return {total.real(), total.imag()};
}

template struct PairFields<double>;
template struct PairFields<cplx>;
template struct Potential<double>;
template struct Potential<cplx>;
template RealPairFields divergence(const CurrentFieldT<double>&);
template ComplexPairFields divergence(const CurrentFieldT<cplx>&);
template Potential<double> integrate_gradient(const RealPairFields&, const RealPairFields&);
template Potential<cplx> integrate_gradient(const ComplexPairFields&, const ComplexPairFields&);

}  // namespace dhlab
