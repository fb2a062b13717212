#include "dhlab/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {

// FFTW planning is not thread-safe; plans are created once per grid size
// under a lock and executed with the new-array interface afterwards.
class FftPlans {
 public:
  struct Pair {
    fftw_plan forward;
    fftw_plan backward;
  };

  static const Pair& get(int n) {
    static FftPlans instance;
    std::lock_guard lock(instance.mutex_);
    auto it = instance.plans_.find(n);
    if (it != instance.plans_.end()) return it->second;
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n * n));
    Pair p{fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE),
           fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE)};
    fftw_free(buf);
    return instance.plans_.emplace(n, p).first->second;
  }

 private:
  FftPlans() = default;
  ~FftPlans() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }
  std::mutex mutex_;
  std::map<int, Pair> plans_;
};

struct FftBuffer {
  explicit FftBuffer(std::size_t size)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size))), n(size) {}
  ~FftBuffer() { fftw_free(data); }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  cplx* begin() { return reinterpret_cast<cplx*>(data); }
  cplx& operator[](std::size_t k) { return begin()[k]; }

  fftw_complex* data;
  std::size_t n;
};

// Signed integer mode for FFT index j: 0..n/2-1, then -n/2..-1.
int signed_mode(int j, int n) { return j < n / 2 ? j : j - n; }

// Wave number used by the spectral first derivative; the Nyquist mode has
// no odd real interpolant and is mapped to zero.
double derivative_wavenumber(int j, const GridSpec& g) {
  if (g.n % 2 == 0 && j == g.n / 2) return 0.0;
  return g.wavenumber(signed_mode(j, g.n));
}

// FFTW layout is row-major in (iy, ix) with ix fastest, which matches ours.
template <class Mult>
ComplexField spectral_apply(const ComplexField& f, Mult&& mult) {
  const GridSpec& g = f.grid;
  const int n = g.n;
  FftBuffer buf(g.size());
  std::copy(f.values.begin(), f.values.end(), buf.begin());
  const auto& plans = FftPlans::get(n);
  fftw_execute_dft(plans.forward, buf.data, buf.data);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (int jy = 0; jy < n; ++jy)
    for (int jx = 0; jx < n; ++jx) buf[g.index(jx, jy)] *= mult(jx, jy) * scale;
  fftw_execute_dft(plans.backward, buf.data, buf.data);
  ComplexField out(g);
  std::copy(buf.begin(), buf.begin() + g.size(), out.values.begin());
  return out;
}

template <class T>
Field<T> central_partial(Axis a, const Field<T>& f) {
  const GridSpec& g = f.grid;
  const int n = g.n;
  const double inv2h = 1.0 / (2.0 * g.spacing());
  Field<T> out(g);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      if (a == Axis::x)
        out(ix, iy) = (f((ix + 1) % n, iy) - f((ix + n - 1) % n, iy)) * inv2h;
      else
        out(ix, iy) = (f(ix, (iy + 1) % n) - f(ix, (iy + n - 1) % n)) * inv2h;
    }
  }
  return out;
}

template <class T>
Field<T> central_laplacian(const Field<T>& f) {
  const GridSpec& g = f.grid;
  const int n = g.n;
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  Field<T> out(g);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      out(ix, iy) = (f((ix + 1) % n, iy) + f((ix + n - 1) % n, iy) + f(ix, (iy + 1) % n) +
                     f(ix, (iy + n - 1) % n) - 4.0 * f(ix, iy)) *
                    inv_h2;
  return out;
}

ComplexField spectral_partial(Axis a, const ComplexField& f) {
  const GridSpec& g = f.grid;
  return spectral_apply(f, [&](int jx, int jy) {
    const double k = derivative_wavenumber(a == Axis::x ? jx : jy, g);
    return cplx(0.0, k);
  });
}

double laplacian_symbol(int jx, int jy, const GridSpec& g) {
  const double kx = derivative_wavenumber(jx, g);
  const double ky = derivative_wavenumber(jy, g);
  return -(kx * kx + ky * ky);
}

ComplexField spectral_laplacian(const ComplexField& f) {
  const GridSpec& g = f.grid;
  return spectral_apply(f, [&](int jx, int jy) { return cplx(laplacian_symbol(jx, jy, g)); });
}

template <class T>
void check_mean(const Field<T>& rhs) {
  double mx = 0.0;
  T sum{};
  for (const auto& v : rhs.values) {
    mx = std::max(mx, std::abs(v));
    sum += v;
  }
  const double mean = std::abs(sum) / static_cast<double>(rhs.size());
  if (mean > 1e-10 * mx)
    throw NonZeroMean("poisson_solve: right-hand side has mean " + std::to_string(mean) +
                      " (max |rhs| = " + std::to_string(mx) + ")");
}

}  // namespace

const char* to_string(Scheme s) { return s == Scheme::central2 ? "central2" : "spectral"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "central2") return Scheme::central2;
  if (s == "spectral") return Scheme::spectral;
  throw BadParams("unknown derivative scheme '" + s + "'");
}

double GridSpec::wavenumber(int m) const { return 2.0 * std::numbers::pi * m / length; }

void GridSpec::validate() const {
  if (n < 4) throw BadParams("grid: n must be >= 4");
  if (!(length > 0.0) || !std::isfinite(length)) throw BadParams("grid: length must be positive");
  if (scheme == Scheme::spectral && n % 2 != 0)
    throw BadParams("grid: spectral scheme needs an even n");
}

RealField partial(Axis a, const RealField& f) {
  if (f.grid.scheme == Scheme::central2) return central_partial(a, f);
  return real_part(spectral_partial(a, to_complex(f)));
}

ComplexField partial(Axis a, const ComplexField& f) {
  if (f.grid.scheme == Scheme::central2) return central_partial(a, f);
  return spectral_partial(a, f);
}

SpinorField partial(Axis a, const SpinorField& f) {
  if (f.grid.scheme == Scheme::central2) return central_partial(a, f);
  ComplexField c1(f.grid), c2(f.grid);
  for (std::size_t k = 0; k < f.size(); ++k) {
    c1[k] = f[k].c1;
    c2[k] = f[k].c2;
  }
  c1 = spectral_partial(a, c1);
  c2 = spectral_partial(a, c2);
  SpinorField out(f.grid);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = {c1[k], c2[k]};
  return out;
}

RealField laplacian(const RealField& f) {
  if (f.grid.scheme == Scheme::central2) return central_laplacian(f);
  return real_part(spectral_laplacian(to_complex(f)));
}

ComplexField laplacian(const ComplexField& f) {
  if (f.grid.scheme == Scheme::central2) return central_laplacian(f);
  return spectral_laplacian(f);
}

SpinorField dirac(const SpinorField& f) {
  const SpinorField dx = partial(Axis::x, f);
  const SpinorField dy = partial(Axis::y, f);
  SpinorField out(f.grid);
  for (std::size_t k = 0; k < f.size(); ++k)
    out[k] = clifford_mul(Axis::x, dx[k]) + clifford_mul(Axis::y, dy[k]);
  return out;
}

double integrate(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  const double h = f.grid.spacing();
  return sum * h * h;
}

cplx integrate(const ComplexField& f) {
  cplx sum{};
  for (const cplx& v : f.values) sum += v;
  const double h = f.grid.spacing();
  return sum * (h * h);
}

ComplexField poisson_solve(const ComplexField& rhs) {
  check_mean(rhs);
  const GridSpec& g = rhs.grid;
  return spectral_apply(rhs, [&](int jx, int jy) {
    const double s = laplacian_symbol(jx, jy, g);
    return s == 0.0 ? cplx{} : cplx(1.0 / s);
  });
}

RealField poisson_solve(const RealField& rhs) {
  check_mean(rhs);
  return real_part(poisson_solve(to_complex(rhs)));
}

ComplexField smooth_inverse(const ComplexField& f, Scheme scheme, int power) {
  const GridSpec& g = f.grid;
  const double h = g.spacing();
  return spectral_apply(f, [&](int jx, int jy) {
    double s = 0.0;
    if (scheme == Scheme::spectral) {
      s = -laplacian_symbol(jx, jy, g);
    } else {
      for (int j : {jx, jy}) {
        const double sn = std::sin(0.5 * g.wavenumber(signed_mode(j, g.n)) * h);
        s += 4.0 * sn * sn / (h * h);
      }
    }
    return cplx(std::pow(1.0 + s, -power));
  });
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const cplx& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const SpinorField& f) {
  double m = 0.0;
  for (const Spinor& v : f.values) m = std::max({m, std::abs(v.c1), std::abs(v.c2)});
  return m;
}

double l2_norm(const RealField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(s) * f.grid.spacing();
}

double l2_norm(const SpinorField& f) {
  double s = 0.0;
  for (const Spinor& v : f.values) s += v.norm2();
  return std::sqrt(s) * f.grid.spacing();
}

ComplexField to_complex(const RealField& f) {
  ComplexField out(f.grid);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k];
  return out;
}

RealField real_part(const ComplexField& f) {
  RealField out(f.grid);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].real();
  return out;
}

RealField imag_part(const ComplexField& f) {
  RealField out(f.grid);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].imag();
  return out;
}

// -- FourierField --------------------------------------------------------------

cplx FourierField::value(double x, double y) const {
  cplx sum{};
  for (const auto& m : modes)
    sum += m.amplitude * std::polar(1.0, grid.wavenumber(m.kx) * x + grid.wavenumber(m.ky) * y);
  return sum;
}

CJet FourierField::jet(double x, double y) const {
  CJet j;
  const cplx i{0.0, 1.0};
  for (const auto& m : modes) {
    const double kx = grid.wavenumber(m.kx);
    const double ky = grid.wavenumber(m.ky);
    const cplx e = m.amplitude * std::polar(1.0, kx * x + ky * y);
    j.v += e;
    j.x += i * kx * e;
    j.y += i * ky * e;
    j.xx -= kx * kx * e;
    j.xy -= kx * ky * e;
    j.yy -= ky * ky * e;
  }
  return j;
}

FourierField FourierField::derivative(Axis a) const {
  FourierField out = *this;
  for (auto& m : out.modes)
    m.amplitude *= cplx(0.0, grid.wavenumber(a == Axis::x ? m.kx : m.ky));
  return out;
}

ComplexField FourierField::sample() const {
  return dhlab::sample<cplx>(grid, [&](double x, double y) { return value(x, y); });
}

RealField FourierField::sample_real() const { return real_part(sample()); }

FourierField random_bandlimited(const GridSpec& g, std::uint64_t seed, int band, double amplitude,
                                bool real_valued) {
  if (band < 0 || 4 * band > g.n)
    throw BadParams("random_bandlimited: band must satisfy 0 <= band <= n/4");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  FourierField f{g, {}};
  for (int ky = -band; ky <= band; ++ky) {
    for (int kx = -band; kx <= band; ++kx) {
      if (real_valued) {
        // One representative per conjugate pair, plus the real zero mode.
        if (ky < 0 || (ky == 0 && kx < 0)) continue;
        if (kx == 0 && ky == 0) {
          f.modes.push_back({0, 0, cplx(amplitude * normal(rng))});
          continue;
        }
        const double re = normal(rng), im = normal(rng);
        const cplx a = amplitude * cplx(re, im) * 0.5;
        f.modes.push_back({kx, ky, a});
        f.modes.push_back({-kx, -ky, std::conj(a)});
      } else {
        const double re = normal(rng), im = normal(rng);
        f.modes.push_back({kx, ky, amplitude * cplx(re, im)});
      }
    }
  }
  return f;
}

}  // namespace dhlab
