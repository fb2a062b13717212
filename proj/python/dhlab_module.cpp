#include <string>
#include <vector>

#include <json.hpp>
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dhlab/dump.hpp"
#include "dhlab/errors.hpp"
#include "dhlab/gross_neveu.hpp"
#include "dhlab/noether.hpp"
#include "dhlab/sigma_model.hpp"
#include "dhlab/solver.hpp"
#include "dhlab/verify.hpp"

namespace py = pybind11;
using namespace dhlab;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

GridSpec make_grid(int n, double length, const std::string& scheme) {
  GridSpec g{n, length, scheme_from_string(scheme)};
  g.validate();
  return g;
}

Axis axis(const std::string& a) {
  if (a == "x") return Axis::x;
  if (a == "y") return Axis::y;
  throw BadParams("axis must be 'x' or 'y'");
}

Spinor spinor(const std::vector<cplx>& v) {
  if (v.size() != 2) throw BadParams("a spinor has two complex components");
  return {v[0], v[1]};
}

std::vector<cplx> to_vec(const Spinor& s) { return {s.c1, s.c2}; }

void check_shape(const py::buffer_info& b, std::vector<py::ssize_t> shape, const char* what) {
  if (b.shape != shape) throw BadParams(std::string(what) + " has the wrong shape");
}

// phi: (m, n, n) real, [component, iy, ix]
SphereMap phi_from(const RealArray& a, const GridSpec& g) {
  const auto b = a.request();
  if (b.ndim != 3) throw BadParams("phi must have shape (m, n, n)");
  const auto m = b.shape[0];
  check_shape(b, {m, g.n, g.n}, "phi");
  SphereMap phi(g, static_cast<int>(m));
  const double* p = static_cast<const double*>(b.ptr);
  for (int i = 0; i < m; ++i)
    for (std::size_t k = 0; k < g.size(); ++k) phi.comp[i][k] = p[i * g.size() + k];
  return phi;
}

// psi: (m, 2, n, n) complex, [component, spinor index, iy, ix]
VectorSpinor psi_from(const ComplexArray& a, const GridSpec& g) {
  const auto b = a.request();
  if (b.ndim != 4) throw BadParams("psi must have shape (m, 2, n, n)");
  const auto m = b.shape[0];
  check_shape(b, {m, 2, g.n, g.n}, "psi");
  VectorSpinor psi(g, static_cast<int>(m));
  const cplx* p = static_cast<const cplx*>(b.ptr);
  const std::size_t s = g.size();
  for (int i = 0; i < m; ++i)
    for (std::size_t k = 0; k < s; ++k) psi.comp[i][k] = {p[(2 * i) * s + k], p[(2 * i + 1) * s + k]};
  return psi;
}

RealArray to_array(const std::vector<RealField>& f) {
  const GridSpec& g = f.front().grid;
  RealArray out({static_cast<py::ssize_t>(f.size()), static_cast<py::ssize_t>(g.n), static_cast<py::ssize_t>(g.n)});
  double* p = out.mutable_data();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t k = 0; k < g.size(); ++k) p[i * g.size() + k] = f[i][k];
  return out;
}

ComplexArray to_array(const VectorSpinor& psi) {
  const GridSpec& g = psi.grid;
  const std::size_t s = g.size();
  ComplexArray out({static_cast<py::ssize_t>(psi.components()), py::ssize_t{2}, static_cast<py::ssize_t>(g.n),
                    static_cast<py::ssize_t>(g.n)});
  cplx* p = out.mutable_data();
  for (int i = 0; i < psi.components(); ++i)
    for (std::size_t k = 0; k < s; ++k) {
      p[(2 * i) * s + k] = psi.comp[i][k].c1;
      p[(2 * i + 1) * s + k] = psi.comp[i][k].c2;
    }
  return out;
}

// J: (2, m, m, n, n), [axis, i, k, iy, ix]
template <class T>
py::array_t<T> current_array(const CurrentFieldT<T>& j) {
  const GridSpec& g = j.grid();
  const int m = j.components();
  py::array_t<T> out({py::ssize_t{2}, static_cast<py::ssize_t>(m), static_cast<py::ssize_t>(m),
                      static_cast<py::ssize_t>(g.n), static_cast<py::ssize_t>(g.n)});
  T* p = out.mutable_data();
  std::size_t o = 0;
  for (Axis a : {Axis::x, Axis::y})
    for (const auto& f : j[a].f)
      for (std::size_t k = 0; k < g.size(); ++k) p[o++] = f[k];
  return out;
}

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["final_residual"] = r.final_residual;
  d["final_residual_phi"] = r.final_residual_phi;
  d["final_residual_psi"] = r.final_residual_psi;
  d["residual_trace"] = r.residual_trace;
  d["energy_trace"] = r.energy_trace;
  d["drift_trace"] = r.drift_trace;
  return d;
}

SolveConfig solve_config(const std::string& scheme, int max_iters, double tol, double step_size, bool precondition) {
  SolveConfig c;
  c.scheme = scheme_from_string(scheme);
  c.max_iters = max_iters;
  c.tol = tol;
  c.step_size = step_size;
  c.precondition = precondition;
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_dhlab, m) {
  m.doc() = "Sigma-model and Gross-Neveu numerical laboratory";

  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", PyExc_ValueError);
  py::register_exception<NonZeroMean>(m, "NonZeroMean", PyExc_ValueError);
  py::register_exception<NotConserved>(m, "NotConserved", PyExc_RuntimeError);
  py::register_exception<BadParams>(m, "BadParams", PyExc_ValueError);
  py::register_exception<Diverged>(m, "Diverged", PyExc_RuntimeError);
  py::register_exception<MajoranaViolated>(m, "MajoranaViolated", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<UnknownSuite>(m, "UnknownSuite", PyExc_KeyError);

  m.def("clifford_mul", [](const std::string& a, const std::vector<cplx>& s) {
    return to_vec(clifford_mul(axis(a), spinor(s)));
  });
  m.def("omega_mul", [](const std::vector<cplx>& s) { return to_vec(omega_mul(spinor(s))); });
  m.def("volume_mul", [](const std::vector<cplx>& s) { return to_vec(volume_mul(spinor(s))); });
  m.def("pairing", [](const std::vector<cplx>& u, const std::vector<cplx>& v) { return pairing(spinor(u), spinor(v)); });
  m.def("project_chirality", [](const std::string& sign, const std::vector<cplx>& s) {
    if (sign != "+" && sign != "-") throw BadParams("chirality must be '+' or '-'");
    return to_vec(project_chirality(sign == "+" ? Chirality::plus : Chirality::minus, spinor(s)));
  });
  m.def("fierz_gap", [](const std::vector<cplx>& a, const std::vector<cplx>& b, const std::vector<cplx>& c) {
    return fierz_gap(spinor(a), spinor(b), spinor(c));
  });
  m.def("majorana_check", [](const std::vector<cplx>& a, const std::vector<cplx>& b, const std::vector<cplx>& c) {
    return majorana_check(spinor(a), spinor(b), spinor(c));
  });

  m.def("sigma_suites", &sigma_suites);
  m.def("gn_suites", &gn_suites);
  m.def(
      "run_suite",
      [](const std::string& name, bool gn, int samples, std::uint64_t seed, std::vector<double> kappas) {
        SuiteOptions opt;
        opt.samples = samples;
        opt.seed = seed;
        if (!kappas.empty()) opt.kappas = std::move(kappas);
        return to_python((gn ? run_gn_suite(name, opt) : run_suite(name, opt)).to_json());
      },
      py::arg("name"), py::arg("gn") = false, py::arg("samples") = -1, py::arg("seed") = 1,
      py::arg("kappas") = std::vector<double>{});

  m.def(
      "exact_solution",
      [](const std::string& kind, int n, double length, const std::string& scheme, int sphere_dim,
         const std::vector<cplx>& sp, int winding) {
        ExactParams ep;
        ep.n = sphere_dim;
        ep.spinor = spinor(sp);
        ep.winding = winding;
        const auto [phi, psi] = make_exact_solution(exact_kind_from_string(kind), make_grid(n, length, scheme), ep);
        return py::make_tuple(to_array(phi.comp), to_array(psi));
      },
      py::arg("kind"), py::arg("n") = 32, py::arg("length") = 2.0 * 3.141592653589793,
      py::arg("scheme") = "spectral", py::arg("sphere_dim") = 2,
      py::arg("spinor") = std::vector<cplx>{1.0, 0.0}, py::arg("winding") = 1);

  m.def(
      "random_pair",
      [](int n, double length, int sphere_dim, std::uint64_t seed, int band) {
        SphereMap phi;
        VectorSpinor psi;
        random_analytic_pair(make_grid(n, length, "spectral"), sphere_dim, seed, band).sample(phi, psi);
        return py::make_tuple(to_array(phi.comp), to_array(psi));
      },
      py::arg("n") = 32, py::arg("length") = 2.0 * 3.141592653589793, py::arg("sphere_dim") = 2,
      py::arg("seed") = 0, py::arg("band") = 2);

  m.def(
      "energy",
      [](const RealArray& phi, const ComplexArray& psi, double kappa, double length, const std::string& scheme) {
        const auto b = phi.request();
        if (b.ndim != 3) throw BadParams("phi must have shape (m, n, n)");
        const GridSpec g = make_grid(static_cast<int>(b.shape[1]), length, scheme);
        const SphereMap p = phi_from(phi, g);
        return energy(p, psi_from(psi, g), {kappa, p.components() - 1});
      },
      py::arg("phi"), py::arg("psi"), py::arg("kappa"), py::arg("length"), py::arg("scheme") = "spectral");

  m.def(
      "el_residuals",
      [](const RealArray& phi, const ComplexArray& psi, double kappa, double length, const std::string& scheme) {
        const auto b = phi.request();
        if (b.ndim != 3) throw BadParams("phi must have shape (m, n, n)");
        const GridSpec g = make_grid(static_cast<int>(b.shape[1]), length, scheme);
        const SphereMap p = phi_from(phi, g);
        const VectorSpinor s = psi_from(psi, g);
        const ModelParams mp{kappa, p.components() - 1};
        return py::make_tuple(to_array(el_residual_phi(p, s, mp)), to_array(el_residual_psi(p, s, mp)));
      },
      py::arg("phi"), py::arg("psi"), py::arg("kappa"), py::arg("length"), py::arg("scheme") = "spectral");

  m.def(
      "current",
      [](const RealArray& phi, const ComplexArray& psi, double length, const std::string& scheme) {
        const auto b = phi.request();
        if (b.ndim != 3) throw BadParams("phi must have shape (m, n, n)");
        const GridSpec g = make_grid(static_cast<int>(b.shape[1]), length, scheme);
        const CurrentField j = current_sphere(phi_from(phi, g), psi_from(psi, g));
        return py::make_tuple(current_array(j), divergence(j).max_abs());
      },
      py::arg("phi"), py::arg("psi"), py::arg("length"), py::arg("scheme") = "spectral");

  m.def(
      "relax_sigma",
      [](const RealArray& phi, const ComplexArray& psi, double kappa, double length, const std::string& scheme,
         int max_iters, double tol, double step_size, bool precondition) {
        const auto b = phi.request();
        if (b.ndim != 3) throw BadParams("phi must have shape (m, n, n)");
        const SolveConfig cfg = solve_config(scheme, max_iters, tol, step_size, precondition);
        const GridSpec g = make_grid(static_cast<int>(b.shape[1]), length, scheme);
        const SphereMap p = phi_from(phi, g);
        SigmaSolution sol;
        {
          py::gil_scoped_release release;
          sol = relax_sigma(p, psi_from(psi, g), {kappa, p.components() - 1}, cfg);
        }
        return py::make_tuple(to_array(sol.phi.comp), to_array(sol.psi), report_dict(sol.report));
      },
      py::arg("phi"), py::arg("psi"), py::arg("kappa"), py::arg("length"), py::arg("scheme") = "central2",
      py::arg("max_iters") = 10000, py::arg("tol") = 1e-6, py::arg("step_size") = 1.0,
      py::arg("precondition") = true);

  m.def(
      "gn_solution",
      [](const std::string& kind, int n, double length, double lambda, double kappa, int q, int kx, int ky,
         int branch, const std::string& scheme) {
        const GNParams p{lambda, kappa};
        return to_array(make_gn_solution(gn_kind_from_string(kind), make_grid(n, length, scheme), p,
                                         {q, kx, ky, branch}));
      },
      py::arg("kind"), py::arg("n") = 32, py::arg("length") = 2.0 * 3.141592653589793, py::arg("lam") = -1.0,
      py::arg("kappa") = 1.0, py::arg("q") = 1, py::arg("kx") = 1, py::arg("ky") = 0, py::arg("branch") = 1,
      py::arg("scheme") = "spectral");

  m.def(
      "gn_residual",
      [](const ComplexArray& psi, double lambda, double kappa, double length, const std::string& scheme) {
        const auto b = psi.request();
        if (b.ndim != 4) throw BadParams("psi must have shape (q, 2, n, n)");
        const GridSpec g = make_grid(static_cast<int>(b.shape[2]), length, scheme);
        return to_array(gn_residual(psi_from(psi, g), {lambda, kappa}));
      },
      py::arg("psi"), py::arg("lam"), py::arg("kappa"), py::arg("length"), py::arg("scheme") = "spectral");

  m.def(
      "gn_energy",
      [](const ComplexArray& psi, double lambda, double kappa, double length, const std::string& scheme) {
        const auto b = psi.request();
        if (b.ndim != 4) throw BadParams("psi must have shape (q, 2, n, n)");
        const GridSpec g = make_grid(static_cast<int>(b.shape[2]), length, scheme);
        return gn_energy(psi_from(psi, g), {lambda, kappa});
      },
      py::arg("psi"), py::arg("lam"), py::arg("kappa"), py::arg("length"), py::arg("scheme") = "spectral");

  m.def(
      "gn_current",
      [](const ComplexArray& psi, double length, const std::string& scheme) {
        const auto b = psi.request();
        if (b.ndim != 4) throw BadParams("psi must have shape (q, 2, n, n)");
        const GridSpec g = make_grid(static_cast<int>(b.shape[2]), length, scheme);
        const ComplexCurrentField j = gn_current(psi_from(psi, g));
        return py::make_tuple(current_array(j), divergence(j).max_abs());
      },
      py::arg("psi"), py::arg("length"), py::arg("scheme") = "spectral");

  m.def(
      "relax_gn",
      [](const ComplexArray& psi, double lambda, double kappa, double length, const std::string& scheme,
         int max_iters, double tol, double step_size, bool precondition) {
        const auto b = psi.request();
        if (b.ndim != 4) throw BadParams("psi must have shape (q, 2, n, n)");
        const SolveConfig cfg = solve_config(scheme, max_iters, tol, step_size, precondition);
        const GridSpec g = make_grid(static_cast<int>(b.shape[2]), length, scheme);
        GNSolution sol;
        {
          const GNField start = psi_from(psi, g);
          py::gil_scoped_release release;
          sol = relax_gn(start, {lambda, kappa}, cfg);
        }
        return py::make_tuple(to_array(sol.psi), report_dict(sol.report));
      },
      py::arg("psi"), py::arg("lam"), py::arg("kappa"), py::arg("length"), py::arg("scheme") = "spectral",
      py::arg("max_iters") = 10000, py::arg("tol") = 1e-7, py::arg("step_size") = 1.0,
      py::arg("precondition") = true);

  m.def(
      "read_phi",
      [](const std::string& path) {
        const SphereMap phi = read_sphere_map(path);
        return py::make_tuple(to_array(phi.comp), phi.grid.length);
      },
      py::arg("path"));
  m.def(
      "read_psi",
      [](const std::string& path, const std::string& name) {
        const VectorSpinor psi = read_vector_spinor(path, name);
        return py::make_tuple(to_array(psi), psi.grid.length);
      },
      py::arg("path"), py::arg("name") = "psi");
  m.def(
      "write_phi",
      [](const std::string& path, const RealArray& phi, double length) {
        const auto b = phi.request();
        if (b.ndim != 3) throw BadParams("phi must have shape (m, n, n)");
        write_sphere_map(path, phi_from(phi, make_grid(static_cast<int>(b.shape[1]), length, "central2")));
      },
      py::arg("path"), py::arg("phi"), py::arg("length"));
  m.def(
      "write_psi",
      [](const std::string& path, const ComplexArray& psi, double length) {
        const auto b = psi.request();
        if (b.ndim != 4) throw BadParams("psi must have shape (m, 2, n, n)");
        write_vector_spinor(path, psi_from(psi, make_grid(static_cast<int>(b.shape[2]), length, "central2")));
      },
      py::arg("path"), py::arg("psi"), py::arg("length"));
}
