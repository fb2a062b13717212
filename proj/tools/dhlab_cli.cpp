// dhlab: verification suites, solvers and current/potential extraction.
//
// Exit codes: 0 success, 1 numeric failure, 2 usage or configuration error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhlab/dump.hpp"
#include "dhlab/errors.hpp"
#include "dhlab/gross_neveu.hpp"
#include "dhlab/noether.hpp"
#include "dhlab/report.hpp"
#include "dhlab/sigma_model.hpp"
#include "dhlab/solver.hpp"
#include "dhlab/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dhlab;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric failure with the report already written.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* a : keys) known = known || k == a;
    if (!known) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("key '") + key + "': " + e.what());
  }
}

struct Config {
  json root;
  fs::path dir;  // relative input paths resolve against the config file
};

Config load_config(const std::string& path, std::initializer_list<const char*> sections) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config '" + path + "'");
  Config c;
  try {
    c.root = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  allow_keys(c.root, sections, "config");
  c.dir = fs::path(path).parent_path();
  return c;
}

std::string input_path(const Config& c, const std::string& p) {
  const fs::path q(p);
  return q.is_absolute() ? p : (c.dir / q).string();
}

GridSpec parse_grid(const json& j, Scheme scheme) {
  allow_keys(j, {"n", "length"}, "grid");
  GridSpec g{get_or(j, "n", 32), get_or(j, "length", 2.0 * std::numbers::pi), scheme};
  g.validate();
  return g;
}

Scheme parse_scheme(const std::string& s) {
  try {
    return scheme_from_string(s);
  } catch (const BadParams& e) {
    throw ConfigError(e.what());
  }
}

SolveConfig parse_solve(const json& j) {
  allow_keys(j, {"max_iters", "step_size", "tol", "seed", "scheme", "backtrack", "armijo", "min_step",
                 "precondition", "log_every"},
             "solve");
  SolveConfig s;
  s.max_iters = get_or(j, "max_iters", s.max_iters);
  s.step_size = get_or(j, "step_size", s.step_size);
  s.tol = get_or(j, "tol", s.tol);
  s.seed = get_or(j, "seed", s.seed);
  s.scheme = parse_scheme(get_or<std::string>(j, "scheme", to_string(s.scheme)));
  s.backtrack = get_or(j, "backtrack", s.backtrack);
  s.armijo = get_or(j, "armijo", s.armijo);
  s.min_step = get_or(j, "min_step", s.min_step);
  s.precondition = get_or(j, "precondition", s.precondition);
  s.log_every = get_or(j, "log_every", s.log_every);
  s.validate();
  return s;
}

struct IoConfig {
  fs::path outdir = "dhlab-out";
  bool dump_fields = true;
};

IoConfig parse_io(const json& root) {
  IoConfig io;
  if (root.contains("io")) {
    const json& j = root.at("io");
    allow_keys(j, {"outdir", "dump_fields"}, "io");
    io.outdir = get_or<std::string>(j, "outdir", io.outdir.string());
    io.dump_fields = get_or(j, "dump_fields", io.dump_fields);
  }
  if (const char* env = std::getenv("DHLAB_OUTDIR"); env && *env) io.outdir = env;
  fs::create_directories(io.outdir);
  return io;
}

std::string out(const IoConfig& io, const std::string& name) { return (io.outdir / name).string(); }

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

void write_trace(const std::string& path, const SolveReport& r) {
  CsvWriter csv(path, {"iteration", "residual", "energy", "drift", "slope"});
  for (std::size_t k = 0; k < r.residual_trace.size(); ++k) {
    auto cell = [&](const std::vector<double>& v, std::size_t i) {
      return i < v.size() ? CsvWriter::num(v[i]) : std::string();
    };
    csv.row({std::to_string(k), cell(r.residual_trace, k), cell(r.energy_trace, k), cell(r.drift_trace, k),
             k == 0 ? std::string() : cell(r.slope_trace, k - 1)});
  }
}

json report_json(const SolveReport& r) {
  return {{"iterations", r.iterations},
          {"converged", r.converged},
          {"final_residual", r.final_residual},
          {"final_residual_phi", r.final_residual_phi},
          {"final_residual_psi", r.final_residual_psi}};
}

void perturb(SphereMap& phi, VectorSpinor& psi, double amp, std::uint64_t seed) {
  if (amp == 0.0) return;
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

// -- commands ---------------------------------------------------------------

int cmd_verify(std::vector<std::string> names, const std::string& tag, const SuiteOptions& opt, bool gn,
               const std::string& outfile) {
  if (names.size() == 1 && names.front() == "all") names = gn ? gn_suites() : sigma_suites();
  if (names.empty()) throw ConfigError("no suites selected");
  json results = json::array();
  bool pass = true;
  for (const auto& n : names) {
    const SuiteResult r = gn ? run_gn_suite(n, opt) : run_suite(n, opt);
    results.push_back(r.to_json());
    pass = pass && r.pass;
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.suite << " max_gap=" << r.max_gap
              << " tolerance=" << r.tolerance << '\n';
  }
  const json doc = names.size() == 1 ? results.front() : json{{"suites", results}, {"pass", pass}};
  std::cout << doc.dump(2) << '\n';
  std::string target = outfile;
  if (target.empty())
    if (const char* env = std::getenv("DHLAB_OUTDIR"); env && *env) {
      fs::create_directories(env);
      target = (fs::path(env) / ((gn ? "gn-verify-" : "verify-") + tag + ".json")).string();
    }
  if (!target.empty()) write_json(target, doc);
  return pass ? 0 : 1;
}

int cmd_solve(const std::string& path) {
  const Config c = load_config(path, {"grid", "model", "init", "solve", "io"});
  const SolveConfig cfg = parse_solve(get_or(c.root, "solve", json::object()));
  const GridSpec g = parse_grid(get_or(c.root, "grid", json::object()), cfg.scheme);
  const json model = get_or(c.root, "model", json::object());
  allow_keys(model, {"kappa", "n"}, "model");
  const ModelParams mp{get_or(model, "kappa", 0.0), get_or(model, "n", 2)};
  mp.validate();
  const json init = get_or(c.root, "init", json::object());
  allow_keys(init, {"kind", "perturbation", "spinor", "winding", "band", "phi", "psi"}, "init");
  const IoConfig io = parse_io(c.root);

  const std::string kind = get_or<std::string>(init, "kind", "random");
  SphereMap phi;
  VectorSpinor psi;
  if (kind == "dump") {
    phi = read_sphere_map(input_path(c, get_or<std::string>(init, "phi", "")), cfg.scheme);
    psi = read_vector_spinor(input_path(c, get_or<std::string>(init, "psi", "")), "psi", cfg.scheme);
  } else if (kind == "random") {
    random_analytic_pair(g, mp.n, cfg.seed, get_or(init, "band", 2)).sample(phi, psi);
  } else {
    ExactParams ep;
    ep.n = mp.n;
    ep.winding = get_or(init, "winding", 1);
    if (init.contains("spinor")) {
      const auto v = get_or<std::vector<double>>(init, "spinor", {});
      if (v.size() != 4) throw ConfigError("init.spinor must hold [re1, im1, re2, im2]");
      ep.spinor = {cplx(v[0], v[1]), cplx(v[2], v[3])};
    }
    ExactKind k;
    try {
      k = exact_kind_from_string(kind);
    } catch (const BadParams& e) {
      throw ConfigError(e.what());
    }
    std::tie(phi, psi) = make_exact_solution(k, g, ep);
  }
  perturb(phi, psi, get_or(init, "perturbation", 0.0), cfg.seed + 1);

  int checkpoint_count = 0;
  auto checkpoint = [&](const SphereMap& p, const VectorSpinor& s, const SolveReport& r) {
    if (!io.dump_fields) return;
    const std::string tag = "_iter" + std::to_string(r.iterations);
    write_sphere_map(out(io, "phi" + tag + ".dump"), p);
    write_vector_spinor(out(io, "psi" + tag + ".dump"), s);
    ++checkpoint_count;
  };
  const SigmaSolution sol = relax_sigma(phi, psi, mp, cfg, checkpoint);

  // Conservation post-check, spectral throughout.
  const SphereMap sphi = with_scheme(sol.phi, Scheme::spectral);
  const VectorSpinor spsi = with_scheme(sol.psi, Scheme::spectral);
  const auto rphi = el_residual_phi(sphi, spsi, mp);
  const auto rpsi = el_residual_psi(sphi, spsi, mp);
  const double eps = std::max(max_of(rphi), max_of(rpsi));
  const double div = divergence(current_sphere(sphi, spsi)).max_abs();
  const double bound = 10.0 * eps + 1e-11;
  const ConstraintDrift drift = constraint_drift(sol.phi, sol.psi);

  json rep = report_json(sol.report);
  rep["command"] = "solve";
  rep["energy"] = energy(sphi, spsi, mp);
  rep["constraint_drift"] = {{"norm_gap", drift.norm_gap}, {"tangency_gap", drift.tangency_gap}};
  rep["conservation"] = {{"max_divergence", div}, {"el_residual_max", eps}, {"bound", bound},
                         {"pass", div <= bound}};
  std::vector<SpinorField> rs(rpsi.comp.begin(), rpsi.comp.end());
  rep["residuals"] = {residual_report("el_residual_phi", rphi, mp.kappa),
                      residual_report("el_residual_psi", rs, mp.kappa)};
  rep["checkpoints"] = checkpoint_count;
  write_json(out(io, "solve_report.json"), rep);
  write_trace(out(io, "trace.csv"), sol.report);
  if (io.dump_fields) {
    write_sphere_map(out(io, "phi.dump"), sol.phi);
    write_vector_spinor(out(io, "psi.dump"), sol.psi);
  }
  std::cout << rep.dump(2) << '\n';
  return sol.report.converged && div <= bound ? 0 : 1;
}

int cmd_gn_solve(const std::string& path) {
  const Config c = load_config(path, {"grid", "model", "init", "solve", "io"});
  const SolveConfig cfg = parse_solve(get_or(c.root, "solve", json::object()));
  const GridSpec g = parse_grid(get_or(c.root, "grid", json::object()), cfg.scheme);
  const json model = get_or(c.root, "model", json::object());
  allow_keys(model, {"lambda", "kappa", "q"}, "model");
  const GNParams gp{get_or(model, "lambda", 0.0), get_or(model, "kappa", 1.0)};
  gp.validate();
  const int q = get_or(model, "q", 1);
  const json init = get_or(c.root, "init", json::object());
  allow_keys(init, {"kind", "perturbation", "kx", "ky", "branch", "band", "psi"}, "init");
  const IoConfig io = parse_io(c.root);

  const std::string kind = get_or<std::string>(init, "kind", "random");
  GNField psi;
  if (kind == "dump") {
    psi = read_vector_spinor(input_path(c, get_or<std::string>(init, "psi", "")), "psi", cfg.scheme);
  } else if (kind == "random") {
    VectorSpinor tmp;
    SphereMap unused;
    random_analytic_pair(g, q - 1 > 0 ? q - 1 : 1, cfg.seed, get_or(init, "band", 2)).sample(unused, tmp);
    psi = GNField(g, q);
    for (int i = 0; i < q; ++i) psi.comp[i] = tmp.comp[i % tmp.components()];
  } else {
    GNKind k;
    try {
      k = gn_kind_from_string(kind);
    } catch (const BadParams& e) {
      throw ConfigError(e.what());
    }
    const GNSolutionParams sp{q, get_or(init, "kx", 1), get_or(init, "ky", 0), get_or(init, "branch", 1)};
    psi = make_gn_solution(k, g, gp, sp);
  }
  if (const double amp = get_or(init, "perturbation", 0.0); amp != 0.0) {
    SphereMap unused;
    VectorSpinor ds;
    random_analytic_pair(g, std::max(q - 1, 1), cfg.seed + 1).sample(unused, ds);
    for (int i = 0; i < psi.components(); ++i)
      for (std::size_t k = 0; k < g.size(); ++k) psi.comp[i][k] += amp * ds.comp[i % ds.components()][k];
  }

  int checkpoint_count = 0;
  auto checkpoint = [&](const GNField& s, const SolveReport& r) {
    if (!io.dump_fields) return;
    write_vector_spinor(out(io, "psi_iter" + std::to_string(r.iterations) + ".dump"), s);
    ++checkpoint_count;
  };
  const GNSolution sol = relax_gn(psi, gp, cfg, checkpoint);

  const GNField spsi = with_scheme(sol.psi, Scheme::spectral);
  const GNField r = gn_residual(spsi, gp);
  const double eps = max_of(r);
  const double div = divergence(gn_current(spsi)).max_abs();
  const double bound = 10.0 * eps + 1e-11;
  json rep = report_json(sol.report);
  rep["command"] = "gn-solve";
  rep["energy"] = gn_energy(spsi, gp);
  rep["conservation"] = {{"max_divergence", div}, {"gn_residual_max", eps}, {"bound", bound},
                         {"pass", div <= bound}};
  const MajoranaReport mr = majorana_scan(spsi);
  rep["majorana_max_gap"] = mr.max_gap;
  std::vector<SpinorField> rs(r.comp.begin(), r.comp.end());
  rep["residuals"] = {residual_report("gn_residual", rs, gp.kappa)};
  rep["checkpoints"] = checkpoint_count;
  write_json(out(io, "solve_report.json"), rep);
  write_trace(out(io, "trace.csv"), sol.report);
  if (io.dump_fields) write_vector_spinor(out(io, "psi.dump"), sol.psi);
  std::cout << rep.dump(2) << '\n';
  return sol.report.converged && div <= bound ? 0 : 1;
}

struct FieldInput {
  SphereMap phi;
  VectorSpinor psi;
  Scheme scheme;
  double tol;
  IoConfig io;
  json model;
};

FieldInput load_fields(const Config& c) {
  const json in = get_or(c.root, "input", json::object());
  allow_keys(in, {"phi", "psi"}, "input");
  if (!in.contains("phi") || !in.contains("psi")) throw ConfigError("input needs 'phi' and 'psi'");
  FieldInput f;
  f.scheme = parse_scheme(get_or<std::string>(c.root, "scheme", "spectral"));
  f.tol = get_or(c.root, "tol", 1e-6);
  f.phi = read_sphere_map(input_path(c, in.at("phi").get<std::string>()), f.scheme);
  f.psi = read_vector_spinor(input_path(c, in.at("psi").get<std::string>()), "psi", f.scheme);
  if (!f.phi.grid.same_lattice(f.psi.grid)) throw FormatError("phi and psi dumps have different grids");
  f.model = get_or(c.root, "model", json::object());
  allow_keys(f.model, {"kappa"}, "model");
  f.io = parse_io(c.root);
  return f;
}

void write_divergence_csv(const std::string& path, const CurrentField& j, const RealPairFields& div) {
  CsvWriter csv(path, {"i", "m", "max_abs_div", "mean_jx", "mean_jy", "max_abs_jx", "max_abs_jy"});
  const double n = static_cast<double>(j.grid().size());
  for (int i = 0; i < j.components(); ++i)
    for (int m = 0; m < j.components(); ++m) {
      double sx = 0.0, sy = 0.0;
      for (double v : j.x(i, m).values) sx += v;
      for (double v : j.y(i, m).values) sy += v;
      csv.row({std::to_string(i + 1), std::to_string(m + 1), CsvWriter::num(max_abs(div(i, m))),
               CsvWriter::num(sx / n), CsvWriter::num(sy / n), CsvWriter::num(max_abs(j.x(i, m))),
               CsvWriter::num(max_abs(j.y(i, m)))});
    }
}

int cmd_current(const std::string& path) {
  const Config c = load_config(path, {"input", "scheme", "tol", "model", "io"});
  const FieldInput f = load_fields(c);
  const CurrentField j = current_sphere(f.phi, f.psi);
  const RealPairFields div = divergence(j);
  write_divergence_csv(out(f.io, "current.csv"), j, div);
  if (f.io.dump_fields) {
    write_current(out(f.io, "J.dump"), j);
    write_pair_fields(out(f.io, "divergence.dump"), "divJ", div);
  }
  json rep = residual_report("divergence", div.f, get_or(f.model, "kappa", 0.0));
  rep["tol"] = f.tol;
  rep["pass"] = div.max_abs() <= f.tol;
  write_json(out(f.io, "current_report.json"), rep);
  std::cout << rep.dump(2) << '\n';
  return rep["pass"].get<bool>() ? 0 : 1;
}

int cmd_reconstruct(const std::string& path) {
  const Config c = load_config(path, {"input", "scheme", "tol", "model", "io"});
  const FieldInput f = load_fields(c);
  const double kappa = get_or(f.model, "kappa", 0.0);
  const CurrentField j = current_sphere(f.phi, f.psi);
  write_divergence_csv(out(f.io, "current.csv"), j, divergence(j));

  const BReport b = reconstruct_B(f.phi, f.psi, kappa, f.tol);
  const WenteReport w = wente_decomposition(f.phi, f.psi, f.tol);
  CsvWriter csv(out(f.io, "potentials.csv"), {"potential", "i", "m", "drift_x", "drift_y", "roundtrip_gap"});
  const int m = f.phi.components();
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      const std::size_t q = static_cast<std::size_t>(i) * m + k;
      csv.row({"B", std::to_string(i + 1), std::to_string(k + 1), CsvWriter::num(b.b.drift_x[q]),
               CsvWriter::num(b.b.drift_y[q]), CsvWriter::num(b.b.roundtrip_gap)});
      csv.row({"M", std::to_string(i + 1), std::to_string(k + 1), CsvWriter::num(w.m.drift_x[q]),
               CsvWriter::num(w.m.drift_y[q]), CsvWriter::num(w.m.roundtrip_gap)});
    }
  if (f.io.dump_fields) {
    write_pair_fields(out(f.io, "B.dump"), "B_periodic", b.b.periodic);
    write_pair_fields(out(f.io, "M.dump"), "M_periodic", w.m.periodic);
  }
  json rep = {{"command", "reconstruct"},
              {"divergence_max", b.divergence_max},
              {"b_roundtrip_gap", b.b.roundtrip_gap},
              {"m_roundtrip_gap", w.m.roundtrip_gap},
              {"b_equation", residual_report("b_equation_residual", b.equation_residual.f, kappa)},
              {"wente_gap", w.wente_gap},
              {"laplace_identity_gap", w.laplace_identity_gap}};
  write_json(out(f.io, "reconstruct_report.json"), rep);
  std::cout << rep.dump(2) << '\n';
  return 0;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number '" + item + "' in --kappa");
    }
  }
  if (v.empty()) throw ConfigError("--kappa needs at least one value");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dhlab: sigma-model and Gross-Neveu numerical laboratory"};
  app.require_subcommand(1);

  std::string suite, kappas, outfile, config;
  SuiteOptions opt;
  auto add_verify = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("suite", suite, "suite name, or 'all'");
    s->add_option("--config", config, "JSON file with 'suites' and optional 'samples', 'seed', 'kappa'");
    s->add_option("--samples", opt.samples, "number of random samples");
    s->add_option("--seed", opt.seed, "random seed");
    s->add_option("--kappa", kappas, "comma-separated kappa values");
    s->add_option("--out", outfile, "also write the JSON report here");
    return s;
  };
  auto* verify = add_verify("verify", "run a sigma-model property suite");
  auto* gn_verify = add_verify("gn-verify", "run a Gross-Neveu property suite");
  auto add_config = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("config", config, "JSON run configuration")->required();
    return s;
  };
  auto* solve = add_config("solve", "relax a sigma-model configuration");
  auto* gn_solve = add_config("gn-solve", "relax a Gross-Neveu configuration");
  auto* current = add_config("current", "compute Noether currents from field dumps");
  auto* reconstruct = add_config("reconstruct", "reconstruct B and M potentials from field dumps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!kappas.empty()) opt.kappas = parse_list(kappas);
    if (verify->parsed() || gn_verify->parsed()) {
      const bool gn = gn_verify->parsed();
      std::vector<std::string> names;
      std::string tag = suite;
      if (!config.empty()) {
        const Config c = load_config(config, {"suites", "samples", "seed", "kappa"});
        names = get_or<std::vector<std::string>>(c.root, "suites", {});
        if (c.root.contains("samples")) opt.samples = get_or(c.root, "samples", opt.samples);
        if (c.root.contains("seed")) opt.seed = get_or(c.root, "seed", opt.seed);
        if (c.root.contains("kappa")) opt.kappas = get_or<std::vector<double>>(c.root, "kappa", {});
        tag = fs::path(config).stem().string();
      }
      if (!suite.empty()) names.push_back(suite);
      if (names.empty()) throw ConfigError("give a suite name or --config");
      return cmd_verify(names, tag, opt, gn, outfile);
    }
    if (solve->parsed()) return cmd_solve(config);
    if (gn_solve->parsed()) return cmd_gn_solve(config);
    if (current->parsed()) return cmd_current(config);
    if (reconstruct->parsed()) return cmd_reconstruct(config);
  } catch (const Diverged& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return 1;
  } catch (const NotConserved& e) {
    std::cerr << "not conserved: " << e.what() << '\n';
    return 1;
  } catch (const MajoranaViolated& e) {
    std::cerr << "majorana condition: " << e.what() << '\n';
    return 1;
  } catch (const UnknownSuite& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
