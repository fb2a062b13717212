#pragma once

// Randomised property suites over the pointwise algebra and the analytic
// field identities. Each suite reports the largest gap it saw against a
// fixed tolerance; negative controls are part of `pass`.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "dhlab/sigma_model.hpp"

namespace dhlab {

struct SuiteOptions {
  int samples = -1;  // -1: the suite's default
  std::uint64_t seed = 1;
  std::vector<double> kappas{0.0, -1.0 / 6.0, 0.7};
};

struct SuiteResult {
  std::string suite;
  int samples = 0;
  double max_gap = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// Sigma-model suites: clifford, fierz, divergence-identity,
/// algebra-general, killing-cancellation, symmetry, norm-identity,
/// exact-solutions.
std::vector<std::string> sigma_suites();
/// Gross-Neveu suites: fierz, majorana, exact-solutions, algebra.
std::vector<std::string> gn_suites();

/// Throws UnknownSuite for names outside the respective list.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);
SuiteResult run_gn_suite(const std::string& name, const SuiteOptions& opt);

/// Gaussian test data.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double normal() { return normal_(rng_); }
  Spinor spinor() { return {cplx(normal(), normal()), cplx(normal(), normal())}; }
  std::vector<double> vec(int n);
  /// Random skew-symmetric m x m matrix, row-major.
  std::vector<double> skew(int m);
  /// |phi| = 1, dphi_a tangent, sum phi^i psi^i = 0; sphere dimension n.
  PointState admissible_point(int n);

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dhlab
