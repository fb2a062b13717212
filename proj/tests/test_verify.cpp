#include <doctest.h>

#include "dhlab/errors.hpp"
#include "dhlab/verify.hpp"

using namespace dhlab;

TEST_SUITE("verify") {
  TEST_CASE("sigma suites pass") {
    const SuiteOptions opt;
    for (const auto& name : sigma_suites()) {
      CAPTURE(name);
      const SuiteResult r = run_suite(name, opt);
      CHECK(r.pass);
      CHECK(r.max_gap <= r.tolerance);
      CHECK(r.to_json().at("suite") == name);
    }
  }

  TEST_CASE("gross-neveu suites pass") {
    const SuiteOptions opt;
    for (const auto& name : gn_suites()) {
      CAPTURE(name);
      CHECK(run_gn_suite(name, opt).pass);
    }
  }

  TEST_CASE("unknown suites") {
    CHECK_THROWS_AS(run_suite("bogus", {}), UnknownSuite);
    CHECK_THROWS_AS(run_gn_suite("clifford", {}), UnknownSuite);
  }

  TEST_CASE("seeds are reproducible") {
    SuiteOptions opt;
    opt.samples = 100;
    opt.seed = 42;
    CHECK(run_suite("fierz", opt).max_gap == run_suite("fierz", opt).max_gap);
  }
}
