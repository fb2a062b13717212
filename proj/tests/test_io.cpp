#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dhlab/dump.hpp"
#include "dhlab/errors.hpp"
#include "dhlab/noether.hpp"
#include "dhlab/report.hpp"
#include "helpers.hpp"

using namespace dhlab;
using namespace dhlab::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dhlab-io-test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream os(p, std::ios::binary);
  os << s;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("field dumps round trip bit for bit") {
    const GridSpec g{16, 3.0, Scheme::spectral};
    SphereMap phi;
    VectorSpinor psi;
    random_analytic_pair(g, 2, 5).sample(phi, psi);
    const fs::path pp = scratch("phi.dump"), ps = scratch("psi.dump"), pj = scratch("J.dump");
    write_sphere_map(pp.string(), phi);
    write_vector_spinor(ps.string(), psi);
    const SphereMap phi2 = read_sphere_map(pp.string());
    const VectorSpinor psi2 = read_vector_spinor(ps.string());
    REQUIRE(phi2.components() == 3);
    REQUIRE(psi2.components() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(gap(phi.comp[i], phi2.comp[i]) == 0.0);
      CHECK(gap(psi.comp[i], psi2.comp[i]) == 0.0);
    }
    CHECK(phi2.grid.length == 3.0);

    const CurrentField j = current_sphere(phi, psi);
    write_current(pj.string(), j);
    const CurrentField j2 = read_current(pj.string());
    CHECK(gap(j.y(1, 2), j2.y(1, 2)) == 0.0);

    const DumpHeader h = read_dump_header(ps.string());
    CHECK(h.name == "psi");
    CHECK(h.dtype == "c128");
    CHECK(h.components == 6);
    CHECK(h.n == 16);

    const std::string raw = slurp(pp);
    const std::string header = raw.substr(0, raw.find('\n'));
    const auto parsed = nlohmann::json::parse(header);
    CHECK(parsed.at("layout") == "row-major-x-fastest");
    CHECK(parsed.at("endian") == "little");
    CHECK(raw.size() == header.size() + 1 + 8 * 3 * 16 * 16);
  }

  TEST_CASE("corrupted dumps are rejected") {
    const GridSpec g{8, 1.0, Scheme::spectral};
    SphereMap phi(g, 3);
    for (auto& v : phi.comp[2].values) v = 1.0;
    const fs::path good = scratch("good.dump");
    write_sphere_map(good.string(), phi);
    const std::string raw = slurp(good);
    const std::size_t nl = raw.find('\n');
    const fs::path bad = scratch("bad.dump");

    spit(bad, "{not json\n" + raw.substr(nl + 1));
    CHECK_THROWS_AS(read_sphere_map(bad.string()), FormatError);
    spit(bad, raw.substr(0, raw.size() - 8));
    CHECK_THROWS_AS(read_sphere_map(bad.string()), FormatError);
    spit(bad, raw + "x");
    CHECK_THROWS_AS(read_sphere_map(bad.string()), FormatError);
    auto edit = [&](const char* key, const nlohmann::json& value) {
      auto h = nlohmann::json::parse(raw.substr(0, nl));
      h[key] = value;
      spit(bad, h.dump() + raw.substr(nl));
    };
    edit("endian", "big");
    CHECK_THROWS_AS(read_sphere_map(bad.string()), FormatError);
    edit("layout", "column-major");
    CHECK_THROWS_AS(read_sphere_map(bad.string()), FormatError);
    edit("dtype", "f32");
    CHECK_THROWS_AS(read_sphere_map(bad.string()), FormatError);
    edit("name", "psi");
    CHECK_THROWS_AS(read_sphere_map(bad.string()), FormatError);
    edit("components", 4);
    CHECK_THROWS_AS(read_sphere_map(bad.string()), FormatError);
    CHECK_THROWS_AS(read_vector_spinor(good.string()), FormatError);
    CHECK_THROWS_AS(read_sphere_map(scratch("missing.dump").string()), FormatError);
  }

  TEST_CASE("reports and csv") {
    const GridSpec g{8, 2.0, Scheme::central2};
    RealField f(g, 0.0);
    f[3] = -2.0;
    const auto j = residual_report("el_residual_phi", {f}, -0.5);
    CHECK(j.at("max_abs") == 2.0);
    CHECK(j.at("l2").get<double>() == doctest::Approx(2.0 * 0.25));
    CHECK(j.at("scheme") == "central2");
    CHECK(j.at("grid").at("n") == 8);
    CHECK(j.at("kappa") == -0.5);

    const fs::path csv = scratch("t.csv");
    {
      CsvWriter w(csv.string(), {"a", "b"});
      w.row({"1", CsvWriter::num(0.1)});
      CHECK_THROWS_AS(w.row({"1"}), BadParams);
    }
    CHECK(slurp(csv) == "a,b\n1,0.1\n");
    CHECK(CsvWriter::num(-2.0943951023932224) == "-2.0943951023932224");
  }
}
