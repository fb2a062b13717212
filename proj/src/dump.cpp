#include "dhlab/dump.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {

using nlohmann::json;

constexpr const char* kLayout = "row-major-x-fastest";

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return r;
  }
  return v;
}

void put(std::ostream& os, double x) {
  const std::uint64_t v = to_little(std::bit_cast<std::uint64_t>(x));
  char buf[8];
  std::memcpy(buf, &v, 8);
  os.write(buf, 8);
}

double get(const char* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  return std::bit_cast<double>(to_little(v));
}

std::ofstream open_out(const std::string& path, const std::string& name, const GridSpec& g,
                       std::size_t components, const char* dtype) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  const json h = {{"name", name},
                  {"grid", {{"n", g.n}, {"length", g.length}}},
                  {"components", components},
                  {"dtype", dtype},
                  {"layout", kLayout},
                  {"endian", "little"}};
  os << h.dump() << '\n';
  return os;
}

template <class T>
const GridSpec& common_grid(const std::vector<Field<T>>& comps) {
  if (comps.empty()) throw BadParams("dump: no components to write");
  for (const auto& c : comps)
    if (!c.grid.same_lattice(comps.front().grid) || c.size() != comps.front().grid.size())
      throw BadParams("dump: components live on different grids");
  return comps.front().grid;
}

struct Loaded {
  DumpHeader header;
  std::string payload;
};

DumpHeader parse_header(const std::string& line, const std::string& path) {
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(path + ": header is not valid JSON (" + e.what() + ")");
  }
  DumpHeader d;
  try {
    d.name = h.at("name").get<std::string>();
    d.n = h.at("grid").at("n").get<int>();
    d.length = h.at("grid").at("length").get<double>();
    d.components = h.at("components").get<int>();
    d.dtype = h.at("dtype").get<std::string>();
    if (h.at("layout").get<std::string>() != kLayout)
      throw FormatError(path + ": unsupported layout");
    if (h.at("endian").get<std::string>() != "little")
      throw FormatError(path + ": unsupported endianness");
  } catch (const json::exception& e) {
    throw FormatError(path + ": bad header (" + e.what() + ")");
  }
  if (d.dtype != "f64" && d.dtype != "c128") throw FormatError(path + ": unknown dtype '" + d.dtype + "'");
  if (d.n < 1 || d.components < 1 || !(d.length > 0.0) || !std::isfinite(d.length))
    throw FormatError(path + ": header has non-positive sizes");
  return d;
}

Loaded load(const std::string& path, const std::string& expected_name, const char* dtype) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open dump '" + path + "'");
  std::string line;
  if (!std::getline(is, line)) throw FormatError(path + ": missing header line");
  Loaded l{parse_header(line, path), {}};
  if (!expected_name.empty() && l.header.name != expected_name)
    throw FormatError(path + ": expected field '" + expected_name + "', found '" + l.header.name + "'");
  if (l.header.dtype != dtype)
    throw FormatError(path + ": expected dtype " + dtype + ", found " + l.header.dtype);
  l.payload.assign(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
  const std::size_t per = l.header.dtype == "f64" ? 8 : 16;
  const std::size_t want =
      per * static_cast<std::size_t>(l.header.n) * l.header.n * static_cast<std::size_t>(l.header.components);
  if (l.payload.size() != want)
    throw FormatError(path + ": payload has " + std::to_string(l.payload.size()) + " bytes, expected " +
                      std::to_string(want));
  return l;
}

GridSpec grid_of(const DumpHeader& h, Scheme s) {
  GridSpec g{h.n, h.length, s};
  try {
    g.validate();
  } catch (const BadParams& e) {
    throw FormatError(std::string("dump grid invalid: ") + e.what());
  }
  return g;
}

}  // namespace

void write_dump(const std::string& path, const std::string& name, const std::vector<RealField>& comps) {
  auto os = open_out(path, name, common_grid(comps), comps.size(), "f64");
  for (const auto& c : comps)
    for (double v : c.values) put(os, v);
  if (!os) throw Error("write failed for '" + path + "'");
}

void write_dump(const std::string& path, const std::string& name,
                const std::vector<ComplexField>& comps) {
  auto os = open_out(path, name, common_grid(comps), comps.size(), "c128");
  for (const auto& c : comps)
    for (const cplx& v : c.values) {
      put(os, v.real());
      put(os, v.imag());
    }
  if (!os) throw Error("write failed for '" + path + "'");
}

DumpHeader read_dump_header(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open dump '" + path + "'");
  std::string line;
  if (!std::getline(is, line)) throw FormatError(path + ": missing header line");
  return parse_header(line, path);
}

std::vector<RealField> read_real_dump(const std::string& path, const std::string& expected_name,
                                      Scheme scheme) {
  const Loaded l = load(path, expected_name, "f64");
  const GridSpec g = grid_of(l.header, scheme);
  std::vector<RealField> out(l.header.components, RealField(g));
  const char* p = l.payload.data();
  for (auto& c : out)
    for (double& v : c.values) {
      v = get(p);
      p += 8;
    }
  return out;
}

std::vector<ComplexField> read_complex_dump(const std::string& path, const std::string& expected_name,
                                            Scheme scheme) {
  const Loaded l = load(path, expected_name, "c128");
  const GridSpec g = grid_of(l.header, scheme);
  std::vector<ComplexField> out(l.header.components, ComplexField(g));
  const char* p = l.payload.data();
  for (auto& c : out)
    for (cplx& v : c.values) {
      v = {get(p), get(p + 8)};
      p += 16;
    }
  return out;
}

void write_sphere_map(const std::string& path, const SphereMap& phi) { write_dump(path, "phi", phi.comp); }

SphereMap read_sphere_map(const std::string& path, Scheme scheme) {
  auto comps = read_real_dump(path, "phi", scheme);
  SphereMap phi;
  phi.grid = comps.front().grid;
  phi.comp = std::move(comps);
  return phi;
}

void write_vector_spinor(const std::string& path, const VectorSpinor& psi, const std::string& name) {
  std::vector<ComplexField> comps;
  for (const auto& c : psi.comp) {
    ComplexField a(c.grid), b(c.grid);
    for (std::size_t k = 0; k < c.size(); ++k) {
      a[k] = c[k].c1;
      b[k] = c[k].c2;
    }
    comps.push_back(std::move(a));
    comps.push_back(std::move(b));
  }
  write_dump(path, name, comps);
}

VectorSpinor read_vector_spinor(const std::string& path, const std::string& name, Scheme scheme) {
  const auto comps = read_complex_dump(path, name, scheme);
  if (comps.size() % 2 != 0) throw FormatError(path + ": spinor dump needs an even component count");
  const GridSpec& g = comps.front().grid;
  VectorSpinor psi(g, static_cast<int>(comps.size() / 2));
  for (std::size_t i = 0; i < psi.comp.size(); ++i)
    for (std::size_t k = 0; k < g.size(); ++k) psi.comp[i][k] = {comps[2 * i][k], comps[2 * i + 1][k]};
  return psi;
}

void write_current(const std::string& path, const CurrentField& j, const std::string& name) {
  std::vector<RealField> comps = j.x.f;
  comps.insert(comps.end(), j.y.f.begin(), j.y.f.end());
  write_dump(path, name, comps);
}

CurrentField read_current(const std::string& path, const std::string& name, Scheme scheme) {
  auto comps = read_real_dump(path, name, scheme);
  const int half = static_cast<int>(comps.size() / 2);
  const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(half))));
  if (comps.size() % 2 != 0 || m * m != half)
    throw FormatError(path + ": current dump needs 2*M*M components");
  const GridSpec& g = comps.front().grid;
  CurrentField j{RealPairFields(g, m), RealPairFields(g, m)};
  for (int q = 0; q < half; ++q) {
    j.x.f[q] = std::move(comps[q]);
    j.y.f[q] = std::move(comps[half + q]);
  }
  return j;
}

void write_pair_fields(const std::string& path, const std::string& name, const RealPairFields& f) {
  write_dump(path, name, f.f);
}

void write_pair_fields(const std::string& path, const std::string& name, const ComplexPairFields& f) {
  write_dump(path, name, f.f);
}

}  // namespace dhlab
