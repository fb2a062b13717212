#pragma once

// Field dumps: one JSON header line followed by raw little-endian values.
//
//   {"name": ..., "grid": {"n": N, "length": L}, "components": C,
//    "dtype": "f64" | "c128", "layout": "row-major-x-fastest", "endian": "little"}
//
// Components are stored one after another, each as N*N values with x
// fastest; complex values as interleaved (re, im) doubles. Spinor fields
// store spin components separately: target index i, spin index s is
// component 2*i + s. Current fields store J_x pairs then J_y pairs, pair
// (i, m) at index i*M + m.

#include <string>
#include <vector>

#include "dhlab/fields.hpp"
#include "dhlab/noether.hpp"

namespace dhlab {

struct DumpHeader {
  std::string name;
  int n = 0;
  double length = 0.0;
  int components = 0;
  std::string dtype;  // "f64" or "c128"
};

void write_dump(const std::string& path, const std::string& name, const std::vector<RealField>& comps);
void write_dump(const std::string& path, const std::string& name,
                const std::vector<ComplexField>& comps);

/// Reads the header only. Throws FormatError on malformed headers.
DumpHeader read_dump_header(const std::string& path);

/// Throws FormatError on any mismatch: header fields, dtype, byte count,
/// or a name different from `expected_name` when that is non-empty. The
/// grid of the returned fields uses `scheme`.
std::vector<RealField> read_real_dump(const std::string& path, const std::string& expected_name = "",
                                      Scheme scheme = Scheme::spectral);
std::vector<ComplexField> read_complex_dump(const std::string& path,
                                            const std::string& expected_name = "",
                                            Scheme scheme = Scheme::spectral);

void write_sphere_map(const std::string& path, const SphereMap& phi);
SphereMap read_sphere_map(const std::string& path, Scheme scheme = Scheme::spectral);

void write_vector_spinor(const std::string& path, const VectorSpinor& psi,
                         const std::string& name = "psi");
VectorSpinor read_vector_spinor(const std::string& path, const std::string& name = "psi",
                                Scheme scheme = Scheme::spectral);

void write_current(const std::string& path, const CurrentField& j, const std::string& name = "J");
CurrentField read_current(const std::string& path, const std::string& name = "J",
                          Scheme scheme = Scheme::spectral);

/// Pair fields (potentials, divergences); M*M components.
void write_pair_fields(const std::string& path, const std::string& name, const RealPairFields& f);
void write_pair_fields(const std::string& path, const std::string& name, const ComplexPairFields& f);

}  // namespace dhlab
