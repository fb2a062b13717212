#pragma once

// JSON residual reports and CSV tables shared by the command-line tool and
// the tests.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dhlab/grid.hpp"

namespace dhlab {

/// {op, max_abs, l2, grid: {n, length}, scheme, kappa}; max_abs and l2
/// (h^2-weighted) are taken over all given fields.
nlohmann::json residual_report(const std::string& op, const std::vector<RealField>& fields,
                               double kappa);
nlohmann::json residual_report(const std::string& op, const std::vector<ComplexField>& fields,
                               double kappa);
nlohmann::json residual_report(const std::string& op, const std::vector<SpinorField>& fields,
                               double kappa);

void write_json(const std::string& path, const nlohmann::json& j);

class CsvWriter {
 public:
  /// Throws Error when the file cannot be created.
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  /// Throws BadParams when the cell count differs from the column count.
  void row(const std::vector<std::string>& cells);
  /// Shortest round-trip decimal representation.
  static std::string num(double v);

 private:
  std::ofstream os_;
  std::size_t width_;
};

}  // namespace dhlab
