#include "dhlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {

template <class T, class Abs2>
nlohmann::json make_report(const std::string& op, const std::vector<Field<T>>& fields, double kappa,
                           Abs2&& abs2) {
  if (fields.empty()) throw BadParams("report: no fields");
  const GridSpec& g = fields.front().grid;
  double mx = 0.0, sum = 0.0;
  for (const auto& f : fields)
    for (const auto& v : f.values) {
      const double a2 = abs2(v);
      mx = std::max(mx, std::sqrt(a2));
      sum += a2;
    }
  return {{"op", op},
          {"max_abs", mx},
          {"l2", g.spacing() * std::sqrt(sum)},
          {"grid", {{"n", g.n}, {"length", g.length}}},
          {"scheme", to_string(g.scheme)},
          {"kappa", kappa}};
}

}  // namespace

nlohmann::json residual_report(const std::string& op, const std::vector<RealField>& fields,
                               double kappa) {
  return make_report(op, fields, kappa, [](double v) { return v * v; });
}

nlohmann::json residual_report(const std::string& op, const std::vector<ComplexField>& fields,
                               double kappa) {
  return make_report(op, fields, kappa, [](const cplx& v) { return std::norm(v); });
}

nlohmann::json residual_report(const std::string& op, const std::vector<SpinorField>& fields,
                               double kappa) {
  return make_report(op, fields, kappa, [](const Spinor& v) { return v.norm2(); });
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << j.dump(2) << '\n';
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : os_(path), width_(columns.size()) {
  if (!os_) throw Error("cannot open '" + path + "' for writing");
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw BadParams("csv: row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
  os_ << '\n';
}

std::string CsvWriter::num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace dhlab
