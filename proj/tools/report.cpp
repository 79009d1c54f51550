#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace fhk::cli {
namespace {

using nlohmann::json;

json complex_json(cplx z) { return json{{"re", canonical(z.real())}, {"im", canonical(z.imag())}}; }

json number_or_null(const std::optional<double>& x) { return x ? json(canonical(*x)) : json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

double canonical(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string format15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", canonical(x));
  return buf;
}

void ReportDocument::add_value(std::string label, cplx value) {
  rows_.push_back({std::move(label), value, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
}

void ReportDocument::add_check(std::string label, cplx value, cplx expected, double tol, double scale) {
  const double r = std::abs(value - expected) / scale;
  rows_.push_back({std::move(label), value, expected, r, tol, r <= tol});
}

void ReportDocument::add_residual(std::string label, double residual, double tol) {
  rows_.push_back({std::move(label), residual, std::nullopt, residual, tol, residual <= tol});
}

bool ReportDocument::all_pass() const {
  for (const auto& r : rows_)
    if (r.pass && !*r.pass) return false;
  return true;
}

std::string ReportDocument::to_json() const {
  json rows = json::array();
  for (const auto& r : rows_) {
    rows.push_back(json{{"label", r.label},
                        {"value", complex_json(r.value)},
                        {"expected", r.expected ? complex_json(*r.expected) : json(nullptr)},
                        {"residual", number_or_null(r.residual)},
                        {"tolerance", number_or_null(r.tolerance)},
                        {"pass", r.pass ? json(*r.pass) : json(nullptr)}});
  }
  json tol = json::object();
  for (const auto& [k, v] : tolerances_) tol[k] = canonical(v);
  json doc{{"schema_version", kSchemaVersion},
           {"command", command_},
           {"parameters", parameters_},
           {"quadrature", quadrature_},
           {"tolerances", tol},
           {"rows", rows},
           {"pass", all_pass()}};
  return doc.dump(2) + "\n";
}

std::string ReportDocument::to_csv() const {
  std::ostringstream os;
  os << "label,value_re,value_im,expected_re,expected_im,residual,tolerance,pass\n";
  for (const auto& r : rows_) {
    os << csv_field(r.label) << ',' << format15(r.value.real()) << ',' << format15(r.value.imag()) << ',';
    if (r.expected)
      os << format15(r.expected->real()) << ',' << format15(r.expected->imag());
    else
      os << ',';
    os << ',' << (r.residual ? format15(*r.residual) : "") << ',' << (r.tolerance ? format15(*r.tolerance) : "")
       << ',' << (r.pass ? (*r.pass ? "true" : "false") : "") << '\n';
  }
  return os.str();
}

}  // namespace fhk::cli
