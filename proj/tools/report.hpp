#pragma once

// Versioned report emitted by every fhk subcommand.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fhk/types.hpp"

namespace fhk::cli {

inline constexpr int kSchemaVersion = 1;

struct ReportRow {
  std::string label;
  cplx value;
  std::optional<cplx> expected;
  std::optional<double> residual;
  std::optional<double> tolerance;
  std::optional<bool> pass;
};

class ReportDocument {
 public:
  explicit ReportDocument(std::string command) : command_(std::move(command)) {}

  void set_parameter(const std::string& key, const std::string& value) { parameters_[key] = value; }
  void add_quadrature(const std::string& meta) { quadrature_.push_back(meta); }
  void set_tolerance(const std::string& key, double tol) { tolerances_[key] = tol; }

  void add_value(std::string label, cplx value);
  /// Residual |value - expected| / scale, judged against tol.
  void add_check(std::string label, cplx value, cplx expected, double tol, double scale = 1.0);
  /// A residual with no paired expectation.
  void add_residual(std::string label, double residual, double tol);

  const std::vector<ReportRow>& rows() const noexcept { return rows_; }
  bool all_pass() const;

  /// Sorted keys, numbers rounded to 15 significant digits.
  std::string to_json() const;
  std::string to_csv() const;

 private:
  std::string command_;
  std::map<std::string, std::string> parameters_;
  std::map<std::string, double> tolerances_;
  std::vector<std::string> quadrature_;
  std::vector<ReportRow> rows_;
};

/// %.15g round trip, with -0 folded to 0.
double canonical(double x);
std::string format15(double x);

}  // namespace fhk::cli
