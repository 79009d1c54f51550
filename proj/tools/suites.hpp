#pragma once

#include <map>
#include <string>
#include <vector>

#include "report.hpp"

namespace fhk::cli {

/// Suite names in report order; "all" runs them in this order.
const std::vector<std::string>& suite_names();

/// Default tolerance per check family, printed in every verify report.
const std::map<std::string, double>& tolerance_table();

/// Appends one row per checked identity. Throws ParameterError for an unknown suite.
void run_suite(ReportDocument& doc, const std::string& suite, int q, int max_degree);

}  // namespace fhk::cli
