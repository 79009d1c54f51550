#pragma once

#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace fhk::cli {

struct EvalArgs {
  std::string what = "disk";
  int m = 0, n = 0, q = 2;
  std::string z = "0";
  int k = 0;
  double alpha = 0.0, beta = 0.0, x = 0.0;
  std::string point;
};

struct EigenvalueArgs {
  std::string kernel;
  int m = 0, n = 0, q = 2;
  std::string route = "both";
};

struct VerifyArgs {
  std::string suite = "all";
  int q = 2;
  int max_degree = 3;
};

struct TableArgs {
  std::string sweep = "dims";
  int q = 2;
  int q_max = -1;
  int max = 3;
  std::string kernel = "expre";
};

ReportDocument cmd_eval(const EvalArgs& a);
ReportDocument cmd_eigenvalue(const EigenvalueArgs& a);
ReportDocument cmd_verify(const VerifyArgs& a);
ReportDocument cmd_table(const TableArgs& a);

}  // namespace fhk::cli
