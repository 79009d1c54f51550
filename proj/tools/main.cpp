#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fhk/errors.hpp"

namespace {

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2, kDomain = 3 };

}  // namespace

int main(int argc, char** argv) {
  using namespace fhk::cli;
  CLI::App app{"Complex spherical harmonics and Funk-Hecke eigenvalues"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string out;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out, "Write the report to a file instead of stdout");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a disk polynomial, Jacobi polynomial or harmonic basis");
  eval->add_option("--what", ev.what)->check(CLI::IsMember({"disk", "jacobi", "harmonic"}));
  eval->add_option("--m", ev.m);
  eval->add_option("--n", ev.n);
  eval->add_option("--q", ev.q);
  eval->add_option("--z", ev.z, "Complex literal a+bi");
  eval->add_option("--k", ev.k);
  eval->add_option("--alpha", ev.alpha);
  eval->add_option("--beta", ev.beta);
  eval->add_option("--x", ev.x);
  eval->add_option("--point", ev.point, "Comma-separated complex coordinates");

  EigenvalueArgs eg;
  auto* eig = app.add_subcommand("eigenvalue", "Funk-Hecke eigenvalue of a built-in kernel");
  eig->add_option("--kernel", eg.kernel, "const:<c> | mono:<a>,<b> | disk:<m>,<n> | expre | absp:<p>")->required();
  eig->add_option("--m", eg.m);
  eig->add_option("--n", eg.n);
  eig->add_option("--q", eg.q);
  eig->add_option("--route", eg.route);

  VerifyArgs vf;
  auto* ver = app.add_subcommand("verify", "Run identity verification suites");
  ver->add_option("--suite", vf.suite);
  ver->add_option("--q", vf.q);
  ver->add_option("--max-degree", vf.max_degree);

  TableArgs tb;
  auto* tab = app.add_subcommand("table", "Sweep eigenvalues, dimensions or constants over a grid");
  tab->add_option("--sweep", tb.sweep);
  tab->add_option("--q", tb.q);
  tab->add_option("--q-max", tb.q_max);
  tab->add_option("--max", tb.max);
  tab->add_option("--kernel", tb.kernel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    std::optional<ReportDocument> doc;
    bool judged = false;
    if (eval->parsed()) {
      doc = cmd_eval(ev);
    } else if (eig->parsed()) {
      doc = cmd_eigenvalue(eg);
      judged = true;
    } else if (ver->parsed()) {
      doc = cmd_verify(vf);
      judged = true;
    } else {
      doc = cmd_table(tb);
      judged = true;
    }
    const std::string text = format == "csv" ? doc->to_csv() : doc->to_json();
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) {
        std::cerr << "fhk: cannot open " << out << "\n";
        return kUsage;
      }
      f << text;
    }
    return judged && !doc->all_pass() ? kFail : kPass;
  } catch (const fhk::ParameterError& e) {
    std::cerr << "fhk: " << e.what() << "\n";
    return kUsage;
  } catch (const fhk::DomainError& e) {
    std::cerr << "fhk: " << e.what() << "\n";
    return kDomain;
  } catch (const fhk::DegeneracyError& e) {
    std::cerr << "fhk: " << e.what() << "\n";
    return kDomain;
  } catch (const fhk::Error& e) {
    std::cerr << "fhk: " << e.what() << "\n";
    return kFail;
  }
}
