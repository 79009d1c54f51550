#include "commands.hpp"

#include <cmath>

#include "fhk/complex_io.hpp"
#include "fhk/funk_hecke.hpp"
#include "fhk/harmonics.hpp"
#include "fhk/special_poly.hpp"
#include "suites.hpp"

namespace fhk::cli {
namespace {

constexpr double kRouteTolerance = 1e-8;

std::string idx_label(int m, int n, int q) {
  return "m=" + std::to_string(m) + " n=" + std::to_string(n) + " q=" + std::to_string(q);
}

}  // namespace

ReportDocument cmd_eval(const EvalArgs& a) {
  ReportDocument doc("eval");
  doc.set_parameter("what", a.what);
  if (a.what == "disk") {
    const DiskIndex idx(a.m, a.n, a.q);
    const cplx z = parse_complex(a.z);
    doc.set_parameter("m", std::to_string(a.m));
    doc.set_parameter("n", std::to_string(a.n));
    doc.set_parameter("q", std::to_string(a.q));
    doc.set_parameter("z", a.z);
    doc.add_value("R " + idx_label(a.m, a.n, a.q), disk_poly(idx, z));
  } else if (a.what == "jacobi") {
    doc.set_parameter("k", std::to_string(a.k));
    doc.set_parameter("alpha", format15(a.alpha));
    doc.set_parameter("beta", format15(a.beta));
    doc.set_parameter("x", format15(a.x));
    doc.add_value("P k=" + std::to_string(a.k), jacobi_normalized({a.k, a.alpha, a.beta}, a.x));
  } else if (a.what == "harmonic") {
    const DiskIndex idx(a.m, a.n, a.q);
    const ComplexPoint z(parse_complex_list(a.point));
    if (static_cast<int>(z.dim()) != a.q) throw ParameterError("eval: --point must have q coordinates");
    doc.set_parameter("m", std::to_string(a.m));
    doc.set_parameter("n", std::to_string(a.n));
    doc.set_parameter("q", std::to_string(a.q));
    doc.set_parameter("point", a.point);
    const HarmonicBasis onb = orthonormal_harmonic_basis(idx);
    for (std::size_t j = 0; j < onb.elements.size(); ++j)
      doc.add_value("Y_" + std::to_string(j + 1) + " " + idx_label(a.m, a.n, a.q), poly_eval(onb.elements[j], z));
  } else {
    throw ParameterError("eval: --what must be disk, jacobi or harmonic");
  }
  return doc;
}

ReportDocument cmd_eigenvalue(const EigenvalueArgs& a) {
  const KernelSpec k = KernelSpec::parse(a.kernel);
  const DiskIndex idx(a.m, a.n, a.q);
  if (a.route != "disk" && a.route != "cylinder" && a.route != "both")
    throw ParameterError("eigenvalue: --route must be disk, cylinder or both");
  ReportDocument doc("eigenvalue");
  doc.set_parameter("kernel", k.to_string());
  doc.set_parameter("m", std::to_string(a.m));
  doc.set_parameter("n", std::to_string(a.n));
  doc.set_parameter("q", std::to_string(a.q));
  doc.set_parameter("route", a.route);
  std::optional<Eigenvalue> disk, cyl;
  if (a.route != "cylinder") {
    disk = eigenvalue(k, idx, Route::disk);
    doc.add_quadrature("disk: " + disk->rule_meta);
    doc.add_value("lambda disk " + idx_label(a.m, a.n, a.q), disk->value);
  }
  if (a.route != "disk") {
    cyl = eigenvalue(k, idx, Route::cylinder);
    doc.add_quadrature("cylinder: " + cyl->rule_meta);
    doc.add_value("Lambda cylinder " + idx_label(a.m, a.n, a.q), cyl->value);
  }
  if (disk && cyl) {
    doc.set_tolerance("route", kRouteTolerance);
    doc.add_check("cross-route " + idx_label(a.m, a.n, a.q), cyl->value, disk->value, kRouteTolerance,
                  1.0 + std::abs(disk->value));
  }
  return doc;
}

ReportDocument cmd_verify(const VerifyArgs& a) {
  ReportDocument doc("verify");
  doc.set_parameter("suite", a.suite);
  doc.set_parameter("q", std::to_string(a.q));
  doc.set_parameter("max_degree", std::to_string(a.max_degree));
  for (const auto& [key, t] : tolerance_table()) doc.set_tolerance(key, t);
  run_suite(doc, a.suite, a.q, a.max_degree);
  return doc;
}

ReportDocument cmd_table(const TableArgs& a) {
  if (a.max < 0) throw ParameterError("table: empty index range");
  const int q_hi = a.q_max < 0 ? a.q : a.q_max;
  if (q_hi < a.q) throw ParameterError("table: empty q range");
  if (a.sweep != "eigenvalues" && a.sweep != "dims" && a.sweep != "constants")
    throw ParameterError("table: --sweep must be eigenvalues, dims or constants");
  ReportDocument doc("table");
  doc.set_parameter("sweep", a.sweep);
  doc.set_parameter("q", std::to_string(a.q));
  doc.set_parameter("q_max", std::to_string(q_hi));
  doc.set_parameter("max", std::to_string(a.max));
  std::optional<KernelSpec> k;
  if (a.sweep == "eigenvalues") {
    k = KernelSpec::parse(a.kernel);
    doc.set_parameter("kernel", k->to_string());
  }
  for (int q = a.q; q <= q_hi; ++q) {
    for (int m = 0; m <= a.max; ++m) {
      for (int n = 0; n <= a.max; ++n) {
        const DiskIndex idx(m, n, q);
        const std::string label = idx_label(m, n, q);
        if (a.sweep == "dims") {
          doc.add_check("d " + label, static_cast<double>(harmonic_dim(idx)),
                        static_cast<double>(laplacian_nullspace_dim(idx)), 0.0);
        } else if (a.sweep == "constants") {
          doc.add_value("c " + label, ortho_constant(idx));
        } else {
          doc.add_value("lambda " + label, eigenvalue(*k, idx, Route::disk).value);
        }
      }
    }
  }
  return doc;
}

}  // namespace fhk::cli
