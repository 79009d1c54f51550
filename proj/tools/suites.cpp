#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "battery.hpp"
#include "fhk/funk_hecke.hpp"
#include "fhk/harmonics.hpp"
#include "fhk/special_poly.hpp"
#include "fhk/subsphere.hpp"

namespace fhk::cli {
namespace {

std::string tag(const char* suite, int q) { return std::string(suite) + " q=" + std::to_string(q); }

std::string mn(int m, int n) { return " m=" + std::to_string(m) + " n=" + std::to_string(n); }

double tol(const std::string& key) { return tolerance_table().at(key); }

void lemma21(ReportDocument& doc, int q, int d) {
  for (int m = 0; m <= d; ++m) {
    for (int n = 0; n <= d; ++n) {
      const DiskIndex idx(m, n, q);
      Sampler s(1000 + 64 * m + n);
      double equi = 0.0, bound = 0.0, conj = 0.0, swap = 0.0;
      for (int i = 0; i < 200; ++i) {
        const cplx z = s.disk_point();
        const double th = s.angle();
        const cplx r = disk_poly(idx, z);
        equi = std::max(equi, std::abs(disk_poly(idx, std::polar(1.0, th) * z) -
                                       std::polar(1.0, (m - n) * th) * r));
        bound = std::max(bound, std::abs(r) - 1.0);
        conj = std::max(conj, std::abs(disk_poly(idx, std::conj(z)) - std::conj(r)));
        swap = std::max(swap, std::abs(disk_poly(idx.swapped(), z) - std::conj(r)));
      }
      const std::string base = tag("lemma21", q) + mn(m, n);
      const double t = tol("lemma21");
      doc.add_residual(base + " equivariance", equi, t);
      doc.add_residual(base + " bound", std::max(bound, 0.0), t);
      doc.add_residual(base + " conjugation", conj, t);
      doc.add_residual(base + " swap", swap, t);
      doc.add_check(base + " R(1)", disk_poly(idx, 1.0), 1.0, t);
    }
  }
}

void addition(ReportDocument& doc, int q, int d) {
  for (int m = 0; m <= d; ++m) {
    for (int n = 0; n <= d; ++n) {
      const DiskIndex idx(m, n, q);
      const HarmonicBasis onb = orthonormal_harmonic_basis(idx);
      Sampler s(2000 + 64 * m + n);
      double worst = 0.0;
      for (int i = 0; i < 20; ++i) {
        const ComplexPoint z = s.sphere_point(q), w = s.sphere_point(q);
        worst = std::max(worst, addition_formula_residual(idx, onb, z, w));
      }
      const ComplexPoint z = s.sphere_point(q);
      const std::string base = tag("addition", q) + mn(m, n);
      doc.add_residual(base + " random pairs", worst, tol("addition"));
      doc.add_residual(base + " z=w", addition_formula_residual(idx, onb, z, z), tol("addition"));
      doc.add_residual(base + " gram", onb.gram_residual, tol("addition.gram"));
    }
  }
}

void theorem24(ReportDocument& doc, int q, int) {
  const auto battery = sphere_battery(q);
  const auto poles = standard_poles(q);
  for (const auto& tf : battery) {
    const int degree = tf.degree ? std::max(*tf.degree, 1) : transcendental_degree(q);
    const QuadratureRule sphere = sphere_rule(q, degree);
    const QuadratureRule cyl = cylinder_rule(q, degree);
    const cplx direct = integrate(tf.f, sphere);
    // |f| is not a polynomial; a coarse rule can sample it only at its zeros.
    const QuadratureRule scale_rule = degree < 8 ? sphere_rule(q, 8) : sphere;
    const double scale = std::max(
        std::abs(direct), integrate([&](std::span<const cplx> z) { return cplx(std::abs(tf.f(z))); }, scale_rule).real());
    for (const auto& [name, w] : poles) {
      const cplx route = cylinder_route_integral(tf.f, frame_from_pole(w), cyl);
      doc.add_check(tag("theorem24", q) + " f=" + tf.name + " pole=" + name, route, direct, tol("theorem24"),
                    scale);
    }
  }
}

void funkhecke(ReportDocument& doc, int q, int d) {
  const int degree = q <= 2 ? 24 : (q == 3 ? 16 : 10);
  const int max_total = q <= 2 ? 2 * d : std::min(2 * d, 2);
  const QuadratureRule sphere = sphere_rule(q, degree);
  Sampler s(3000 + q);
  const ComplexPoint w1 = s.sphere_point(q), w2 = s.sphere_point(q);
  for (int m = 0; m <= d; ++m) {
    for (int n = 0; n <= d; ++n) {
      if (m + n > max_total) continue;
      const HarmonicBasis onb = orthonormal_harmonic_basis(DiskIndex(m, n, q));
      const PolyZZbar& y = onb.elements.back();
      for (const KernelSpec& k : builtin_kernels()) {
        const cplx lmn = eigenvalue(k, DiskIndex(m, n, q), Route::cylinder).value;
        const cplx lnm = eigenvalue(k, DiskIndex(n, m, q), Route::cylinder).value;
        for (const ComplexPoint* w : {&w1, &w2}) {
          const cplx yw = poly_eval(y, *w);
          for (Variant v : {Variant::KzwYbar, Variant::KzwY, Variant::KwzY, Variant::KwzYbar}) {
            const cplx got = apply_funk_hecke(k, y, *w, v, sphere);
            const cplx want = funk_hecke_prediction(v, lmn, lnm, yw);
            const double scale = 1.0 + std::abs(v == Variant::KzwYbar || v == Variant::KwzY ? lmn : lnm);
            doc.add_check(tag("funkhecke", q) + mn(m, n) + " K=" + k.to_string() + " " + std::string(to_string(v)) +
                              (w == &w1 ? " w1" : " w2"),
                          got, want, tol("funkhecke"), scale);
          }
        }
      }
    }
  }
}

void orthogonality(ReportDocument& doc, int q, int d) {
  const QuadratureRule cyl = cylinder_rule_sized(q, 2 * d + 2, 2 * d + 2, 0);
  for (int mu = 0; mu <= d; ++mu)
    for (int nu = 0; nu <= d; ++nu)
      for (int m = 0; m <= d; ++m)
        for (int n = 0; n <= d; ++n) {
          const OrthogonalityCheck c = cylinder_orthogonality_check(mu, nu, m, n, q, cyl);
          const double scale = ortho_constant(DiskIndex(m, n, q));
          const std::string base = tag("orthogonality", q) + " mu=" + std::to_string(mu) +
                                   " nu=" + std::to_string(nu) + mn(m, n);
          doc.add_check(base + " cylinder", c.value, c.expected, tol("orthogonality"), scale);
          if (c.reduced_expected)
            doc.add_check(base + " reduced", c.reduced_value, *c.reduced_expected, tol("orthogonality"),
                          scale / (2.0 * pi));
        }
}

void prop42(ReportDocument& doc, int q, int) {
  std::vector<KernelSpec> kernels = builtin_kernels();
  kernels.push_back(KernelSpec::monomial(1, 0));
  kernels.push_back(KernelSpec::power_abs(2.0));
  kernels.push_back(KernelSpec::disk_poly(2, 2));
  for (const KernelSpec& k : kernels) {
    const cplx ref = bizonal_sphere_integral(k, q, BizonalMethod::sphere);
    const double scale = std::max(1.0, std::abs(ref));
    for (BizonalMethod m : {BizonalMethod::disk, BizonalMethod::cylinder, BizonalMethod::radial}) {
      doc.add_check(tag("prop42", q) + " K=" + k.to_string() + " " + std::string(to_string(m)) + " vs sphere",
                    bizonal_sphere_integral(k, q, m), ref, tol("prop42"), scale);
    }
    if (k.polynomial_degree() == 0)
      doc.add_check(tag("prop42", q) + " K=" + k.to_string() + " sphere vs mass", ref,
                    k.evaluate(0.0, q) * sphere_area(q), tol("prop42"), scale);
  }
}

void prop43(ReportDocument& doc, int q, int) {
  const ComplexPoint pole = default_pole(q);
  ComplexPoint inner_pt = pole;
  for (std::size_t j = 0; j < inner_pt.dim(); ++j) inner_pt[j] *= 0.6;
  for (const KernelSpec& k : builtin_kernels()) {
    const auto deg = k.polynomial_degree();
    const int degree = deg ? std::max(*deg, 1) : transcendental_degree(q);
    const ScalarKernel f = [&](cplx z) { return k.evaluate(z, q); };
    for (const auto& [name, w] : {std::pair<std::string, ComplexPoint>{"interior", inner_pt}, {"boundary", pole}}) {
      const TwoRouteResult r = ball_zonal_integral(f, w, q, degree);
      doc.add_check(tag("prop43", q) + " K=" + k.to_string() + " w=" + name, r.first, r.second, tol("prop43"),
                    std::max(1.0, std::abs(r.second)));
    }
  }
  const TwoRouteResult one = ball_zonal_integral([](cplx) { return cplx(1.0); }, pole, q, 1);
  doc.add_check(tag("prop43", q) + " K=1 volume", one.first, ball_volume(q), tol("prop43"), ball_volume(q));
  const std::vector<std::pair<std::string, std::function<double(double)>>> radial = {
      {"r", [](double r) { return r; }}, {"r^2", [](double r) { return r * r; }},
      {"exp(r)", [](double r) { return std::exp(r); }}};
  for (const auto& [name, k] : radial) {
    const TwoRouteResult r = ball_radial_integral(k, q, name == "exp(r)" ? transcendental_degree(q) : 4);
    doc.add_check(tag("prop43", q) + " radial K=" + name, r.first, r.second, tol("prop43"),
                  std::max(1.0, std::abs(r.second)));
  }
}

void subsphere(ReportDocument& doc, int q, int d) {
  const ComplexPoint w = default_pole(q);
  const std::vector<cplx> gammas = {0.0, 0.3, cplx(0.6, 0.2), 0.9};
  std::vector<HarmonicBasis> bases;
  for (int m = 0; m <= d; ++m)
    for (int n = 0; n <= d; ++n) bases.push_back(orthonormal_harmonic_basis(DiskIndex(m, n, q)));
  for (const cplx g : gammas) {
    const SubsphereSpec spec(w, g);
    const std::string base = tag("subsphere", q) + " gamma=" + format15(g.real()) + "+" + format15(g.imag()) + "i";
    const QuadratureRule rule = subsphere_rule(spec, 2 * d);
    double norm_dev = 0.0, plane_dev = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      norm_dev = std::max(norm_dev, std::abs(std::sqrt(norm_sq(rule.node(i))) - 1.0));
      plane_dev = std::max(plane_dev, std::abs(inner(rule.node(i), w) - g));
    }
    doc.add_residual(base + " node norm", norm_dev, tol("subsphere.geometry"));
    doc.add_residual(base + " node plane", plane_dev, tol("subsphere.geometry"));
    const double mass = subsphere_measure(spec);
    doc.add_check(base + " mass", rule.weight_sum(), mass, tol("subsphere.geometry"), mass);
    for (int m = 0; m <= d; ++m) {
      for (int n = 0; n <= d; ++n) {
        const PolyZZbar& y = bases[static_cast<std::size_t>(m * (d + 1) + n)].elements.front();
        for (const KernelSpec& k : builtin_kernels()) {
          doc.add_residual(base + mn(m, n) + " K=" + k.to_string() + " funk-hecke",
                           subsphere_funk_hecke_residual(k, y, spec, m + n), tol("subsphere"));
        }
        const MeanValue mv = mean_value(y, spec, m + n);
        doc.add_check(base + mn(m, n) + " mean value", mv.integral, mv.predicted, tol("subsphere"));
      }
    }
  }
  for (const KernelSpec& k : builtin_kernels())
    doc.add_check(tag("subsphere", q) + " gamma=1 K=" + k.to_string() + " upsilon", upsilon(k, DiskIndex(1, 0, q), 1.0),
                  0.0, 0.0);
}

using SuiteFn = void (*)(ReportDocument&, int, int);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"lemma21", lemma21},     {"addition", addition},           {"theorem24", theorem24},
      {"funkhecke", funkhecke}, {"orthogonality", orthogonality}, {"prop42", prop42},
      {"prop43", prop43},       {"subsphere", subsphere}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

const std::map<std::string, double>& tolerance_table() {
  static const std::map<std::string, double> t = {
      {"lemma21", 1e-12},      {"addition", 1e-8},      {"addition.gram", 1e-9}, {"theorem24", 1e-8},
      {"funkhecke", 1e-6},     {"orthogonality", 1e-8}, {"prop42", 1e-8},        {"prop43", 1e-8},
      {"subsphere", 1e-7},     {"subsphere.geometry", 1e-12}};
  return t;
}

void run_suite(ReportDocument& doc, const std::string& suite, int q, int max_degree) {
  if (q < 2) throw ParameterError("verify: q must be >= 2");
  if (max_degree < 0) throw ParameterError("verify: max-degree must be >= 0");
  if (suite == "all") {
    for (const auto& [name, fn] : registry()) fn(doc, q, max_degree);
    return;
  }
  for (const auto& [name, fn] : registry()) {
    if (name == suite) {
      fn(doc, q, max_degree);
      return;
    }
  }
  throw ParameterError("unknown suite '" + suite + "'");
}

}  // namespace fhk::cli
