#include "battery.hpp"

#include <cmath>

namespace fhk::cli {
namespace {

cplx zb(cplx z) { return std::conj(z); }

// Coordinate k (1-based, wrapping) of z.
cplx c(std::span<const cplx> z, int k) { return z[static_cast<std::size_t>((k - 1) % static_cast<int>(z.size()))]; }

}  // namespace

cplx Sampler::disk_point() {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::sqrt(u(gen_));
  return std::polar(r, angle());
}

ComplexPoint Sampler::sphere_point(int q) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexPoint p(static_cast<std::size_t>(q));
  double s = 0.0;
  do {
    for (int j = 0; j < q; ++j) p[j] = cplx(g(gen_), g(gen_));
    s = std::sqrt(norm_sq(p));
  } while (s < 1e-8);
  for (int j = 0; j < q; ++j) p[j] /= s;
  return p;
}

double Sampler::angle() {
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  return u(gen_);
}

int transcendental_degree(int q) { return q <= 2 ? 20 : (q == 3 ? 14 : 10); }

std::vector<TestFunction> sphere_battery(int q) {
  using Z = std::span<const cplx>;
  const int n = q;
  std::vector<TestFunction> b;
  b.push_back({"one", 0, [](Z) { return cplx(1.0); }});
  b.push_back({"z1", 1, [](Z z) { return c(z, 1); }});
  b.push_back({"|z1|^2", 2, [](Z z) { return std::norm(c(z, 1)); }});
  b.push_back({"|zq|^2", 2, [n](Z z) { return std::norm(c(z, n)); }});
  b.push_back({"z1*conj(zq)", 2, [n](Z z) { return c(z, 1) * zb(c(z, n)); }});
  b.push_back({"z1^2*conj(z2)^2", 4, [](Z z) { return c(z, 1) * c(z, 1) * zb(c(z, 2)) * zb(c(z, 2)); }});
  b.push_back({"|z1|^2|z2|^2", 4, [](Z z) { return std::norm(c(z, 1)) * std::norm(c(z, 2)); }});
  b.push_back({"|z1|^4", 4, [](Z z) { return std::norm(c(z, 1)) * std::norm(c(z, 1)); }});
  b.push_back({"|zq|^6", 6, [n](Z z) { return std::pow(std::norm(c(z, n)), 3); }});
  b.push_back({"(Re z1)^4", 4, [](Z z) { return std::pow(c(z, 1).real(), 4); }});
  b.push_back({"(Im z2)^2 Re zq", 3, [n](Z z) { return std::pow(c(z, 2).imag(), 2) * c(z, n).real(); }});
  b.push_back({"|<z,a>|^4", 4, [](Z z) {
                 cplx s = 0.0;
                 for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * cplx(0.5 + 0.1 * j, -0.2 * j);
                 return cplx(std::norm(s) * std::norm(s));
               }});
  b.push_back({"(1+z1+conj(z2))^3", 3, [](Z z) { return std::pow(1.0 + c(z, 1) + zb(c(z, 2)), 3); }});
  b.push_back({"||z||^4", 4, [](Z z) { return cplx(norm_sq(z) * norm_sq(z)); }});
  b.push_back({"z1 conj(z1) z2 conj(zq)", 4, [n](Z z) { return std::norm(c(z, 1)) * c(z, 2) * zb(c(z, n)); }});
  b.push_back({"|z1|^2-|z2|^2", 2, [](Z z) { return cplx(std::norm(c(z, 1)) - std::norm(c(z, 2))); }});
  b.push_back({"zq^3", 3, [n](Z z) { return std::pow(c(z, n), 3); }});
  b.push_back({"|z2|^2 |zq|^4", 6, [n](Z z) { return std::norm(c(z, 2)) * std::pow(std::norm(c(z, n)), 2); }});
  b.push_back({"sum_j j|z_j|^2", 2, [](Z z) {
                 double s = 0.0;
                 for (std::size_t j = 0; j < z.size(); ++j) s += (j + 1.0) * std::norm(z[j]);
                 return cplx(s);
               }});
  b.push_back({"(z1+zq)^2 conj(z1+zq)^2", 4, [n](Z z) { return cplx(std::pow(std::norm(c(z, 1) + c(z, n)), 2)); }});

  b.push_back({"exp(Re z1/2)", std::nullopt, [](Z z) { return cplx(std::exp(0.5 * c(z, 1).real())); }});
  b.push_back({"cos(Im zq/2)", std::nullopt, [n](Z z) { return cplx(std::cos(0.5 * c(z, n).imag())); }});
  b.push_back({"exp(i Re(z1 conj(zq))/2)", std::nullopt,
               [n](Z z) { return std::exp(cplx(0.0, 0.5 * (c(z, 1) * zb(c(z, n))).real())); }});
  b.push_back({"sin(Re z1/2 + 0.3 Im z2)", std::nullopt,
               [](Z z) { return cplx(std::sin(0.5 * c(z, 1).real() + 0.3 * c(z, 2).imag())); }});
  b.push_back({"exp(z1/2)|z2|^2", std::nullopt, [](Z z) { return std::exp(0.5 * c(z, 1)) * std::norm(c(z, 2)); }});
  return b;
}

std::vector<KernelSpec> builtin_kernels() {
  return {KernelSpec::constant(cplx(1.0, 0.5)), KernelSpec::monomial(2, 1), KernelSpec::disk_poly(1, 2),
          KernelSpec::exp_re(), KernelSpec::power_abs(1.0)};
}

std::vector<std::pair<std::string, ComplexPoint>> standard_poles(int q) {
  return {{"eps_q", ComplexPoint::unit(q, q - 1)}, {"eps_1", ComplexPoint::unit(q, 0)}, {"generic", default_pole(q)}};
}

}  // namespace fhk::cli
