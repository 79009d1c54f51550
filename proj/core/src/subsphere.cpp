#include "fhk/subsphere.hpp"

#include <algorithm>
#include <cmath>

#include "fhk/special_poly.hpp"

namespace fhk {
namespace {

constexpr double kUnitTolerance = 1e-10;
constexpr double kGammaSlack = 1e-12;
constexpr double kParallelTolerance = 1e-12;

// (1 - |gamma|^2)^{(2q-3)/2}
double radial_factor(cplx gamma, int q) {
  const double g2 = std::norm(gamma);
  if (g2 >= 1.0) return 0.0;
  return std::exp((q - 1.5) * std::log1p(-g2));
}

}  // namespace

SubsphereSpec::SubsphereSpec(ComplexPoint w, cplx gamma) : w_(std::move(w)), gamma_(gamma) {
  if (w_.dim() < 2) throw ParameterError("subsphere: q must be >= 2");
  if (!(std::abs(std::sqrt(norm_sq(w_)) - 1.0) <= kUnitTolerance))
    throw DomainError("subsphere: pole must lie on the unit sphere");
  if (!(std::abs(gamma_) <= 1.0 + kGammaSlack)) throw DomainError("subsphere: |gamma| must be <= 1");
}

double SubsphereSpec::radius() const noexcept {
  const double g2 = std::norm(gamma_);
  return g2 >= 1.0 ? 0.0 : std::sqrt(1.0 - g2);
}

Decomposition decompose_point(const ComplexPoint& z, const SubsphereSpec& spec) {
  if (spec.degenerate()) throw DegeneracyError("decompose_point: |gamma| = 1 leaves a single point");
  const int q = spec.q();
  if (static_cast<int>(z.dim()) != q) throw ParameterError("decompose_point: dimension mismatch");
  if (!(std::abs(std::sqrt(norm_sq(z)) - 1.0) <= kUnitTolerance))
    throw DomainError("decompose_point: z must lie on the unit sphere");

  const ComplexPoint& w = spec.pole();
  const cplx tz = inner(z, w);
  ComplexPoint u(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) u[j] = z[j] - tz * w[j];
  const double s = std::sqrt(norm_sq(u));

  if (s < kParallelTolerance) {
    const QuadratureRule rule = subsphere_rule(spec, 0);
    return {tz / std::abs(tz), ComplexPoint(rule.node(0))};
  }
  const double rho = spec.radius();
  ComplexPoint zp(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) zp[j] = spec.gamma() * w[j] + rho * u[j] / s;
  return {tz, std::move(zp)};
}

double reconstruction_residual(const ComplexPoint& z, const Decomposition& d, const SubsphereSpec& spec) {
  const double rho = spec.radius();
  const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(d.t_e_itheta)));
  const cplx a = d.t_e_itheta - spec.gamma() * s / rho;
  const double b = s / rho;
  double worst = 0.0;
  for (std::size_t j = 0; j < z.dim(); ++j)
    worst = std::max(worst, std::abs(a * spec.pole()[j] + b * d.zprime[j] - z[j]));
  return worst;
}

double subsphere_measure(const SubsphereSpec& spec) {
  return sphere_area(spec.q() - 1) * radial_factor(spec.gamma(), spec.q());
}

QuadratureRule subsphere_rule(const SubsphereSpec& spec, int degree, const std::optional<UnitaryFrame>& frame) {
  if (spec.degenerate()) throw DegeneracyError("subsphere_rule: |gamma| >= 1 has no interior nodes");
  const int q = spec.q();
  const UnitaryFrame u = frame ? *frame : frame_from_pole(spec.pole());
  if (u.q() != q) throw ParameterError("subsphere_rule: frame dimension mismatch");

  const QuadratureRule inner_rule = sphere_rule(q - 1, degree);
  const double rho = spec.radius();
  const double scale = radial_factor(spec.gamma(), q);
  const ComplexPoint& w = spec.pole();

  std::vector<cplx> nodes;
  nodes.reserve(inner_rule.size() * static_cast<std::size_t>(q));
  std::vector<double> weights;
  weights.reserve(inner_rule.size());
  std::vector<cplx> padded(static_cast<std::size_t>(q));
  std::vector<cplx> image(static_cast<std::size_t>(q));
  for (std::size_t i = 0; i < inner_rule.size(); ++i) {
    const auto zpp = inner_rule.node(i);
    std::copy(zpp.begin(), zpp.end(), padded.begin());
    padded.back() = 0.0;
    u.apply(padded, image);
    for (int j = 0; j < q; ++j) nodes.push_back(spec.gamma() * w[j] + rho * image[j]);
    weights.push_back(inner_rule.weights()[i] * scale);
  }
  return QuadratureRule(Domain::subsphere, q, q, inner_rule.exact_degree(), subsphere_measure(spec),
                        std::move(nodes), std::move(weights));
}

cplx upsilon(const KernelSpec& k, const DiskIndex& idx, cplx gamma) {
  if (!(std::abs(gamma) <= 1.0 + kGammaSlack)) throw DomainError("upsilon: |gamma| must be <= 1");
  const int q = idx.q();
  const double factor = radial_factor(gamma, q);
  if (factor == 0.0) return 0.0;
  return sphere_area(q - 1) * factor * k.evaluate(gamma, q) * std::conj(disk_poly(idx, gamma));
}

double subsphere_funk_hecke_residual(const KernelSpec& k, const PolyZZbar& y, const SubsphereSpec& spec,
                                     int degree) {
  const auto [m, n] = harmonic_bidegree(y);
  if (y.q() != spec.q()) throw ParameterError("subsphere: Y lives in a different dimension");
  const QuadratureRule rule = subsphere_rule(spec, degree);
  const PolyEvaluator eval(y);
  const ComplexPoint& w = spec.pole();
  const int q = spec.q();
  const cplx lhs = integrate(
      [&](std::span<const cplx> z) { return k.evaluate(inner(z, w), q) * std::conj(eval(z)); }, rule);
  const cplx rhs = upsilon(k, DiskIndex(m, n, q), spec.gamma()) * std::conj(eval(w));
  return std::abs(lhs - rhs);
}

MeanValue mean_value(const PolyZZbar& y, const SubsphereSpec& spec, int degree) {
  const auto [m, n] = harmonic_bidegree(y);
  if (y.q() != spec.q()) throw ParameterError("subsphere: Y lives in a different dimension");
  const QuadratureRule rule = subsphere_rule(spec, degree);
  const PolyEvaluator eval(y);
  const cplx integral = integrate([&](std::span<const cplx> z) { return eval(z); }, rule);
  const cplx predicted =
      subsphere_measure(spec) * disk_poly(DiskIndex(m, n, spec.q()), spec.gamma()) * eval(spec.pole());
  return {integral, predicted};
}

}  // namespace fhk
