#include "fhk/funk_hecke.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fhk/complex_io.hpp"

namespace fhk {
namespace {

constexpr int kDefaultPolyDegree = 16;
constexpr int kTranscendentalNodes = 64;
constexpr double kRefinementTolerance = 1e-9;
constexpr double kHarmonicPrecondition = 1e-8;
constexpr double kUnitTolerance = 1e-10;

cplx int_power(cplx z, int k) {
  cplx v{1.0, 0.0};
  for (int j = 0; j < k; ++j) v *= z;
  return v;
}

int parse_int(std::string_view s, std::string_view whole) {
  const std::string buf(s);
  char* end = nullptr;
  const long v = std::strtol(buf.c_str(), &end, 10);
  if (buf.empty() || end != buf.c_str() + buf.size() || v < 0 || v > 1000)
    throw ParameterError("malformed kernel '" + std::string(whole) + "'");
  return static_cast<int>(v);
}

std::pair<int, int> parse_pair(std::string_view s, std::string_view whole) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw ParameterError("malformed kernel '" + std::string(whole) + "'");
  return {parse_int(s.substr(0, comma), whole), parse_int(s.substr(comma + 1), whole)};
}

void check_rule(const QuadratureRule& rule, Domain domain, int q) {
  if (rule.domain() != domain)
    throw ParameterError("expected a " + std::string(to_string(domain)) + " rule, got " +
                         std::string(to_string(rule.domain())));
  if (rule.q() != q) throw ParameterError("quadrature rule built for a different q");
}

void check_unit(const ComplexPoint& w, int q) {
  if (static_cast<int>(w.dim()) != q) throw ParameterError("pole has the wrong dimension");
  if (!(std::abs(std::sqrt(norm_sq(w)) - 1.0) <= kUnitTolerance))
    throw DomainError("pole must lie on the unit sphere");
}

std::string describe(const QuadratureRule& r) {
  return std::string(to_string(r.domain())) + " q=" + std::to_string(r.q()) +
         " nodes=" + std::to_string(r.size()) + " exact_degree=" + std::to_string(r.exact_degree());
}

int combined_degree(const KernelSpec& k, const DiskIndex& idx) {
  return std::max(kDefaultPolyDegree, *k.polynomial_degree() + idx.m() + idx.n());
}

std::optional<double> fractional_power(const KernelSpec& k) {
  if (k.kind() != KernelSpec::Kind::power_abs || k.polynomial_degree()) return std::nullopt;
  return k.power();
}

// |z|^{2p} = u^p with u = r^2 is singular at u = 0 for fractional p. The radial
// rule absorbs u^p into a Gauss-Jacobi weight (beta = p); the rest is smooth.
cplx adapted_disk_eigenvalue(const KernelSpec& k, const DiskIndex& idx, double p, int n) {
  const int q = idx.q();
  const GaussRule g = gauss_jacobi(n, q - 2.0, p);
  const double scale = std::pow(2.0, -p - q + 1) * (q - 1) / static_cast<double>(n);
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double u = 0.5 * (1.0 + g.nodes[i]);
    const double r = std::sqrt(u);
    cplx ring{0.0, 0.0};
    for (int a = 0; a < n; ++a) {
      const cplx z = std::polar(r, 2.0 * pi * a / n);
      ring += k.evaluate(z, q) * std::conj(disk_poly(idx, z));
    }
    sum += g.weights[i] * std::pow(u, -p) * ring;
  }
  return sphere_area(q) * scale * sum;
}

// On the cylinder |zeta|^{2p} = (1-s)^p (1+s)^p with s = ||eta||; (1-s)^p goes
// into the Jacobi weight (alpha = p) and s^{2q-3} is the polar factor of B_q.
cplx adapted_cylinder_eigenvalue(const KernelSpec& k, const DiskIndex& idx, double p, int n) {
  const int q = idx.q();
  const GaussRule g = gauss_jacobi(n, p, 2.0 * q - 3.0);
  const double scale = std::pow(2.0, -p - 2 * q + 2) * sphere_area(q - 1) * 2.0 * pi / n;
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double s = 0.5 * (1.0 + g.nodes[i]);
    const double rho = std::sqrt((1.0 - s) * (1.0 + s));
    cplx ring{0.0, 0.0};
    for (int a = 0; a < n; ++a) {
      const cplx zeta = std::polar(rho, 2.0 * pi * a / n);
      ring += k.evaluate(zeta, q) * std::conj(disk_poly(idx, zeta));
    }
    sum += g.weights[i] * std::pow(1.0 - s, -p) * ring;
  }
  return scale * sum;
}

}  // namespace

KernelSpec KernelSpec::constant(cplx c) { return {Kind::constant, c, 0, 0, 0.0}; }

KernelSpec KernelSpec::monomial(int a, int b) {
  if (a < 0 || b < 0) throw ParameterError("monomial kernel: exponents must be nonnegative");
  return {Kind::monomial, {}, a, b, 0.0};
}

KernelSpec KernelSpec::disk_poly(int m, int n) {
  if (m < 0 || n < 0) throw ParameterError("disk kernel: indices must be nonnegative");
  return {Kind::disk_poly, {}, m, n, 0.0};
}

KernelSpec KernelSpec::exp_re() { return {Kind::exp_re, {}, 0, 0, 0.0}; }

KernelSpec KernelSpec::power_abs(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw ParameterError("absp kernel: p must be >= 0");
  return {Kind::power_abs, {}, 0, 0, p};
}

KernelSpec KernelSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_args = colon != std::string_view::npos;
  if (head == "expre" && !has_args) return exp_re();
  if (head == "const" && has_args) return constant(parse_complex(args));
  if (head == "mono" && has_args) {
    const auto [a, b] = parse_pair(args, text);
    return monomial(a, b);
  }
  if (head == "disk" && has_args) {
    const auto [m, n] = parse_pair(args, text);
    return disk_poly(m, n);
  }
  if (head == "absp" && has_args) {
    const std::string buf(args);
    char* end = nullptr;
    const double p = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size()) throw ParameterError("malformed kernel '" + std::string(text) + "'");
    return power_abs(p);
  }
  throw ParameterError("unknown kernel '" + std::string(text) + "'");
}

std::string KernelSpec::to_string() const {
  switch (kind_) {
    case Kind::constant: return "const:" + format_complex(c_);
    case Kind::monomial: return "mono:" + std::to_string(a_) + "," + std::to_string(b_);
    case Kind::disk_poly: return "disk:" + std::to_string(a_) + "," + std::to_string(b_);
    case Kind::exp_re: return "expre";
    case Kind::power_abs: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", p_);
      return std::string("absp:") + buf;
    }
  }
  return "?";
}

cplx KernelSpec::evaluate(cplx z, int q) const {
  switch (kind_) {
    case Kind::constant: return c_;
    case Kind::monomial: return int_power(z, a_) * int_power(std::conj(z), b_);
    case Kind::disk_poly: return fhk::disk_poly(DiskIndex(a_, b_, q), z);
    case Kind::exp_re: return std::exp(z.real());
    case Kind::power_abs: return p_ == 0.0 ? 1.0 : std::pow(std::norm(z), p_);
  }
  return {};
}

std::optional<int> KernelSpec::polynomial_degree() const {
  switch (kind_) {
    case Kind::constant: return 0;
    case Kind::monomial:
    case Kind::disk_poly: return a_ + b_;
    case Kind::exp_re: return std::nullopt;
    case Kind::power_abs:
      if (p_ == std::floor(p_) && p_ <= 500.0) return static_cast<int>(2 * p_);
      return std::nullopt;
  }
  return std::nullopt;
}

KernelSpec KernelSpec::conjugate() const {
  switch (kind_) {
    case Kind::constant: return constant(std::conj(c_));
    case Kind::monomial: return monomial(b_, a_);
    case Kind::disk_poly: return disk_poly(b_, a_);
    case Kind::exp_re:
    case Kind::power_abs: return *this;
  }
  return *this;
}

std::string_view to_string(Route r) { return r == Route::disk ? "disk" : "cylinder"; }

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::KzwYbar: return "KzwYbar";
    case Variant::KzwY: return "KzwY";
    case Variant::KwzY: return "KwzY";
    case Variant::KwzYbar: return "KwzYbar";
  }
  return "?";
}

std::string_view to_string(BizonalMethod m) {
  switch (m) {
    case BizonalMethod::sphere: return "sphere";
    case BizonalMethod::disk: return "disk";
    case BizonalMethod::cylinder: return "cylinder";
    case BizonalMethod::radial: return "radial";
  }
  return "?";
}

cplx eigenvalue_disk(const ScalarKernel& k, const DiskIndex& idx, const QuadratureRule& rule) {
  check_rule(rule, Domain::disk_nu, idx.q());
  const cplx s = integrate([&](std::span<const cplx> z) { return k(z[0]) * std::conj(disk_poly(idx, z[0])); },
                           rule);
  return sphere_area(idx.q()) * s;
}

Eigenvalue eigenvalue_disk(const KernelSpec& k, const DiskIndex& idx, const QuadratureRule& rule) {
  const int q = idx.q();
  const cplx v = eigenvalue_disk([&](cplx z) { return k.evaluate(z, q); }, idx, rule);
  return {idx, v, Route::disk, describe(rule)};
}

cplx eigenvalue_cylinder(const ScalarKernel& k, const DiskIndex& idx, const QuadratureRule& rule) {
  check_rule(rule, Domain::cylinder, idx.q());
  return integrate(
      [&](std::span<const cplx> node) {
        const cplx zeta = cylinder_disk_argument(node);
        return k(zeta) * std::conj(disk_poly(idx, zeta));
      },
      rule);
}

Eigenvalue eigenvalue_cylinder(const KernelSpec& k, const DiskIndex& idx, const QuadratureRule& rule) {
  const int q = idx.q();
  const cplx v = eigenvalue_cylinder([&](cplx z) { return k.evaluate(z, q); }, idx, rule);
  return {idx, v, Route::cylinder, describe(rule)};
}

QuadratureRule default_disk_rule(const KernelSpec& k, const DiskIndex& idx) {
  if (!k.polynomial_degree()) return disk_rule_nu(idx.q(), kTranscendentalNodes, kTranscendentalNodes);
  const int total = combined_degree(k, idx);
  return disk_rule_nu(idx.q(), (total / 2 + 2) / 2, total + 1);
}

QuadratureRule default_cylinder_rule(const KernelSpec& k, const DiskIndex& idx) {
  if (!k.polynomial_degree())
    return cylinder_rule_sized(idx.q(), kTranscendentalNodes, kTranscendentalNodes, 0);
  const int total = combined_degree(k, idx);
  return cylinder_rule_sized(idx.q(), total + 1, total / 2 + 1, 0);
}

Eigenvalue eigenvalue(const KernelSpec& k, const DiskIndex& idx, Route route) {
  if (k.polynomial_degree())
    return route == Route::disk ? eigenvalue_disk(k, idx, default_disk_rule(k, idx))
                                : eigenvalue_cylinder(k, idx, default_cylinder_rule(k, idx));

  const std::optional<double> p = fractional_power(k);
  auto run = [&](int nodes) -> Eigenvalue {
    if (p) {
      const cplx v = route == Route::disk ? adapted_disk_eigenvalue(k, idx, *p, nodes)
                                          : adapted_cylinder_eigenvalue(k, idx, *p, nodes);
      return {idx, v, route,
              std::string(route == Route::disk ? "disk_nu" : "cylinder") + " q=" + std::to_string(idx.q()) +
                  " gauss-jacobi-adapted p=" + k.to_string().substr(5) + " nodes=" + std::to_string(nodes) + "x" +
                  std::to_string(nodes)};
    }
    return route == Route::disk ? eigenvalue_disk(k, idx, disk_rule_nu(idx.q(), nodes, nodes))
                                : eigenvalue_cylinder(k, idx, cylinder_rule_sized(idx.q(), nodes, nodes, 0));
  };
  const Eigenvalue coarse = run(kTranscendentalNodes);
  Eigenvalue fine = run(2 * kTranscendentalNodes);
  const double change = std::abs(fine.value - coarse.value);
  if (change > kRefinementTolerance * (1.0 + std::abs(fine.value)))
    throw ConsistencyError("eigenvalue: quadrature refinement did not converge for " + k.to_string());
  char buf[64];
  std::snprintf(buf, sizeof buf, " refinement_change=%.3g", change);
  fine.rule_meta += buf;
  return fine;
}

std::pair<int, int> harmonic_bidegree(const PolyZZbar& y) {
  const auto bd = y.bidegree();
  if (!bd) throw PreconditionError("Y must be a nonzero bi-homogeneous polynomial");
  if (laplacian_residual(y) > kHarmonicPrecondition) throw PreconditionError("Y is not harmonic");
  return *bd;
}

cplx apply_funk_hecke(const KernelSpec& k, const PolyZZbar& y, const ComplexPoint& w, Variant variant,
                      const QuadratureRule& sphere) {
  check_rule(sphere, Domain::sphere, y.q());
  check_unit(w, y.q());
  harmonic_bidegree(y);
  const int q = y.q();
  const PolyEvaluator eval(y);
  const bool kernel_zw = variant == Variant::KzwYbar || variant == Variant::KzwY;
  const bool conj_y = variant == Variant::KzwYbar || variant == Variant::KwzYbar;
  return integrate(
      [&](std::span<const cplx> z) {
        const cplx zw = inner(z, w);
        const cplx kv = k.evaluate(kernel_zw ? zw : std::conj(zw), q);
        const cplx yv = eval(z);
        return kv * (conj_y ? std::conj(yv) : yv);
      },
      sphere);
}

cplx funk_hecke_prediction(Variant variant, cplx lambda_mn, cplx lambda_nm, cplx y_at_w) {
  switch (variant) {
    case Variant::KzwYbar: return lambda_mn * std::conj(y_at_w);
    case Variant::KzwY: return lambda_nm * y_at_w;
    case Variant::KwzY: return lambda_mn * y_at_w;
    case Variant::KwzYbar: return lambda_nm * std::conj(y_at_w);
  }
  return {};
}

ComplexPoint default_pole(int q) {
  if (q < 1) throw ParameterError("default_pole: q must be >= 1");
  ComplexPoint w(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) w[j] = cplx(1.0 + 0.5 * j, 0.25 * (j % 3) - 0.3);
  const double nrm = std::sqrt(norm_sq(w));
  for (int j = 0; j < q; ++j) w[j] /= nrm;
  return w;
}

cplx bizonal_sphere_integral(const KernelSpec& k, int q, BizonalMethod method, std::optional<ComplexPoint> w) {
  if (q < 2) throw ParameterError("bizonal_sphere_integral: q must be >= 2");
  const DiskIndex zero(0, 0, q);
  switch (method) {
    case BizonalMethod::sphere: {
      const ComplexPoint pole = w ? *w : default_pole(q);
      check_unit(pole, q);
      const auto deg = k.polynomial_degree();
      const int degree = deg ? std::max(*deg, 1) : (q <= 3 ? 14 : 10);
      const QuadratureRule rule = sphere_rule(q, degree);
      return integrate([&](std::span<const cplx> z) { return k.evaluate(inner(z, pole), q); }, rule);
    }
    case BizonalMethod::disk:
      return eigenvalue(k, zero, Route::disk).value;
    case BizonalMethod::cylinder:
      return eigenvalue(k, zero, Route::cylinder).value;
    case BizonalMethod::radial: {
      const auto deg = k.polynomial_degree();
      const int n_t = deg ? (*deg + 2 * q) / 2 + 1 : 48;
      const int n_angle = deg ? *deg + 1 : 64;
      const GaussRule gl = gauss_legendre_unit(n_t);
      const QuadratureRule circle = circle_rule(n_angle);
      std::vector<cplx> nodes;
      std::vector<double> weights;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double t = gl.nodes[i];
        const double wt = gl.weights[i] * t * std::pow(1.0 - t * t, q - 2);
        if (!(wt > 0.0)) continue;
        for (std::size_t a = 0; a < circle.size(); ++a) {
          nodes.push_back(t * circle.node(a)[0]);
          weights.push_back(wt * circle.weights()[a]);
        }
      }
      const double mass = 2.0 * pi / (2.0 * (q - 1));
      const QuadratureRule rule(Domain::disk_nu, q, 1, n_angle - 1, mass, std::move(nodes), std::move(weights));
      return sphere_area(q - 1) * integrate([&](std::span<const cplx> z) { return k.evaluate(z[0], q); }, rule);
    }
  }
  return {};
}

TwoRouteResult ball_zonal_integral(const ScalarKernel& k, const ComplexPoint& w, int q, int degree) {
  if (q < 1) throw ParameterError("ball_zonal_integral: q must be >= 1");
  if (static_cast<int>(w.dim()) != q) throw ParameterError("ball_zonal_integral: w must lie in C^q");
  if (std::sqrt(norm_sq(w)) > 1.0 + 1e-12) throw DomainError("ball_zonal_integral: w must lie in the closed ball");

  const QuadratureRule ball = ball_rule(q, degree);
  const cplx lhs = integrate([&](std::span<const cplx> eta) { return k(inner(eta, w)); }, ball);

  const QuadratureRule sphere = sphere_rule(q, degree);
  const GaussRule gl = gauss_legendre_unit((degree + 2 * q) / 2 + 1);
  std::vector<cplx> shell(gl.nodes.size());
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double r = gl.nodes[i];
    shell[i] = integrate([&](std::span<const cplx> z) { return k(r * inner(z, w)); }, sphere) *
               (gl.weights[i] * std::pow(r, 2 * q - 1));
  }
  cplx rhs{0.0, 0.0};
  for (const cplx& s : shell) rhs += s;
  return {lhs, rhs, std::abs(lhs - rhs)};
}

TwoRouteResult ball_radial_integral(const std::function<double(double)>& k, int q, int degree) {
  if (q < 1) throw ParameterError("ball_radial_integral: q must be >= 1");
  const QuadratureRule ball = ball_rule(q, degree);
  const cplx lhs = integrate([&](std::span<const cplx> eta) { return cplx(k(std::sqrt(norm_sq(eta)))); }, ball);
  const GaussRule gl = gauss_legendre_unit((degree + 2 * q) / 2 + 1);
  double rhs = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i)
    rhs += gl.weights[i] * k(gl.nodes[i]) * std::pow(gl.nodes[i], 2 * q - 1);
  rhs *= sphere_area(q);
  return {lhs, rhs, std::abs(lhs - rhs)};
}

double real_funk_hecke_eigenvalue(const std::function<double(double)>& k, int n, int q_real, int nodes) {
  if (q_real < 2) throw ParameterError("real_funk_hecke_eigenvalue: q must be >= 2");
  if (n < 0) throw ParameterError("real_funk_hecke_eigenvalue: negative degree");
  const double a = (q_real - 3) / 2.0;
  const GaussRule g = gauss_jacobi(nodes, a, a);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    s += g.weights[i] * k(g.nodes[i]) * jacobi_normalized({n, a, a}, g.nodes[i]);
  const double half = (q_real - 1) / 2.0;
  return 2.0 * std::pow(pi, half) / std::tgamma(half) * s;
}

OrthogonalityCheck cylinder_orthogonality_check(int mu, int nu, int m, int n, int q,
                                                const QuadratureRule& cylinder) {
  check_rule(cylinder, Domain::cylinder, q);
  const DiskIndex left(mu, nu, q), right(m, n, q);
  OrthogonalityCheck out{};
  out.value = integrate(
      [&](std::span<const cplx> node) {
        const cplx zeta = cylinder_disk_argument(node);
        return disk_poly(left, zeta) * std::conj(disk_poly(right, zeta));
      },
      cylinder);
  const double c = ortho_constant(right);
  const bool same = mu == m && nu == n;
  out.expected = same ? c : 0.0;

  const QuadratureRule ball = ball_rule_sized(q - 1, (mu + nu + m + n) / 2 + 2, 0);
  out.reduced_value = integrate(
      [&](std::span<const cplx> eta) {
        const double s = std::sqrt(norm_sq(eta));
        const cplx h = s >= 1.0 ? 0.0 : std::sqrt((1.0 - s) * (1.0 + s));
        return disk_poly(left, h) * std::conj(disk_poly(right, h));
      },
      ball);
  if (mu - nu == m - n) out.reduced_expected = same ? c / (2.0 * pi) : 0.0;
  return out;
}

}  // namespace fhk
