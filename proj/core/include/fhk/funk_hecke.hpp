#pragma once

// Funk-Hecke eigenvalues of bizonal kernels K(<z,w>) on Omega_{2q}, by the
// disk integral against nu_q and by the cylinder integral, together with
// direct operator application and the derived sphere/disk/ball identities.

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "fhk/harmonics.hpp"
#include "fhk/quadrature.hpp"
#include "fhk/special_poly.hpp"
#include "fhk/types.hpp"

namespace fhk {

/// Built-in kernels K: B_2 -> C.
class KernelSpec {
 public:
  enum class Kind { constant, monomial, disk_poly, exp_re, power_abs };

  static KernelSpec constant(cplx c);
  /// z^a conj(z)^b.
  static KernelSpec monomial(int a, int b);
  /// R_{m,n}^{q-2}; q is taken from the evaluation context.
  static KernelSpec disk_poly(int m, int n);
  /// exp(Re z).
  static KernelSpec exp_re();
  /// |z|^{2p}, p >= 0.
  static KernelSpec power_abs(double p);

  /// Parses `const:<c>`, `mono:<a>,<b>`, `disk:<m>,<n>`, `expre`, `absp:<p>`.
  static KernelSpec parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const noexcept { return kind_; }
  /// Exponent p of a power_abs kernel (0 for the other kinds).
  double power() const noexcept { return p_; }
  cplx evaluate(cplx z, int q) const;

  /// Polynomial degree in (z, conj z), or nullopt for exp_re and fractional p.
  std::optional<int> polynomial_degree() const;

  /// The kernel conj(K(z)), again a built-in.
  KernelSpec conjugate() const;

 private:
  KernelSpec(Kind kind, cplx c, int a, int b, double p) : kind_(kind), c_(c), a_(a), b_(b), p_(p) {}

  Kind kind_;
  cplx c_;
  int a_;
  int b_;
  double p_;
};

using ScalarKernel = std::function<cplx(cplx)>;

enum class Route { disk, cylinder };
std::string_view to_string(Route r);

struct Eigenvalue {
  DiskIndex idx;
  cplx value;
  Route route;
  std::string rule_meta;
};

/// lambda = omega_q * int_{B_2} K conj(R_{m,n}) dnu_q over a disk_nu rule.
Eigenvalue eigenvalue_disk(const KernelSpec& k, const DiskIndex& idx, const QuadratureRule& rule);
cplx eigenvalue_disk(const ScalarKernel& k, const DiskIndex& idx, const QuadratureRule& rule);

/// Lambda = int_0^{2pi} int_{B_q} (K conj R)(sqrt(1-||eta||^2) e^{i theta}) deta dtheta.
Eigenvalue eigenvalue_cylinder(const KernelSpec& k, const DiskIndex& idx, const QuadratureRule& rule);
cplx eigenvalue_cylinder(const ScalarKernel& k, const DiskIndex& idx, const QuadratureRule& rule);

/// Rules exact for polynomial kernels of combined degree >= 16; 64 x 64 for
/// the others.
QuadratureRule default_disk_rule(const KernelSpec& k, const DiskIndex& idx);
QuadratureRule default_cylinder_rule(const KernelSpec& k, const DiskIndex& idx);

/// Eigenvalue on the default rule. Non-polynomial kernels are recomputed at
/// doubled resolution; a change above 1e-9 (relative) throws ConsistencyError.
/// |z|^{2p} with fractional p uses radial Gauss-Jacobi rules whose weight
/// carries the endpoint singularity.
Eigenvalue eigenvalue(const KernelSpec& k, const DiskIndex& idx, Route route);

/// Integrand choice for apply_funk_hecke.
///   KzwYbar: K(<z,w>) conj(Y(z)) -> Lambda_{m,n} conj(Y(w))
///   KzwY:    K(<z,w>) Y(z)       -> Lambda_{n,m} Y(w)
///   KwzY:    K(<w,z>) Y(z)       -> Lambda_{m,n} Y(w)
///   KwzYbar: K(<w,z>) conj(Y(z)) -> Lambda_{n,m} conj(Y(w))
enum class Variant { KzwYbar, KzwY, KwzY, KwzYbar };
std::string_view to_string(Variant v);

/// Bi-degree of a harmonic polynomial; throws PreconditionError if it is not
/// bi-homogeneous or its Laplacian residual exceeds 1e-8.
std::pair<int, int> harmonic_bidegree(const PolyZZbar& y);

/// Sphere quadrature of the selected integrand.
cplx apply_funk_hecke(const KernelSpec& k, const PolyZZbar& y, const ComplexPoint& w, Variant variant,
                      const QuadratureRule& sphere);

/// Right-hand side of the selected identity given Lambda_{m,n} and Lambda_{n,m}.
cplx funk_hecke_prediction(Variant variant, cplx lambda_mn, cplx lambda_nm, cplx y_at_w);

enum class BizonalMethod { sphere, disk, cylinder, radial };
std::string_view to_string(BizonalMethod m);

/// int_{Omega_{2q}} K(<z,w>) dsigma_q(z) by one of four equivalent routes.
/// The sphere route uses the pole w (default: a fixed generic unit vector).
cplx bizonal_sphere_integral(const KernelSpec& k, int q, BizonalMethod method,
                             std::optional<ComplexPoint> w = std::nullopt);

/// Fixed generic pole of Omega_{2q} used when none is supplied.
ComplexPoint default_pole(int q);

struct TwoRouteResult {
  cplx first;
  cplx second;
  double residual;
};

/// int_{B_{q+1}} K(<eta,w>) deta (ball rule) against
/// int_0^1 [int_{Omega_{2q}} K(<rz,w>) dsigma_q] r^{2q-1} dr (Gauss-Legendre in r).
TwoRouteResult ball_zonal_integral(const ScalarKernel& k, const ComplexPoint& w, int q, int degree);

/// int_{B_{q+1}} K(||eta||) deta against omega_q int_0^1 K(r) r^{2q-1} dr.
TwoRouteResult ball_radial_integral(const std::function<double(double)>& k, int q, int degree);

/// Real Funk-Hecke eigenvalue on S^{q_real-1}:
/// 2 pi^{(q-1)/2} / Gamma((q-1)/2) int_{-1}^1 K(t) P_n(t) (1-t^2)^{(q-3)/2} dt,
/// P_n the Gegenbauer polynomial of index (q-2)/2 normalized at 1.
double real_funk_hecke_eigenvalue(const std::function<double(double)>& k, int n, int q_real,
                                  int nodes = 64);

struct OrthogonalityCheck {
  cplx value;
  cplx expected;
  /// int_{B_q} R_{mu,nu} conj(R_{m,n}) at theta = 0.
  cplx reduced_value;
  /// c(m,n,q)/(2pi) delta_{mu m} delta_{nu n}; only on the stratum mu - nu = m - n.
  std::optional<cplx> reduced_expected;
};

/// Cylinder integral of R_{mu,nu} conj(R_{m,n}) against c(m,n,q) delta delta.
OrthogonalityCheck cylinder_orthogonality_check(int mu, int nu, int m, int n, int q,
                                                const QuadratureRule& cylinder);

}  // namespace fhk
