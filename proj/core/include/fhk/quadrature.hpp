#pragma once

// Deterministic product quadrature for the circle, the disk with the measure
// nu_q, the sphere Omega_{2q}, the ball B_{q+1}, the cylinder [0,2pi] x B_q,
// plus the unitary frames that move the pole epsilon_q onto an arbitrary w.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fhk/errors.hpp"
#include "fhk/types.hpp"

namespace fhk {

enum class Domain { circle, disk_nu, sphere, ball, cylinder, subsphere };

std::string_view to_string(Domain d);
Domain domain_from_string(std::string_view s);

/// One-dimensional Gauss rule on [-1, 1] (or [0, 1] for the *_unit helpers).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for (1-x)^alpha (1+x)^beta on [-1,1] (Golub-Welsch).
GaussRule gauss_jacobi(int n, double alpha, double beta);

/// Gauss-Legendre rule on [0,1].
GaussRule gauss_legendre_unit(int n);

/// Nodes and positive weights for one of the supported domains.
///
/// Nodes are stored flat, `dim()` complex coordinates per node. For sphere,
/// ball and subsphere rules a node is a point of C^q. Disk and circle nodes are
/// single complex numbers. A cylinder node is the parameter tuple
/// (eta_1, ..., eta_{q-1}, e^{i theta}); see cylinder_point().
///
/// `measure_mass()` is the closed-form total mass of the declared measure,
/// `weight_sum()` what the weights actually add up to.
class QuadratureRule {
 public:
  QuadratureRule(Domain domain, int q, int dim, int exact_degree, double measure_mass,
                 std::vector<cplx> nodes, std::vector<double> weights);

  Domain domain() const noexcept { return domain_; }
  int q() const noexcept { return q_; }
  int dim() const noexcept { return dim_; }
  int exact_degree() const noexcept { return exact_degree_; }
  double measure_mass() const noexcept { return measure_mass_; }

  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const cplx> node(std::size_t i) const {
    return {nodes_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  std::span<const cplx> flat_nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  double weight_sum() const;

  friend bool operator==(const QuadratureRule&, const QuadratureRule&) = default;

 private:
  Domain domain_;
  int q_;
  int dim_;
  int exact_degree_;
  double measure_mass_;
  std::vector<cplx> nodes_;
  std::vector<double> weights_;
};

/// N equispaced points e^{2 pi i k / N}, weights 2pi/N.
QuadratureRule circle_rule(int n);

/// Tensor rule for the probability measure nu_q on B_2: Gauss-Jacobi in
/// u = r^2 with weight (1-u)^{q-2}, equispaced angles.
QuadratureRule disk_rule_nu(int q, int n_radial, int n_angle);

/// Recursive product rule on Omega_{2q}, exact for total degree <= degree.
QuadratureRule sphere_rule(int q, int degree);

/// Gauss rule in r for r^{2q-1} dr tensored with sphere_rule(q, degree).
QuadratureRule ball_rule(int q, int degree);
QuadratureRule ball_rule_sized(int q, int n_radial, int sphere_degree);

/// circle_rule x ball_rule(q-1, degree); total mass 2pi * pi^{q-1}/(q-1)!.
QuadratureRule cylinder_rule(int q, int degree);

/// Cylinder rule with explicit sizes. sphere_degree 0 collapses the angular
/// part of B_q to one node per level, which is exact for integrands that only
/// depend on (||eta||, theta).
QuadratureRule cylinder_rule_sized(int q, int n_angle, int n_radial, int sphere_degree);

/// Maps a cylinder node (eta, e^{i theta}) to the sphere point
/// (eta, e^{i theta} sqrt(1 - ||eta||^2)) of Omega_{2q}.
void cylinder_point(std::span<const cplx> node, std::span<cplx> out);

/// The disk argument sqrt(1 - ||eta||^2) e^{i theta} of a cylinder node.
cplx cylinder_disk_argument(std::span<const cplx> node);

/// A unitary U of C^q with U epsilon_q = pole.
class UnitaryFrame {
 public:
  UnitaryFrame(std::vector<cplx> matrix, ComplexPoint pole);

  int q() const noexcept { return static_cast<int>(pole_.dim()); }
  const ComplexPoint& pole() const noexcept { return pole_; }
  cplx operator()(std::size_t row, std::size_t col) const {
    return matrix_[row * pole_.dim() + col];
  }

  void apply(std::span<const cplx> x, std::span<cplx> out) const;
  ComplexPoint apply(std::span<const cplx> x) const;

  /// max |(U^H U - I)_{ij}|.
  double unitarity_residual() const;

  /// U * (V (+) 1): V acts on the first q-1 coordinates.
  UnitaryFrame with_gauge(std::span<const cplx> v) const;

 private:
  std::vector<cplx> matrix_;
  ComplexPoint pole_;
};

/// Single complex Householder reflection (times a phase) sending epsilon_q to w.
UnitaryFrame frame_from_pole(const ComplexPoint& w);

using Integrand = std::function<cplx(std::span<const cplx>)>;

/// Worker count from FHK_THREADS (default 1).
int thread_count_from_env();

/// Weighted sum of f over the nodes: Neumaier-compensated blocks of fixed size
/// reduced by a fixed pairwise tree, so the result does not depend on the
/// worker count. threads <= 0 means thread_count_from_env().
cplx integrate(const Integrand& f, const QuadratureRule& rule, int threads = 0);

/// Same reduction applied to precomputed node values.
cplx integrate_values(std::span<const cplx> values, const QuadratureRule& rule);

/// I(w) = sum over the cylinder rule of f(U_w (eta + e^{i theta} sqrt(1-||eta||^2) epsilon_q)).
cplx cylinder_route_integral(const Integrand& f, const UnitaryFrame& frame,
                             const QuadratureRule& cylinder, int threads = 0);

/// |I(w1) - I(w2)| on cylinder_rule(q, degree).
double pole_invariance_residual(const Integrand& f, const ComplexPoint& w1,
                                const ComplexPoint& w2, int q, int degree);

/// Versioned JSON: {schema_version, domain, q, dim, exact_degree, measure_mass,
/// nodes: [[[re,im],...],...], weights: [...]}.
std::string rule_to_json(const QuadratureRule& rule);
QuadratureRule rule_from_json(std::string_view text);

}  // namespace fhk
