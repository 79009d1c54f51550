#pragma once

// Polynomials in z and conj(z), the complex Laplacian 4 sum_j d^2/dz_j dconj(z_j),
// and orthonormal bases of the spherical harmonic spaces H_{m,n}(Omega_{2q}).

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fhk/quadrature.hpp"
#include "fhk/special_poly.hpp"
#include "fhk/types.hpp"

namespace fhk {

using MultiIndex = std::vector<int>;

/// Exponent pair (alpha, beta) of the monomial z^alpha conj(z)^beta.
struct Monomial {
  MultiIndex alpha;
  MultiIndex beta;
};

/// Graded lexicographic order: total degree ascending, then alpha and then
/// beta compared lexicographically with larger leading exponents first.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse polynomial sum c_{alpha,beta} z^alpha conj(z)^beta on C^q.
/// Zero coefficients are never stored.
class PolyZZbar {
 public:
  using TermMap = std::map<Monomial, cplx, GradedLex>;

  explicit PolyZZbar(int q);

  int q() const noexcept { return q_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// Adds c to the coefficient of z^alpha conj(z)^beta.
  void add_term(const MultiIndex& alpha, const MultiIndex& beta, cplx c);
  cplx coefficient(const MultiIndex& alpha, const MultiIndex& beta) const;

  /// (m, n) when every term has |alpha| = m and |beta| = n.
  std::optional<std::pair<int, int>> bidegree() const;
  int total_degree() const;
  double max_abs_coefficient() const;

  /// conj(p)(z) = conj(p(z)); maps P_{m,n} onto P_{n,m}.
  PolyZZbar conjugate() const;

  PolyZZbar& operator+=(const PolyZZbar& other);
  PolyZZbar& operator*=(cplx s);
  friend PolyZZbar operator+(PolyZZbar a, const PolyZZbar& b) { return a += b; }
  friend PolyZZbar operator*(PolyZZbar a, cplx s) { return a *= s; }
  friend PolyZZbar operator*(cplx s, PolyZZbar a) { return a *= s; }

 private:
  int q_;
  TermMap terms_;
};

/// p(z). Throws ParameterError when z has the wrong dimension.
cplx poly_eval(const PolyZZbar& p, std::span<const cplx> z);

/// Flattened copy of a polynomial for repeated evaluation. Thread-safe.
class PolyEvaluator {
 public:
  explicit PolyEvaluator(const PolyZZbar& p);
  cplx operator()(std::span<const cplx> z) const;

 private:
  int q_;
  int max_exp_;
  std::vector<int> exps_;  // per term: alpha_1..alpha_q, beta_1..beta_q
  std::vector<cplx> coeffs_;
};

/// 4 sum_j d^2 p / dz_j dconj(z_j), term by term.
PolyZZbar laplacian(const PolyZZbar& p);

/// max |coefficient of laplacian(p)| / max(1, max |coefficient of p|).
double laplacian_residual(const PolyZZbar& p);

/// All (alpha, beta) with |alpha| = m, |beta| = n, in GradedLex order.
std::vector<Monomial> monomial_basis(int m, int n, int q);

struct HarmonicBasis {
  DiskIndex idx;
  std::vector<PolyZZbar> elements;
  double gram_residual = 0.0;
};

/// Dimension of ker(laplacian) on P_{m,n}(C^q) from the SVD of the Laplacian
/// matrix in the monomial basis (relative threshold 1e-10).
std::size_t laplacian_nullspace_dim(const DiskIndex& idx);

/// Basis of H_{m,n}(C^q) extracted from the SVD nullspace. Throws
/// ConsistencyError if its size differs from harmonic_dim(idx).
HarmonicBasis solid_harmonic_basis(const DiskIndex& idx);

/// Modified Gram-Schmidt (with one re-orthogonalization pass) in the
/// quadrature inner product <f,g> = sum w f conj(g). The rule must be a sphere
/// rule for the same q, exact to degree 2(m+n).
HarmonicBasis orthonormalize_on_sphere(const HarmonicBasis& basis, const QuadratureRule& rule);

/// Same orthonormalization with the Gram matrix assembled from the closed-form
/// sphere moments of the monomials instead of a quadrature rule.
HarmonicBasis orthonormalize_by_moments(const HarmonicBasis& basis);

/// solid_harmonic_basis followed by orthonormalize_by_moments.
HarmonicBasis orthonormal_harmonic_basis(const DiskIndex& idx);

/// |R_{m,n}^{q-2}(<z,w>) - omega_q/d(m,n) sum_j Y_j(z) conj(Y_j(w))|.
double addition_formula_residual(const DiskIndex& idx, const HarmonicBasis& onb,
                                 std::span<const cplx> z, std::span<const cplx> w);

/// {schema_version, m, n, q, gram_residual, elements: [{terms: [{alpha, beta, re, im}]}]}.
std::string basis_to_json(const HarmonicBasis& basis);
HarmonicBasis basis_from_json(std::string_view text);

}  // namespace fhk
