#pragma once

// Scalar special functions and combinatorial constants: normalized Jacobi and
// Gegenbauer polynomials, disk polynomials R_{m,n}^{q-2}, sphere areas,
// harmonic dimensions and the cylinder orthogonality constant.

#include <cstdint>

#include "fhk/errors.hpp"
#include "fhk/types.hpp"

namespace fhk {

/// Index triple (m, n, q) of a disk polynomial R_{m,n}^{q-2}; requires q >= 2.
class DiskIndex {
 public:
  DiskIndex(int m, int n, int q) : m_(m), n_(n), q_(q) {
    if (m < 0 || n < 0) throw ParameterError("DiskIndex: m and n must be nonnegative");
    if (q < 2) throw ParameterError("DiskIndex: disk polynomials need q >= 2");
  }

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int q() const noexcept { return q_; }
  int min_mn() const noexcept { return m_ < n_ ? m_ : n_; }
  int abs_diff() const noexcept { return m_ > n_ ? m_ - n_ : n_ - m_; }

  /// (n, m, q): the index of the conjugate space.
  DiskIndex swapped() const { return {n_, m_, q_}; }

  friend bool operator==(const DiskIndex&, const DiskIndex&) = default;

 private:
  int m_;
  int n_;
  int q_;
};

struct JacobiParams {
  int degree = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// P_k^{(alpha,beta)}(x) / P_k^{(alpha,beta)}(1), by the ascending three-term
/// recurrence. Throws ParameterError for alpha or beta <= -1 or negative degree.
double jacobi_normalized(const JacobiParams& p, double x);

/// P_k^{(alpha,beta)}(1) = binom(k + alpha, k).
double jacobi_at_one(int degree, double alpha);

/// C_n^lambda(t) / C_n^lambda(1), lambda > 0.
double gegenbauer_normalized(int n, double lambda, double t);

/// R_{m,n}^{q-2}(z) = r^{|m-n|} e^{i(m-n)theta} P_{m^n}^{(q-2,|m-n|)}(2r^2-1).
/// |z| up to 1 + 1e-12 is clamped onto the disk; beyond that DomainError.
cplx disk_poly(const DiskIndex& idx, cplx z);

/// omega_q = 2 pi^q / (q-1)!, the area of the unit sphere of C^q.
double sphere_area(int q);

/// pi^q / q!, the volume of the unit ball of C^q.
double ball_volume(int q);

/// d(m,n) = dim H_{m,n}(Omega_{2q}).
std::uint64_t harmonic_dim(const DiskIndex& idx);

/// c(m,n,q) = 2 pi^q m! n! (q-2)! / ((m+n+q-1)(m+q-2)!(n+q-2)!).
double ortho_constant(const DiskIndex& idx);

/// ln(k!) with exact values for k <= 20.
double log_factorial(int k);

}  // namespace fhk
