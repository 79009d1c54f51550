#include "fhk/special_poly.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace fhk {
namespace {

constexpr double kDiskTolerance = 1e-12;

__extension__ using u128 = unsigned __int128;

// binom(n, k) in 128-bit arithmetic; each partial product is itself a binomial
// so the division is exact.
bool binomial_exact(int n, int k, u128& out) {
  if (k < 0 || k > n) {
    out = 0;
    return true;
  }
  if (k > n - k) k = n - k;
  u128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<u128>(n - k + i) / static_cast<u128>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return false;
  }
  out = r;
  return true;
}

// k! for k <= 20, exact in 64-bit integers before the final conversion.
double small_factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return static_cast<double>(f);
}

double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

void check_jacobi(const JacobiParams& p) {
  if (p.degree < 0) throw ParameterError("jacobi: negative degree");
  if (!(p.alpha > -1.0) || !(p.beta > -1.0))
    throw ParameterError("jacobi: alpha and beta must exceed -1");
}

// Unnormalized P_k^{(a,b)}(x) by the standard three-term recurrence.
double jacobi_raw(int k, double a, double b, double x) {
  double p0 = 1.0;
  if (k == 0) return p0;
  double p1 = 0.5 * ((a + b + 2.0) * x + a - b);
  for (int j = 1; j < k; ++j) {
    const double s = 2.0 * j + a + b;
    const double c1 = 2.0 * (j + 1) * (j + a + b + 1.0) * s;
    const double c2 = (s + 1.0) * (s * (s + 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (j + a) * (j + b) * (s + 2.0);
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

double log_factorial(int k) {
  if (k < 0) throw ParameterError("log_factorial: negative argument");
  if (k <= 20) return std::log(small_factorial(k));
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double jacobi_at_one(int degree, double alpha) {
  double v = 1.0;
  for (int j = 1; j <= degree; ++j) v *= (alpha + j) / j;
  return v;
}

double jacobi_normalized(const JacobiParams& p, double x) {
  check_jacobi(p);
  if (p.degree == 0) return 1.0;
  return jacobi_raw(p.degree, p.alpha, p.beta, x) / jacobi_at_one(p.degree, p.alpha);
}

double gegenbauer_normalized(int n, double lambda, double t) {
  if (!(lambda > 0.0)) throw ParameterError("gegenbauer: lambda must be positive");
  return jacobi_normalized({n, lambda - 0.5, lambda - 0.5}, t);
}

cplx disk_poly(const DiskIndex& idx, cplx z) {
  double r2 = std::norm(z);
  if (!std::isfinite(r2)) throw DomainError("disk_poly: non-finite argument");
  if (r2 > 1.0) {
    if (std::sqrt(r2) > 1.0 + kDiskTolerance)
      throw DomainError("disk_poly: |z| > 1");
    z /= std::sqrt(r2);
    r2 = 1.0;
  }
  const int k = idx.abs_diff();
  // r^{|m-n|} e^{i(m-n)theta} is z^{m-n} or conj(z)^{n-m}; exactly 0 at the origin.
  cplx phase{1.0, 0.0};
  const cplx base = idx.m() >= idx.n() ? z : std::conj(z);
  for (int j = 0; j < k; ++j) phase *= base;
  if (k > 0 && r2 == 0.0) return {0.0, 0.0};
  const double radial = jacobi_normalized(
      {idx.min_mn(), static_cast<double>(idx.q() - 2), static_cast<double>(k)}, 2.0 * r2 - 1.0);
  return phase * radial;
}

double sphere_area(int q) {
  if (q < 1) throw ParameterError("sphere_area: q must be >= 1");
  if (q - 1 <= 20) return 2.0 * std::pow(pi, q) / small_factorial(q - 1);
  return 2.0 * std::exp(q * std::log(pi) - log_factorial(q - 1));
}

double ball_volume(int q) {
  if (q < 1) throw ParameterError("ball_volume: q must be >= 1");
  if (q <= 20) return std::pow(pi, q) / small_factorial(q);
  return std::exp(q * std::log(pi) - log_factorial(q));
}

std::uint64_t harmonic_dim(const DiskIndex& idx) {
  const int m = idx.m(), n = idx.n(), q = idx.q();
  // d = (m+n+q-1) binom(m+q-2, m) binom(n+q-2, n) / (q-1)
  u128 bm = 0, bn = 0;
  if (!binomial_exact(m + q - 2, m, bm) || !binomial_exact(n + q - 2, n, bn))
    throw ParameterError("harmonic_dim: overflow");
  const u128 num = static_cast<u128>(m + n + q - 1) * bm * bn;
  const u128 d = num / static_cast<u128>(q - 1);
  if (d * static_cast<u128>(q - 1) != num)
    throw ConsistencyError("harmonic_dim: non-integral dimension");
  if (d > std::numeric_limits<std::uint64_t>::max()) throw ParameterError("harmonic_dim: overflow");
  return static_cast<std::uint64_t>(d);
}

double ortho_constant(const DiskIndex& idx) {
  const int m = idx.m(), n = idx.n(), q = idx.q();
  // m!(q-2)!/(m+q-2)! = 1/binom(m+q-2, m) and n!/(n+q-2)! = 1/(binom(n+q-2, n)(q-2)!)
  const double log_num = std::log(2.0) + q * std::log(pi);
  const double log_tail = std::log(static_cast<double>(m + n + q - 1)) + log_factorial(q - 2);
  if (m + q - 2 <= 20 && n + q - 2 <= 20) {
    u128 bm = 0, bn = 0;
    binomial_exact(m + q - 2, m, bm);
    binomial_exact(n + q - 2, n, bn);
    const double denom = static_cast<double>(m + n + q - 1) * static_cast<double>(bm) *
                         static_cast<double>(bn) * small_factorial(q - 2);
    return 2.0 * std::pow(pi, q) / denom;
  }
  return std::exp(log_num - log_tail - log_binomial(m + q - 2, m) - log_binomial(n + q - 2, n));
}

}  // namespace fhk
