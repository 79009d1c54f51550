#pragma once

// Reference formulas written independently of the library code paths:
// explicit sums instead of recurrences, closed-form moments instead of
// quadrature, combinatorial counts instead of nullspaces.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

inline double binom(double n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= (n - k + i) / i;
  return r;
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

inline std::uint64_t binom_u(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// P_k^{(a,b)}(x) / P_k^{(a,b)}(1) from the explicit binomial sum.
inline double jacobi(int k, double a, double b, double x) {
  double s = 0.0;
  for (int j = 0; j <= k; ++j)
    s += binom(k + a, k - j) * binom(k + b, j) * std::pow((x - 1) / 2, j) * std::pow((x + 1) / 2, k - j);
  return s / binom(k + a, k);
}

/// R_{m,n}^{q-2}(z) via the explicit Jacobi sum in polar form.
inline cplx disk_poly(int m, int n, int q, cplx z) {
  const double r = std::abs(z);
  const double th = std::arg(z);
  const int k = std::min(m, n), d = std::abs(m - n);
  return jacobi(k, q - 2, d, 2 * r * r - 1) * std::pow(r, d) * std::polar(1.0, (m - n) * th);
}

inline double sphere_area(int q) { return 2 * std::pow(pi, q) / factorial(q - 1); }
inline double ball_volume(int q) { return std::pow(pi, q) / factorial(q); }

/// int_{Omega_{2q}} z^a conj(z)^b dsigma: zero unless a = b, else 2 pi^q a! / (q-1+|a|)!.
inline double sphere_moment(const std::vector<int>& a, const std::vector<int>& b) {
  if (a != b) return 0.0;
  double num = 1.0;
  int tot = 0;
  for (int e : a) {
    num *= factorial(e);
    tot += e;
  }
  return 2 * std::pow(pi, static_cast<int>(a.size())) * num / factorial(static_cast<int>(a.size()) - 1 + tot);
}

/// Lebesgue moment on the unit ball of C^q: pi^q a! / (q+|a|)! for a = b.
inline double ball_moment(const std::vector<int>& a, const std::vector<int>& b) {
  if (a != b) return 0.0;
  double num = 1.0;
  int tot = 0;
  for (int e : a) {
    num *= factorial(e);
    tot += e;
  }
  return std::pow(pi, static_cast<int>(a.size())) * num / factorial(static_cast<int>(a.size()) + tot);
}

/// dim P_{m,n}(C^q) - dim P_{m-1,n-1}(C^q); the Laplacian maps onto the latter.
inline std::uint64_t harmonic_dim_by_count(int m, int n, int q) {
  auto p = [q](int a, int b) -> std::uint64_t {
    if (a < 0 || b < 0) return 0;
    return binom_u(a + q - 1, a) * binom_u(b + q - 1, b);
  };
  return p(m, n) - p(m - 1, n - 1);
}

/// int_{B_2} |R_{m,n}|^2 dnu_q by composite Gauss-Legendre in u = r^2 (the
/// angular part integrates to 1).
inline double disk_norm_sq(int m, int n, int q) {
  static const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  static const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                              0.2369268850561891};
  const int panels = 40;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) / panels, h = 1.0 / panels;
    for (int i = 0; i < 5; ++i) {
      const double u = a + h * (x[i] + 1) / 2;
      s += h / 2 * w[i] * std::norm(disk_poly(m, n, q, std::sqrt(u))) * (q - 1) * std::pow(1 - u, q - 2);
    }
  }
  return s;
}

}  // namespace oracle
