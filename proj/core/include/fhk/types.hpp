#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <vector>

namespace fhk {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// A point of C^q stored as its coordinate list.
class ComplexPoint {
 public:
  ComplexPoint() = default;
  explicit ComplexPoint(std::size_t q) : coords_(q) {}
  explicit ComplexPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {}
  ComplexPoint(std::initializer_list<cplx> coords) : coords_(coords) {}
  explicit ComplexPoint(std::span<const cplx> coords) : coords_(coords.begin(), coords.end()) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  cplx& operator[](std::size_t i) { return coords_[i]; }
  const cplx& operator[](std::size_t i) const { return coords_[i]; }

  std::span<const cplx> view() const noexcept { return coords_; }
  operator std::span<const cplx>() const noexcept { return coords_; }
  std::span<cplx> data() noexcept { return coords_; }

  /// Canonical basis vector e_k (0-based k) of C^q.
  static ComplexPoint unit(std::size_t q, std::size_t k) {
    ComplexPoint p(q);
    p[k] = 1.0;
    return p;
  }

 private:
  std::vector<cplx> coords_;
};

/// <z, w> = sum_j z_j conj(w_j).
inline cplx inner(std::span<const cplx> z, std::span<const cplx> w) {
  cplx s{0.0, 0.0};
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

inline double norm_sq(std::span<const cplx> z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

}  // namespace fhk
