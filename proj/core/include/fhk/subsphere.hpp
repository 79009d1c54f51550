#pragma once

// Subspheres Omega_w^gamma = { z in Omega_{2q} : <z,w> = gamma }: point
// decomposition, measure, quadrature, and the subsphere Funk-Hecke identity.

#include <optional>
#include <utility>

#include "fhk/funk_hecke.hpp"
#include "fhk/harmonics.hpp"
#include "fhk/quadrature.hpp"
#include "fhk/types.hpp"

namespace fhk {

class SubsphereSpec {
 public:
  /// Throws ParameterError for q < 2 or a pole of the wrong size, DomainError
  /// if ||w|| != 1 (1e-10) or |gamma| > 1 + 1e-12.
  SubsphereSpec(ComplexPoint w, cplx gamma);

  const ComplexPoint& pole() const noexcept { return w_; }
  cplx gamma() const noexcept { return gamma_; }
  int q() const noexcept { return static_cast<int>(w_.dim()); }
  /// sqrt(1 - |gamma|^2), clamped at 0.
  double radius() const noexcept;
  bool degenerate() const noexcept { return std::abs(gamma_) >= 1.0; }

 private:
  ComplexPoint w_;
  cplx gamma_;
};

struct Decomposition {
  cplx t_e_itheta;
  ComplexPoint zprime;
};

/// z = (te^{itheta} - gamma s/rho) w + (s/rho) z' with s = sqrt(1-t^2),
/// rho the subsphere radius. For z a multiple of w, z' is the first node of
/// subsphere_rule(spec, 0).
Decomposition decompose_point(const ComplexPoint& z, const SubsphereSpec& spec);

/// Reconstruction error of a decomposition, max-norm.
double reconstruction_residual(const ComplexPoint& z, const Decomposition& d, const SubsphereSpec& spec);

/// omega_{q-1} (1 - |gamma|^2)^{(2q-3)/2}; 0 when |gamma| >= 1.
double subsphere_measure(const SubsphereSpec& spec);

/// gamma w + rho U_w (z'', 0) for z'' from sphere_rule(q-1, degree), weights
/// scaled by rho^{2q-3}. `frame` overrides frame_from_pole(w).
QuadratureRule subsphere_rule(const SubsphereSpec& spec, int degree,
                              const std::optional<UnitaryFrame>& frame = std::nullopt);

/// omega_{q-1} (1-|gamma|^2)^{(2q-3)/2} K(gamma) conj(R_{m,n}(gamma)).
cplx upsilon(const KernelSpec& k, const DiskIndex& idx, cplx gamma);

/// |int K(<z,w>) conj(Y(z)) dsigma_w^gamma - upsilon conj(Y(w))|.
double subsphere_funk_hecke_residual(const KernelSpec& k, const PolyZZbar& y, const SubsphereSpec& spec,
                                     int degree);

struct MeanValue {
  cplx integral;
  cplx predicted;
};

/// int Y dsigma_w^gamma against sigma(Omega_w^gamma) R_{m,n}(gamma) Y(w).
MeanValue mean_value(const PolyZZbar& y, const SubsphereSpec& spec, int degree);

}  // namespace fhk
