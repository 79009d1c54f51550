#pragma once

// Shared inputs for the verification suites: seeded samplers, the test
// function battery for the sphere/cylinder identity, and the built-in
// kernel list.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fhk/funk_hecke.hpp"
#include "fhk/quadrature.hpp"
#include "fhk/types.hpp"

namespace fhk::cli {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on the closed unit disk.
  cplx disk_point();
  /// Uniform on Omega_{2q}.
  ComplexPoint sphere_point(int q);
  double angle();

 private:
  std::mt19937_64 gen_;
};

struct TestFunction {
  std::string name;
  /// Total degree in (z, conj z); nullopt for the transcendental entries.
  std::optional<int> degree;
  Integrand f;
};

/// 20 polynomial and 5 entire test functions on C^q, q >= 2.
std::vector<TestFunction> sphere_battery(int q);

/// Sphere degree used for the transcendental battery entries at this q.
int transcendental_degree(int q);

/// One representative or more of each built-in kernel kind.
std::vector<KernelSpec> builtin_kernels();

/// Poles epsilon_q, epsilon_1 and a fixed generic point.
std::vector<std::pair<std::string, ComplexPoint>> standard_poles(int q);

}  // namespace fhk::cli
