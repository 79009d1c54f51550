#include <benchmark/benchmark.h>

#include "fhk/funk_hecke.hpp"
#include "fhk/harmonics.hpp"
#include "fhk/quadrature.hpp"
#include "fhk/special_poly.hpp"

namespace {

void BM_DiskPoly(benchmark::State& state) {
  const int deg = static_cast<int>(state.range(0));
  const fhk::DiskIndex idx(deg, deg / 2, 3);
  fhk::cplx z(0.31, -0.42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fhk::disk_poly(idx, z));
    z *= fhk::cplx(0.99999, 0.00001);
  }
}
BENCHMARK(BM_DiskPoly)->Arg(2)->Arg(8)->Arg(32);

void BM_SphereRule(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fhk::sphere_rule(q, 16));
}
BENCHMARK(BM_SphereRule)->DenseRange(2, 4);

void BM_IntegrateExpOnSphere(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto rule = fhk::sphere_rule(q, 16);
  const fhk::Integrand f = [](std::span<const fhk::cplx> z) { return std::exp(z[0] + std::conj(z[1])); };
  for (auto _ : state) benchmark::DoNotOptimize(fhk::integrate(f, rule, 1));
  state.counters["nodes"] = static_cast<double>(rule.size());
}
BENCHMARK(BM_IntegrateExpOnSphere)->DenseRange(2, 4);

void BM_EigenvalueCylinder(benchmark::State& state) {
  const auto k = state.range(0) == 0 ? fhk::KernelSpec::monomial(3, 2) : fhk::KernelSpec::exp_re();
  const fhk::DiskIndex idx(3, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fhk::eigenvalue(k, idx, fhk::Route::cylinder));
}
BENCHMARK(BM_EigenvalueCylinder)->Arg(0)->Arg(1);

void BM_OrthonormalBasis(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fhk::orthonormal_harmonic_basis(fhk::DiskIndex(d, d, 3)));
}
BENCHMARK(BM_OrthonormalBasis)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
