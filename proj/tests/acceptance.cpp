// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "battery.hpp"
#include "fhk/funk_hecke.hpp"
#include "fhk/subsphere.hpp"
#include "oracles.hpp"

using fhk::cplx;
using fhk::ComplexPoint;
using fhk::DiskIndex;
using fhk::KernelSpec;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  double worst = 0.0;
  std::string note;

  void check(bool ok, double residual) {
    pass = pass && ok;
    worst = std::max(worst, residual);
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body, double budget_s = 0) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.note += (o.note.empty() ? "" : "; ") + std::string("over time budget");
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (worst %.3g, %.2f s%s%s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.worst,
              secs, o.note.empty() ? "" : ", ", o.note.c_str());
  std::fflush(stdout);
}

ComplexPoint random_sphere(std::mt19937_64& g, int q) {
  std::normal_distribution<double> n;
  ComplexPoint p(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) p[j] = cplx(n(g), n(g));
  const double s = std::sqrt(fhk::norm_sq(p));
  for (int j = 0; j < q; ++j) p[j] /= s;
  return p;
}

cplx random_disk(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(std::sqrt(u(g)), 2 * std::numbers::pi * u(g));
}

std::vector<KernelSpec> kernel_kinds() {
  return {KernelSpec::constant(cplx(1.0, 0.5)), KernelSpec::monomial(2, 1), KernelSpec::disk_poly(1, 2),
          KernelSpec::exp_re(), KernelSpec::power_abs(1.0)};
}

std::string run_binary(const std::string& env, const std::string& args, int& code) {
  const std::string cmd = env + " " + FHK_BIN + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  if (!p) {
    code = -1;
    return out;
  }
  std::array<char, 1 << 15> buf;
  while (std::size_t k = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), k);
  const int st = pclose(p);
  code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

}  // namespace

int main() {
  criterion(1, "disk polynomial equivariance, bound and conjugation, 1e4 points, m,n<=8, q<=5", [] {
    Outcome o;
    std::mt19937_64 g(101);
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    for (int q = 2; q <= 5; ++q)
      for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= 8; ++n) {
          const DiskIndex idx(m, n, q), swapped(n, m, q);
          for (int s = 0; s < 10000; ++s) {
            const cplx z = random_disk(g);
            const cplx phase = std::polar(1.0, ang(g));
            const cplx r = fhk::disk_poly(idx, z);
            const double e1 = std::abs(fhk::disk_poly(idx, phase * z) - std::pow(phase, m) * std::pow(std::conj(phase), n) * r);
            const double e2 = std::max(0.0, std::abs(r) - 1.0);
            const double e3 = std::max(std::abs(std::conj(r) - fhk::disk_poly(swapped, z)),
                                       std::abs(std::conj(r) - fhk::disk_poly(idx, std::conj(z))));
            const double e = std::max({e1, e2, e3});
            o.check(e < 1e-12, e);
          }
          const double e4 = std::abs(fhk::disk_poly(idx, 1.0) - 1.0);
          o.check(e4 < 1e-12, e4);
        }
    return o;
  }, 10.0);

  criterion(2, "measure masses of disk, sphere, ball and cylinder rules", [] {
    Outcome o;
    auto rel = [&](double got, double want) {
      const double e = std::abs(got - want) / want;
      o.check(e < 1e-12, e);
    };
    for (int q = 2; q <= 4; ++q) {
      const double wq = 2 * std::pow(std::numbers::pi, q) / std::tgamma(q);
      rel(fhk::disk_rule_nu(q, 6, 9).weight_sum(), 1.0);
      rel(fhk::sphere_rule(q, 6).weight_sum(), wq);
      rel(fhk::ball_rule(q, 6).weight_sum(), std::pow(std::numbers::pi, q) / std::tgamma(q + 1));
      rel(fhk::cylinder_rule(q, 6).weight_sum(), wq);
      rel(fhk::sphere_rule(q, 6).measure_mass(), oracle::sphere_area(q));
      rel(fhk::ball_rule(q, 6).measure_mass(), oracle::ball_volume(q));
    }
    return o;
  });

  criterion(3, "sphere and cylinder integrals agree, 25 functions x q in {2,3,4} x 3 poles", [] {
    Outcome o;
    int count = 0;
    for (int q = 2; q <= 4; ++q) {
      const auto battery = fhk::cli::sphere_battery(q);
      const auto poles = fhk::cli::standard_poles(q);
      for (const auto& tf : battery) {
        const int degree = tf.degree ? std::max(*tf.degree, 1) : fhk::cli::transcendental_degree(q);
        const auto sphere = fhk::sphere_rule(q, degree);
        const auto cyl = fhk::cylinder_rule(q, degree);
        const cplx direct = fhk::integrate(tf.f, sphere);
        const auto scale_rule = degree < 8 ? fhk::sphere_rule(q, 8) : sphere;
        const double scale =
            std::max(std::abs(direct),
                     fhk::integrate([&](std::span<const cplx> z) { return cplx(std::abs(tf.f(z))); }, scale_rule).real());
        for (const auto& [name, w] : poles) {
          const double e = std::abs(fhk::cylinder_route_integral(tf.f, fhk::frame_from_pole(w), cyl) - direct) / scale;
          o.check(e < 1e-8, e);
          ++count;
        }
      }
    }
    if (count != 225) o.pass = false, o.note = "expected 225 cases, ran " + std::to_string(count);
    return o;
  }, 60.0);

  criterion(4, "disk and cylinder eigenvalue routes agree, 5 kernel kinds, m,n<=4, q in {2,3,4}", [] {
    Outcome o;
    auto ks = kernel_kinds();
    ks.push_back(KernelSpec::power_abs(0.5));
    for (const auto& k : ks)
      for (int q = 2; q <= 4; ++q)
        for (int m = 0; m <= 4; ++m)
          for (int n = 0; n <= 4; ++n) {
            const DiskIndex idx(m, n, q);
            const cplx a = fhk::eigenvalue(k, idx, fhk::Route::disk).value;
            const cplx b = fhk::eigenvalue(k, idx, fhk::Route::cylinder).value;
            const double e = std::abs(a - b) / (1 + std::abs(a));
            o.check(e <= 1e-8, e);
          }
    return o;
  });

  criterion(5, "diagonal spectrum of disk polynomial kernels", [] {
    Outcome o;
    for (int q = 2; q <= 4; ++q)
      for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l) {
          const double diag = oracle::sphere_area(q) / oracle::harmonic_dim_by_count(k, l, q);
          for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n) {
              const double want = (k == m && l == n) ? diag : 0.0;
              for (auto r : {fhk::Route::disk, fhk::Route::cylinder}) {
                const cplx v = fhk::eigenvalue(KernelSpec::disk_poly(k, l), DiskIndex(m, n, q), r).value;
                const double e = std::abs(v - want) / diag;
                o.check(e <= 1e-8, e);
              }
            }
        }
    return o;
  });

  criterion(6, "Funk-Hecke eigenfunctions on Omega_4, all Y with m,n<=3, all kernels, 4 variants, 10 poles", [] {
    Outcome o;
    const int q = 2;
    std::mt19937_64 g(606);
    std::vector<ComplexPoint> poles;
    for (int i = 0; i < 10; ++i) poles.push_back(random_sphere(g, q));
    const auto sphere = fhk::sphere_rule(q, 24);
    for (const auto& k : kernel_kinds()) {
      std::array<std::array<cplx, 4>, 4> lam{};
      for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) lam[m][n] = fhk::eigenvalue(k, DiskIndex(m, n, q), fhk::Route::cylinder).value;
      for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
          const auto onb = fhk::orthonormal_harmonic_basis(DiskIndex(m, n, q));
          for (const auto& y : onb.elements)
            for (const auto& w : poles)
              for (auto v : {fhk::Variant::KzwYbar, fhk::Variant::KzwY, fhk::Variant::KwzY, fhk::Variant::KwzYbar}) {
                const cplx got = fhk::apply_funk_hecke(k, y, w, v, sphere);
                const cplx want = fhk::funk_hecke_prediction(v, lam[m][n], lam[n][m], fhk::poly_eval(y, w));
                const bool swapped = v == fhk::Variant::KzwY || v == fhk::Variant::KwzYbar;
                const double e = std::abs(got - want) / (1 + std::abs(swapped ? lam[n][m] : lam[m][n]));
                o.check(e <= 1e-6, e);
              }
        }
    }
    return o;
  }, 300.0);

  criterion(7, "addition formula on Omega_4 and Omega_6, 100 pairs per (m,n), m,n<=3, plus z=w", [] {
    Outcome o;
    std::mt19937_64 g(707);
    for (int q = 2; q <= 3; ++q)
      for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
          const DiskIndex idx(m, n, q);
          const auto onb = fhk::orthonormal_harmonic_basis(idx);
          for (int s = 0; s < 100; ++s) {
            const ComplexPoint z = random_sphere(g, q), w = random_sphere(g, q);
            const double e = std::max(fhk::addition_formula_residual(idx, onb, z, w),
                                      fhk::addition_formula_residual(idx, onb, z, z));
            o.check(e < 1e-8, e);
          }
        }
    return o;
  });

  criterion(8, "cylinder orthogonality over index quadruples <= 3, q in {2,3}", [] {
    Outcome o;
    for (int q = 2; q <= 3; ++q) {
      const auto rule = fhk::cylinder_rule(q, 12);
      for (int mu = 0; mu <= 3; ++mu)
        for (int nu = 0; nu <= 3; ++nu)
          for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
              const double c1 = fhk::ortho_constant(DiskIndex(mu, nu, q)), c2 = fhk::ortho_constant(DiskIndex(m, n, q));
              const double want = (mu == m && nu == n) ? c2 : 0.0;
              const auto r = fhk::cylinder_orthogonality_check(mu, nu, m, n, q, rule);
              const double e = std::abs(r.value - want) / std::sqrt(c1 * c2);
              o.check(e < 1e-8, e);
            }
    }
    return o;
  });

  criterion(9, "bizonal four-route agreement and ball identity, all kernel kinds", [] {
    Outcome o;
    std::mt19937_64 g(909);
    for (const auto& k : kernel_kinds())
      for (int q = 2; q <= 4; ++q) {
        const cplx ref = fhk::bizonal_sphere_integral(k, q, fhk::BizonalMethod::sphere);
        for (auto m : {fhk::BizonalMethod::disk, fhk::BizonalMethod::cylinder, fhk::BizonalMethod::radial}) {
          const double e = std::abs(fhk::bizonal_sphere_integral(k, q, m) - ref) / (1 + std::abs(ref));
          o.check(e < 1e-8, e);
        }
        ComplexPoint w = random_sphere(g, q);
        for (auto& c : w.data()) c *= 0.7;
        const auto deg = k.polynomial_degree();
        const auto r = fhk::ball_zonal_integral([&](cplx z) { return k.evaluate(z, q); }, w, q,
                                                deg ? std::max(*deg, 1) : fhk::cli::transcendental_degree(q));
        const double e = std::abs(r.first - r.second) / (1 + std::abs(r.second));
        o.check(e < 1e-8, e);
      }
    for (int q = 1; q <= 4; ++q) {
      const auto r = fhk::ball_radial_integral([](double t) { return std::exp(t); }, q, fhk::cli::transcendental_degree(std::max(q, 2)));
      const double e = std::abs(r.first - r.second) / (1 + std::abs(r.second));
      o.check(e < 1e-8, e);
    }
    return o;
  });

  criterion(10, "subsphere membership, mass, Funk-Hecke, mean value and degeneracy on Omega_4", [] {
    Outcome o;
    const int q = 2;
    const std::vector<cplx> gammas{0.0, 0.3, cplx(0.6, 0.2), 0.9};
    for (const auto& [pname, w] : fhk::cli::standard_poles(q))
      for (cplx gamma : gammas) {
        const fhk::SubsphereSpec spec(w, gamma);
        const auto rule = fhk::subsphere_rule(spec, 6);
        const double mass = oracle::sphere_area(q - 1) * std::pow(1 - std::norm(gamma), q - 1.5);
        const double em = std::abs(rule.weight_sum() - mass) / mass;
        o.check(em < 1e-12, em);
        for (std::size_t i = 0; i < rule.size(); ++i) {
          const auto z = rule.node(i);
          const double e = std::max(std::abs(std::sqrt(fhk::norm_sq(z)) - 1.0), std::abs(fhk::inner(z, w) - gamma));
          o.check(e < 1e-12, e);
        }
        for (int m = 0; m <= 3; ++m)
          for (int n = 0; n <= 3; ++n) {
            const auto onb = fhk::orthonormal_harmonic_basis(DiskIndex(m, n, q));
            for (const auto& y : onb.elements) {
              for (const auto& k : kernel_kinds()) {
                const double e = fhk::subsphere_funk_hecke_residual(k, y, spec, m + n);
                o.check(e <= 1e-7, e);
              }
              const auto mv = fhk::mean_value(y, spec, m + n);
              const double e = std::abs(mv.integral - mv.predicted);
              o.check(e <= 1e-7, e);
            }
          }
      }
    for (const auto& k : kernel_kinds())
      for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
          const bool zero = fhk::upsilon(k, DiskIndex(m, n, q), 1.0) == cplx(0.0) &&
                            fhk::upsilon(k, DiskIndex(m, n, q), cplx(0.0, 1.0)) == cplx(0.0);
          o.check(zero, zero ? 0.0 : 1.0);
        }
    return o;
  });

  criterion(11, "Laplacian nullspace dimension equals d(m,n), m,n<=4, q in {2,3}", [] {
    Outcome o;
    for (int q = 2; q <= 3; ++q)
      for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) {
          const DiskIndex idx(m, n, q);
          const std::uint64_t formula = fhk::harmonic_dim(idx);
          const bool ok = fhk::laplacian_nullspace_dim(idx) == formula &&
                          oracle::harmonic_dim_by_count(m, n, q) == formula;
          o.check(ok, ok ? 0.0 : 1.0);
        }
    return o;
  });

  criterion(12, "verify --suite all --q 2 is byte-identical across runs and FHK_THREADS in {1,4}", [] {
    Outcome o;
    std::vector<std::string> outs;
    for (const char* env : {"FHK_THREADS=1", "FHK_THREADS=1", "FHK_THREADS=4", "FHK_THREADS=4"}) {
      int code = 0;
      outs.push_back(run_binary(env, "verify --suite all --q 2", code));
      if (code != 0) o.pass = false, o.note = "exit code " + std::to_string(code);
    }
    for (const auto& s : outs) o.check(!s.empty() && s == outs[0], s == outs[0] ? 0.0 : 1.0);
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
