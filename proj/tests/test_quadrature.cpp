#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fhk/quadrature.hpp"
#include "fhk/special_poly.hpp"
#include "oracles.hpp"

using fhk::cplx;
using fhk::ComplexPoint;
using fhk::QuadratureRule;
using Z = std::span<const cplx>;

namespace {

constexpr double kPi = oracle::pi;

cplx monomial(Z z, const std::vector<int>& a, const std::vector<int>& b) {
  cplx v = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) v *= std::pow(z[j], a[j]) * std::pow(std::conj(z[j]), b[j]);
  return v;
}

// All exponent vectors of q entries with the given total.
void compositions(int total, int q, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == q - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, q, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> exps_up_to(int max_total, int q) {
  std::vector<std::vector<int>> out;
  for (int t = 0; t <= max_total; ++t) {
    std::vector<int> cur;
    compositions(t, q, cur, out);
  }
  return out;
}

ComplexPoint random_sphere(std::mt19937_64& g, int q) {
  std::normal_distribution<double> n;
  ComplexPoint p(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) p[j] = cplx(n(g), n(g));
  const double s = std::sqrt(fhk::norm_sq(p));
  for (int j = 0; j < q; ++j) p[j] /= s;
  return p;
}

}  // namespace

TEST(GaussJacobi, LegendreMoments) {
  const auto g = fhk::gauss_jacobi(6, 0.0, 0.0);
  ASSERT_EQ(g.nodes.size(), 6u);
  for (int k = 0; k <= 11; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < 6; ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
    EXPECT_NEAR(s, k % 2 ? 0.0 : 2.0 / (k + 1), 1e-14) << k;
  }
}

TEST(GaussJacobi, WeightedMassAndHalfInteger) {
  // int (1-x)^a (1+x)^b = 2^{a+b+1} B(a+1, b+1)
  for (double a : {-0.5, 0.0, 1.0, 2.5})
    for (double b : {-0.5, 0.0, 3.0}) {
      const auto g = fhk::gauss_jacobi(5, a, b);
      double s = 0.0;
      for (double w : g.weights) s += w;
      const double want = std::pow(2.0, a + b + 1) * std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 2);
      EXPECT_NEAR(s / want, 1.0, 1e-13) << a << " " << b;
    }
}

TEST(GaussLegendreUnit, Moments) {
  const auto g = fhk::gauss_legendre_unit(4);
  for (int k = 0; k <= 7; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
    EXPECT_NEAR(s, 1.0 / (k + 1), 1e-15);
  }
}

TEST(CircleRule, Examples) {
  EXPECT_THROW(fhk::circle_rule(0), fhk::ParameterError);
  const auto c4 = fhk::circle_rule(4);
  EXPECT_NEAR(c4.weight_sum(), 2 * kPi, 1e-15);
  EXPECT_NEAR(std::abs(fhk::integrate([](Z z) { return z[0]; }, c4)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(fhk::integrate([](Z z) { return std::pow(z[0], 4); }, c4) - 2 * kPi), 0.0, 1e-14);
  const auto c8 = fhk::circle_rule(8);
  EXPECT_NEAR(std::abs(fhk::integrate([](Z z) { return std::pow(z[0], 7); }, c8)), 0.0, 1e-14);
}

TEST(DiskRule, Examples) {
  for (int q = 2; q <= 5; ++q) {
    const auto r = fhk::disk_rule_nu(q, 4, 9);
    EXPECT_NEAR(r.weight_sum(), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(fhk::integrate([](Z z) { return z[0]; }, r)), 0.0, 1e-15);
  }
  const auto r2 = fhk::disk_rule_nu(2, 4, 9);
  EXPECT_NEAR(fhk::integrate([](Z z) { return cplx(std::norm(fhk::disk_poly({1, 1, 2}, z[0]))); }, r2).real(),
              1.0 / 3.0, 1e-14);
  EXPECT_THROW(fhk::disk_rule_nu(2, 0, 3), fhk::ParameterError);
}

TEST(DiskRule, MomentsOfNu) {
  // int |z|^{2k} dnu_q = (q-1) B(k+1, q-1)
  for (int q = 2; q <= 5; ++q) {
    const auto r = fhk::disk_rule_nu(q, 6, 13);
    for (int k = 0; k <= 10; ++k) {
      const double want = (q - 1) * std::tgamma(k + 1.0) * std::tgamma(q - 1.0) / std::tgamma(k + q + 0.0);
      EXPECT_NEAR(fhk::integrate([k](Z z) { return cplx(std::pow(std::norm(z[0]), k)); }, r).real() / want, 1.0,
                  1e-13);
    }
  }
}

TEST(SphereRule, Examples) {
  const auto s = fhk::sphere_rule(2, 4);
  EXPECT_NEAR(s.weight_sum(), 2 * kPi * kPi, 1e-13);
  EXPECT_NEAR(std::abs(fhk::integrate([](Z z) { return z[0] * std::conj(z[1]); }, s)), 0.0, 1e-14);
  EXPECT_NEAR(fhk::integrate([](Z z) { return cplx(std::norm(z[0])); }, s).real(), kPi * kPi, 1e-13);
}

TEST(SphereRule, MonomialExactness) {
  for (int q = 1; q <= 4; ++q) {
    const int degree = q <= 2 ? 8 : 6;
    const auto rule = fhk::sphere_rule(q, degree);
    EXPECT_EQ(rule.exact_degree(), degree);
    const auto exps = exps_up_to(degree / 2 + 1, q);
    for (const auto& a : exps)
      for (const auto& b : exps) {
        int tot = 0;
        for (int j = 0; j < q; ++j) tot += a[j] + b[j];
        if (tot > degree) continue;
        const cplx got = fhk::integrate([&](Z z) { return monomial(z, a, b); }, rule);
        const double want = oracle::sphere_moment(a, b);
        EXPECT_NEAR(std::abs(got - want), 0.0, 1e-10 * std::max(1.0, want)) << "q=" << q;
      }
  }
}

TEST(SphereRule, NodesOnSphere) {
  const auto rule = fhk::sphere_rule(3, 6);
  for (std::size_t i = 0; i < rule.size(); ++i) EXPECT_NEAR(fhk::norm_sq(rule.node(i)), 1.0, 1e-12);
  for (double w : rule.weights()) EXPECT_GT(w, 0.0);
}

TEST(BallRule, Examples) {
  EXPECT_NEAR(fhk::ball_rule(1, 2).weight_sum(), kPi, 1e-14);
  EXPECT_NEAR(fhk::ball_rule(2, 2).weight_sum(), kPi * kPi / 2, 1e-14);
  EXPECT_NEAR(fhk::integrate([](Z z) { return cplx(std::norm(z[0])); }, fhk::ball_rule(1, 2)).real(), kPi / 2,
              1e-14);
}

TEST(BallRule, MonomialExactness) {
  for (int q = 1; q <= 3; ++q) {
    const auto rule = fhk::ball_rule(q, 6);
    const auto exps = exps_up_to(3, q);
    for (const auto& a : exps)
      for (const auto& b : exps) {
        int tot = 0;
        for (int j = 0; j < q; ++j) tot += a[j] + b[j];
        if (tot > 6) continue;
        const cplx got = fhk::integrate([&](Z z) { return monomial(z, a, b); }, rule);
        EXPECT_NEAR(std::abs(got - oracle::ball_moment(a, b)), 0.0, 1e-12);
      }
    for (std::size_t i = 0; i < rule.size(); ++i) EXPECT_LE(fhk::norm_sq(rule.node(i)), 1.0 + 1e-12);
  }
}

TEST(CylinderRule, Examples) {
  EXPECT_NEAR(fhk::cylinder_rule(2, 2).weight_sum(), 2 * kPi * kPi, 1e-13);
  EXPECT_NEAR(fhk::cylinder_rule(3, 2).weight_sum(), kPi * kPi * kPi, 1e-13);
  const auto c = fhk::cylinder_rule(2, 3);
  EXPECT_NEAR(std::abs(fhk::integrate([](Z node) { return node.back(); }, c)), 0.0, 1e-14);
  EXPECT_THROW(fhk::cylinder_rule(1, 2), fhk::ParameterError);
}

TEST(CylinderRule, PointsLandOnSphere) {
  const auto c = fhk::cylinder_rule(3, 4);
  std::vector<cplx> out(3);
  for (std::size_t i = 0; i < c.size(); ++i) {
    fhk::cylinder_point(c.node(i), out);
    EXPECT_NEAR(fhk::norm_sq(out), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(out[2] - fhk::cylinder_disk_argument(c.node(i))), 0.0, 1e-15);
  }
}

TEST(Masses, AllDeclaredMatchClosedForms) {
  for (int q = 2; q <= 4; ++q) {
    for (const QuadratureRule& r : {fhk::sphere_rule(q, 4), fhk::ball_rule(q, 4), fhk::cylinder_rule(q, 4),
                                    fhk::disk_rule_nu(q, 3, 5)}) {
      EXPECT_NEAR(r.weight_sum() / r.measure_mass(), 1.0, 1e-12) << fhk::to_string(r.domain());
    }
    EXPECT_NEAR(fhk::sphere_rule(q, 4).measure_mass() / oracle::sphere_area(q), 1.0, 1e-14);
    EXPECT_NEAR(fhk::ball_rule(q, 4).measure_mass() / oracle::ball_volume(q), 1.0, 1e-14);
    EXPECT_NEAR(fhk::cylinder_rule(q, 4).measure_mass() / (2 * kPi * oracle::ball_volume(q - 1)), 1.0, 1e-14);
  }
}

TEST(Frame, Examples) {
  const auto id = fhk::frame_from_pole(ComplexPoint::unit(3, 2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(id(i, j) - (i == j ? 1.0 : 0.0)), 0.0, 1e-15);
  const auto e1 = fhk::frame_from_pole(ComplexPoint::unit(3, 0));
  const auto img = e1.apply(ComplexPoint::unit(3, 2));
  EXPECT_NEAR(std::abs(img[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(img[1]) + std::abs(img[2]), 0.0, 1e-15);
  EXPECT_THROW(fhk::frame_from_pole(ComplexPoint{cplx(2.0), cplx(0.0)}), fhk::DomainError);
}

TEST(FrameProperty, UnitaryAndMapsPole) {
  std::mt19937_64 g(3);
  for (int q = 1; q <= 6; ++q)
    for (int s = 0; s < 20; ++s) {
      const ComplexPoint w = random_sphere(g, q);
      const auto u = fhk::frame_from_pole(w);
      EXPECT_LT(u.unitarity_residual(), 1e-12);
      const auto img = u.apply(ComplexPoint::unit(q, q - 1));
      for (int j = 0; j < q; ++j) EXPECT_NEAR(std::abs(img[j] - w[j]), 0.0, 1e-12);
      // gauge by a diagonal phase on the first q-1 coordinates
      std::vector<cplx> v((q - 1) * (q - 1), 0.0);
      for (int j = 0; j < q - 1; ++j) v[j * (q - 1) + j] = std::polar(1.0, 0.7 * (j + 1));
      const auto ug = u.with_gauge(v);
      EXPECT_LT(ug.unitarity_residual(), 1e-12);
      const auto img2 = ug.apply(ComplexPoint::unit(q, q - 1));
      for (int j = 0; j < q; ++j) EXPECT_NEAR(std::abs(img2[j] - w[j]), 0.0, 1e-12);
    }
}

TEST(Integrate, ZeroOneAndNonFinite) {
  const auto s = fhk::sphere_rule(2, 2);
  EXPECT_NEAR(fhk::integrate([](Z) { return cplx(1.0); }, s).real(), 2 * kPi * kPi, 1e-13);
  EXPECT_EQ(fhk::integrate([](Z) { return cplx(0.0); }, s), cplx(0.0));
  try {
    fhk::integrate([](Z z) { return z[0].real() > 0.5 ? cplx(std::nan("")) : cplx(1.0); }, s);
    FAIL() << "expected EvaluationError";
  } catch (const fhk::EvaluationError& e) {
    EXPECT_LT(e.node(), s.size());
    EXPECT_GT(fhk::norm_sq(s.node(e.node())), 0.0);
  }
}

TEST(Integrate, ThreadCountDoesNotChangeBits) {
  const auto s = fhk::sphere_rule(3, 10);
  auto f = [](Z z) { return std::exp(z[0]) * std::conj(z[1]) + std::norm(z[2]); };
  const cplx one = fhk::integrate(f, s, 1);
  for (int t : {2, 3, 4, 7}) {
    const cplx other = fhk::integrate(f, s, t);
    EXPECT_EQ(one.real(), other.real());
    EXPECT_EQ(one.imag(), other.imag());
  }
}

TEST(Integrate, DeterministicRules) {
  EXPECT_EQ(fhk::sphere_rule(3, 5), fhk::sphere_rule(3, 5));
  EXPECT_EQ(fhk::cylinder_rule(3, 5), fhk::cylinder_rule(3, 5));
}

TEST(PoleInvariance, Examples) {
  for (int q = 2; q <= 4; ++q) {
    EXPECT_EQ(fhk::pole_invariance_residual([](Z) { return cplx(1.0); }, ComplexPoint::unit(q, q - 1),
                                            ComplexPoint::unit(q, 0), q, 2),
              0.0);
  }
  auto zq2 = [](Z z) { return cplx(std::norm(z[1])); };
  EXPECT_LT(fhk::pole_invariance_residual(zq2, ComplexPoint::unit(2, 1), ComplexPoint::unit(2, 0), 2, 2), 1e-10);
  std::mt19937_64 g(5);
  for (int q = 2; q <= 4; ++q) {
    auto f = [](Z z) { return z[0] * z[0] * std::conj(z[1]) * std::conj(z[1]) + std::norm(z[0]) * z[1]; };
    const ComplexPoint w1 = random_sphere(g, q), w2 = random_sphere(g, q);
    EXPECT_LT(fhk::pole_invariance_residual(f, w1, w2, q, 4), 1e-10);
  }
}

TEST(RuleJson, RoundTrip) {
  const auto r = fhk::cylinder_rule(2, 3);
  const auto back = fhk::rule_from_json(fhk::rule_to_json(r));
  EXPECT_EQ(back, r);
  EXPECT_THROW(fhk::rule_from_json("{\"schema_version\": 99}"), fhk::ParameterError);
  EXPECT_THROW(fhk::rule_from_json("not json"), fhk::ParameterError);
}

TEST(DomainNames, RoundTrip) {
  for (auto d : {fhk::Domain::circle, fhk::Domain::disk_nu, fhk::Domain::sphere, fhk::Domain::ball,
                 fhk::Domain::cylinder, fhk::Domain::subsphere})
    EXPECT_EQ(fhk::domain_from_string(fhk::to_string(d)), d);
  EXPECT_THROW(fhk::domain_from_string("torus"), fhk::ParameterError);
}
