#include <gtest/gtest.h>

#include <random>

#include "qsos/errors.hpp"
#include "qsos/phi.hpp"

using namespace qsos;

namespace {

RPoly rp(std::initializer_list<long> desc) {
  std::vector<Rational> v;
  for (long c : desc) v.emplace_back(c);
  return RPoly(v);
}

RPoly random_poly(std::mt19937& rng, int n, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Rational> v(n + 1);
  for (auto& c : v) c = d(rng);
  return RPoly(v);
}

RForm rf(std::initializer_list<long> desc) { return RForm::homogenize(rp(desc), static_cast<int>(desc.size()) - 1); }

Rational Q(long v) { return Rational(v); }

}  // namespace

TEST(Phi, TwoTwoIsDeterminant) {
  std::mt19937 rng(11);
  for (int it = 0; it < 20; ++it) {
    RPoly f = random_poly(rng, 2), g = random_poly(rng, 2), h = random_poly(rng, 2);
    if (f.degree() < 1) continue;
    Matrix<Rational> m(3, 3);
    for (int k = 0; k < 3; ++k) {
      m(k, 0) = f[k];
      m(k, 1) = g[k];
      m(k, 2) = h[k];
    }
    EXPECT_EQ(phi(f, g, h, 2, 2), determinant(m));
  }
}

TEST(Phi, TwoThreeExpansion) {
  std::mt19937 rng(12);
  for (int it = 0; it < 20; ++it) {
    RPoly f = random_poly(rng, 2), g = random_poly(rng, 3), h = random_poly(rng, 3);
    if (f.degree() < 1) continue;
    auto a = [&](int k) { return f[k]; };
    auto b = [&](int k) { return g[k]; };
    auto c = [&](int k) { return h[k]; };
    Rational e = a(0) * a(0) * b(2) * c(3) - a(0) * a(2) * b(2) * c(1) + a(1) * a(2) * b(2) * c(0) -
                 a(0) * a(1) * b(1) * c(3) + a(1) * a(1) * b(0) * c(3) - a(0) * a(2) * b(0) * c(3) +
                 a(2) * a(2) * b(0) * c(1) - a(0) * a(0) * b(3) * c(2) + a(0) * a(2) * b(1) * c(2) -
                 a(1) * a(2) * b(0) * c(2) + a(0) * a(1) * b(3) * c(1) - a(1) * a(1) * b(3) * c(0) +
                 a(0) * a(2) * b(3) * c(0) - a(2) * a(2) * b(1) * c(0);
    EXPECT_EQ(phi(f, g, h, 2, 3), e);
  }
}

TEST(Phi, LeadingPowerIsSharp) {
  // g = x^(n-1)(b0 x + b1), h = x^(n-1)(c0 x + c1).
  std::mt19937 rng(13);
  for (auto [m, n] : {std::pair{3, 2}, {4, 3}, {3, 4}}) {
    RPoly f = random_poly(rng, m, 1, 6);
    RPoly g = RPoly::monomial(Q(1), n - 1) * rp({2, -3}), h = RPoly::monomial(Q(1), n - 1) * rp({5, 1});
    Rational am = f.coeff(0), bc = Q(2 * 1 - (-3) * 5);
    Rational expect = 1;
    for (int k = 0; k < (m - 1) * (n - 1); ++k) expect *= am;
    for (int k = 0; k < m * (m - 1) / 2; ++k) expect *= bc;
    EXPECT_EQ(phi(f, g, h, m, n), expect) << m << "," << n;
  }
}

TEST(Phi, MultidegreeLaw) {
  std::mt19937 rng(14);
  const int m = 3, n = 3;
  RPoly f = random_poly(rng, m, 1, 5), g = random_poly(rng, n), h = random_poly(rng, n);
  const Rational base = phi(f, g, h, m, n);
  for (Rational lam : {Q(2), Q(-3), Rational(1, 5)}) {
    Rational p1 = 1, p2 = 1;
    for (int k = 0; k < (m - 1) * (n - 1); ++k) p1 *= lam;
    for (int k = 0; k < m * (m - 1) / 2; ++k) p2 *= lam;
    EXPECT_EQ(phi(f * lam, g, h, m, n), p1 * base);
    EXPECT_EQ(phi(f, g * lam, h, m, n), p2 * base);
    EXPECT_EQ(phi(f, g, h * lam, m, n), p2 * base);
  }
}

TEST(Phi, ResultantRelation) {
  std::mt19937 rng(15);
  for (int it = 0; it < 5; ++it) {
    const int m = 3, n = 2, d = 2;
    RPoly f = random_poly(rng, m, -4, 4), g = random_poly(rng, n), h = random_poly(rng, n), p = random_poly(rng, d);
    if (f.degree() < m) continue;
    Rational r = resultant(f, p, m, d), rm = r * r;
    EXPECT_EQ(phi(f, (p * g).with_nominal_degree(n + d), (p * h).with_nominal_degree(n + d), m, n + d),
              rm * phi(f, g, h, m, n));
  }
}

TEST(Phi, DegenerateInputsInterpolate) {
  // Repeated root and a dropped leading coefficient.
  RPoly f = rp({1, -2, 1}).with_nominal_degree(3);  // x^2 - 2x + 1 as a cubic
  RPoly g = rp({1, 0, 3}), h = rp({2, 1, -1});
  PhiStats st;
  Rational v = phi(f, g, h, 3, 2, {}, &st);
  EXPECT_GT(st.samples, 0);
  // Cross-check against the determinant formula after the Q-linear change x -> x.
  // Phi_{3,2} is a polynomial; compare with a direct perturbation limit.
  Rational limit = 0;
  std::vector<std::pair<long, Rational>> pts;
  for (long s = 1; s <= 3; ++s) pts.emplace_back(s, phi(f + rp({1, 0, 0, 1}) * Q(s), g, h, 3, 2));
  for (std::size_t k = 0; k < pts.size(); ++k) {
    Rational w = 1;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != k) w *= Rational(-pts[j].first) / Rational(pts[k].first - pts[j].first);
    limit += w * pts[k].second;
  }
  limit.canonicalize();
  EXPECT_EQ(v, limit);
}

TEST(Phi, SquareRouteAgrees) {
  std::mt19937 rng(16);
  int checked = 0;
  for (int it = 0; it < 15; ++it) {
    RPoly f = random_poly(rng, 4, -6, 6), g = random_poly(rng, 3), h = random_poly(rng, 3);
    if (f.degree() < 4 || sgn(disc(f, 4)) == 0) continue;
    auto v = phi_via_square(f, g, h, 4, 3);
    if (!v) continue;
    EXPECT_EQ(*v, phi(f, g, h, 4, 3));
    ++checked;
  }
  EXPECT_GT(checked, 5);
}

TEST(Phi, PsiVanishesOnDoubleRoots) {
  RPoly f = rp({1, 0, -1}) * rp({1, -1});  // (x^2 - 1)(x - 1)
  EXPECT_EQ(psi(f, rp({1, 1}), rp({1, 2}), 3, 1), Q(0));
  RPoly s = rp({1, 0, -2});
  EXPECT_NE(psi(s, rp({1, 0}), rp({0, 1}), 2, 1), Q(0));
}

TEST(Phi, ApproxMatchesExact) {
  RPoly f = rp({2, -1, 3, 5}), g = rp({1, 0, 2, -1}), h = rp({3, 1, 0, 4});
  const double exact = phi(f, g, h, 3, 3).get_d();
  EXPECT_NEAR(phi_approx(to_double(f), to_double(g), to_double(h), 3, 3), exact, 1e-9 * std::abs(exact));
}

TEST(Covariants, ExampleValues) {
  const RPoly f2 = rp({1, -1, 1}), f3 = rp({1, 0, -1}).with_nominal_degree(3), f4 = rp({1, 0, 0, 0, 1});
  EXPECT_EQ(g_ij(f2, f3, 2, 3), rp({-2, -1, 10, -3}));
  const RPoly g24 = g_ij(f2, f4, 2, 4), g34 = g_ij(f3, f4, 3, 4), g23 = g_ij(f2, f3, 2, 3);
  // Syzygy among the three covariants.
  EXPECT_TRUE((f2 * g34 * Q(2) - f3 * g24 * Q(3) + f4 * g23 * Q(4)).is_zero());
  const auto pqr = build_PQR(f2, f3, f4);
  EXPECT_EQ(pqr.P, rp({-24, 60, 0, -64, 56, -20, -144, 88, -16}));
  EXPECT_EQ(pqr.P.nominal_degree(), 8);
  EXPECT_EQ(pqr.Q.nominal_degree(), 18);
  EXPECT_EQ(pqr.R.nominal_degree(), 9);
}

TEST(Genericity, ExampleAvoidsAllConditions) {
  const RForm f2 = rf({1, -1, 1}), f3 = rf({0, 1, 0, -1}), f4 = rf({1, 0, 0, 0, 1});
  GenericityOptions opt;
  opt.include_e10 = false;
  auto r = genericity(f2, f3, f4, opt);
  EXPECT_TRUE(r.generic()) << r.first_violation();
  EXPECT_EQ(r.witness[7], "56");
  auto a = genericity_advisory(to_double(f2), to_double(f3), to_double(f4));
  EXPECT_TRUE(a.generic()) << a.first_violation();
}

TEST(Genericity, DetectsViolations) {
  // f2 = (x - y)^2: E1.
  auto r1 = genericity(rf({1, -2, 1}), rf({1, 0, -1, 0}), rf({1, 0, 0, 0, 1}), {false});
  EXPECT_TRUE(r1.flags[0]);
  EXPECT_EQ(r1.first_violation(), "E1");
  // f3 = f2 * x: E2.
  auto r2 = genericity(rf({1, -1, 1}), rf({1, -1, 1, 0}), rf({1, 0, 0, 0, 1}), {false});
  EXPECT_TRUE(r2.flags[1]);
  // f3 and f4 share the root x = y: E5.
  auto r5 = genericity(rf({1, -1, 1}), rf({1, 0, -1, 0}), rf({1, 0, 0, 0, -1}), {false});
  EXPECT_TRUE(r5.flags[4]);
  auto a5 = genericity_advisory(DForm{1, -1, 1}, DForm{1, 0, -1, 0}, DForm{1, 0, 0, 0, -1});
  EXPECT_TRUE(a5.flags[4]);
}

TEST(Genericity, ExampleE10Value) {
  const RPoly f2 = rp({1, -1, 1}), f3 = rp({1, 0, -1}).with_nominal_degree(3), f4 = rp({1, 0, 0, 0, 1});
  const auto pqr = build_PQR(f2, f3, f4);
  PhiStats st;
  const Rational v = phi(pqr.P, pqr.Q, (pqr.R * pqr.R).with_nominal_degree(18), 8, 18, {}, &st);
  Integer expect = -1;
  auto mulp = [&](long p, unsigned long e) {
    Integer t;
    mpz_ui_pow_ui(t.get_mpz_t(), p, e);
    expect *= t;
  };
  mulp(2, 713);
  mulp(3, 33);
  for (long p : {179L, 233L, 641L, 1531L, 4093L, 11273L}) mulp(p, 1);
  mulp(29983, 7);
  mulp(342841, 14);
  expect *= Integer("66617977107707");
  EXPECT_EQ(v, Rational(expect));
  EXPECT_TRUE(st.cross_checked);
}
