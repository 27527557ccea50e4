#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <random>

#include "qsos/realzero.hpp"

using namespace qsos;

namespace {

RForm rf(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RForm(v);
}

double fnorm(const DForm& f) { return coeff_norm(f.dehomogenize()); }

// Sum of three squares of random (v_i z + w_i): a psd form with a zero at (0,0,1).
RRealZeroForm random_real_zero(std::mt19937& rng) {
  std::uniform_int_distribution<long> d(-4, 4);
  RRealZeroForm f{RForm::zero(2), RForm::zero(3), RForm::zero(4)};
  for (int i = 0; i < 3; ++i) {
    RForm v = rf({d(rng), d(rng)}), w = rf({d(rng), d(rng), d(rng)});
    f.f2 = f.f2 + v * v;
    f.f3 = f.f3 + Rational(2) * v * w;
    f.f4 = f.f4 + w * w;
  }
  return f;
}

std::array<std::array<double, 3>, 3> random_rotation(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = g(rng);
  Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(a).householderQ();
  std::array<std::array<double, 3>, 3> s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = q(i, j);
  return s;
}

}  // namespace

TEST(Decompose, ConstructedExample) {
  RRealZeroForm f{rf({1, 0, 1}), rf({0, 0, 2, 0}), rf({1, 0, 0, 0, 1})};
  SosTriple t = decompose(f);
  EXPECT_LE(residual(to_ternary(to_double(f)), t), 1e-10);
  ASSERT_TRUE(t.witness.has_value());
}

TEST(Decompose, ZeroF2) {
  RRealZeroForm f{RForm::zero(2), RForm::zero(3), rf({1, 0, 0, 0, 1})};
  SosTriple t = decompose(f);
  EXPECT_LE(residual(to_ternary(to_double(f)), t), 1e-12);
  EXPECT_TRUE(t.p[2].is_zero());
}

TEST(Decompose, SquareF2) {
  // f2 = x^2, f3 = 2 x y^2, f4 = x^4 + y^4: (xz + y^2)^2 + (x^2)^2.
  RRealZeroForm f{rf({1, 0, 0}), rf({0, 0, 2, 0}), rf({1, 0, 0, 0, 1})};
  SosTriple t = decompose(f);
  EXPECT_LE(residual(to_ternary(to_double(f)), t), 1e-10);
  // 4 l^2 (f4 - g2^2) = 4 f2 f4 - f3^2 with l = x, g2 = y^2.
  RForm l = rf({1, 0}), g2 = rf({0, 0, 1});
  EXPECT_EQ(Rational(4) * l * l * (f.f4 - g2 * g2), f.f6());
}

TEST(Decompose, RejectsNonPsd) {
  RRealZeroForm f{rf({1, 0, -1}), RForm::zero(3), rf({1, 0, 0, 0, 1})};
  EXPECT_THROW(decompose(f), NotPsdError);
}

TEST(Decompose, PairIdentities) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    RRealZeroForm f = random_real_zero(rng);
    if (sgn(disc(f.f2)) == 0) continue;
    SosTriple t = decompose(f);
    const RealZeroForm fd = to_double(f);
    const DForm l1{t.p[1].coeff(1, 0, 1), t.p[1].coeff(0, 1, 1)}, l2{t.p[2].coeff(1, 0, 1), t.p[2].coeff(0, 1, 1)};
    const DForm h1 = t.p[1].z_slice(0), h2 = t.p[2].z_slice(0);
    const DForm& xi = t.witness->first;
    const double s = 1.0 + fnorm(fd.f4);
    EXPECT_LE(fnorm(h1 * l1 + h2 * l2 - 0.5 * fd.f3), 1e-9 * s);
    EXPECT_LE(fnorm(h1 * h1 + h2 * h2 - (fd.f4 - 0.25 * xi * xi)), 1e-9 * s);
  }
}

TEST(Classes, SquareF2IsE1) {
  RRealZeroForm f{rf({1, 0, 0}), rf({0, 0, 2, 0}), rf({1, 0, 0, 0, 1})};
  try {
    classes(f);
    FAIL();
  } catch (const GenericityError& e) {
    EXPECT_EQ(e.condition(), "E1");
  }
}

TEST(Classes, RandomGenericHaveFour) {
  std::mt19937 rng(99);
  int tested = 0;
  for (int trial = 0; trial < 40; ++trial) {
    RRealZeroForm f = random_real_zero(rng);
    if (sgn(disc(f.f2)) == 0 || divides(f.f2, f.f3) || sgn(disc(f.f6())) == 0) continue;
    ++tested;
    const RealZeroForm fd = to_double(f);
    auto cls = classes(f);
    ASSERT_EQ(cls.size(), 4u);
    std::vector<std::pair<DForm, DForm>> inv;
    for (const auto& t : cls) {
      EXPECT_LE(residual(to_ternary(fd), t), 1e-8 * (1.0 + max_norm(to_ternary(fd))));
      auto [xi2, eta2] = invariant_of_representation(t, fd);
      const DForm& xi = t.witness->first;
      const DForm& eta = t.witness->second;
      EXPECT_LE(fnorm(xi2 - xi * xi), 1e-7 * (1.0 + fnorm(xi2)));
      EXPECT_LE(fnorm(eta2 - eta * eta), 1e-7 * (1.0 + fnorm(eta2)));
      auto [m2, e2] = invariant_of_representation(mix(t, random_rotation(rng)), fd);
      EXPECT_LE(fnorm(m2 - xi2), 1e-7 * (1.0 + fnorm(xi2)));
      EXPECT_LE(fnorm(e2 - eta2), 1e-7 * (1.0 + fnorm(eta2)));
      inv.emplace_back(xi2, eta2);
    }
    for (std::size_t i = 0; i < inv.size(); ++i)
      for (std::size_t j = i + 1; j < inv.size(); ++j)
        EXPECT_GT(fnorm(inv[i].first - inv[j].first) + fnorm(inv[i].second - inv[j].second), 1e-6);
  }
  EXPECT_GT(tested, 20);
}

TEST(Classes, FloatPathAgrees) {
  std::mt19937 rng(12);
  RRealZeroForm f = random_real_zero(rng);
  while (sgn(disc(f.f2)) == 0 || divides(f.f2, f.f3) || sgn(disc(f.f6())) == 0) f = random_real_zero(rng);
  EXPECT_EQ(classes(to_double(f)).size(), 4u);
}

TEST(TwoSquares, QuarticWithRootAtInfinity) {
  DForm f{0.0, 0.0, 1.0, 0.0, 4.0};  // y^2 (x^2 + 4 y^2)
  auto [a, b] = two_squares(f);
  EXPECT_LE(fnorm(a * a + b * b - f), 1e-12);
}
