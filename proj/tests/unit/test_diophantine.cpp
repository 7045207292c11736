#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracdecay/dimension.hpp"
#include "fracdecay/diophantine.hpp"
#include "fracdecay/errors.hpp"
#include "fracdecay/luroth.hpp"
#include "fracdecay/rational.hpp"

using namespace fracdecay;

namespace {

constexpr double kL23 = 189369098.58724383;
constexpr double kL24 = 262627065.59234096;
constexpr double kLogC23 = -86305744.498959601;
constexpr double kLogC32 = -445997574.14332791;

AuxiliaryMeasure luroth_lambda() { return auxiliary_measure(natural_measure(luroth_ifs({2, 3}))); }

}  // namespace

TEST(AuxiliaryMeasure, Construction) {
  const auto single = auxiliary_measure(WeightedIFS::uniform({{0.25, 0.1}}));
  ASSERT_EQ(single.atoms().size(), 1u);
  EXPECT_DOUBLE_EQ(single.sigma(), std::log(4.0));

  const auto l = luroth_lambda();
  ASSERT_EQ(l.atoms().size(), 2u);
  EXPECT_DOUBLE_EQ(l.atoms()[0].location, std::log(2.0));
  EXPECT_DOUBLE_EQ(l.atoms()[1].location, std::log(6.0));
  EXPECT_NEAR(l.atoms()[0].mass, 0.659311955892103027, 1e-15);
  EXPECT_NEAR(l.sigma(), 1.0674312524191839, 1e-15);

  const auto merged = auxiliary_measure(WeightedIFS::uniform({{0.5, 0.0}, {0.5, 0.5}}));
  ASSERT_EQ(merged.atoms().size(), 1u);
  EXPECT_DOUBLE_EQ(merged.atoms()[0].mass, 1.0);
}

TEST(AuxiliaryMeasure, Validation) {
  EXPECT_THROW(AuxiliaryMeasure({}), InputError);
  EXPECT_THROW(AuxiliaryMeasure({{1.0, 0.5}}), InputError);
  EXPECT_THROW(AuxiliaryMeasure({{-1.0, 1.0}}), InputError);
  EXPECT_THROW(AuxiliaryMeasure({{1.0, 1.2}, {2.0, -0.2}}), InputError);
  const AuxiliaryMeasure m({{2.0, 0.25}, {1.0, 0.75}});
  EXPECT_EQ(m.atoms()[0].location, 1.0);
  EXPECT_EQ(m.survival(0.5), 1.0);
  EXPECT_EQ(m.survival(1.0), 0.25);
  EXPECT_EQ(m.survival(2.0), 0.0);
}

TEST(LaplaceTransform, Examples) {
  const auto l = luroth_lambda();
  EXPECT_NEAR(std::abs(laplace_transform(l, 0.0) - 1.0), 0.0, 1e-15);
  const AuxiliaryMeasure single({{0.7, 1.0}});
  const auto v = laplace_transform(single, {0.0, 3.0});
  EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
  EXPECT_NEAR(std::arg(v), -2.1, 1e-15);
  const auto& a = l.atoms();
  const auto direct = a[0].mass * std::exp(std::complex<double>(0, -std::log(2.0))) +
                      a[1].mass * std::exp(std::complex<double>(0, -std::log(6.0)));
  EXPECT_NEAR(std::abs(laplace_transform(l, {0.0, 1.0}) - direct), 0.0, 1e-15);
}

TEST(LaplaceTransform, ModulusAtMostOne) {
  const auto l = luroth_lambda();
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> b(-1e4, 1e4);
  for (int k = 0; k < 1000; ++k) EXPECT_LE(std::abs(laplace_transform(l, {0.0, b(rng)})), 1.0 + 1e-15);
}

TEST(WeaklyDiophantineScan, LatticeCancellationIsFound) {
  const AuxiliaryMeasure lattice({{std::log(2.0), 0.5}, {std::log(4.0), 0.5}});
  const auto r = weakly_diophantine_scan(lattice, 2.0, 100.0, 1000);
  EXPECT_LT(r.minimum.scaled, 1e-9);
  const double spacing = 2 * std::numbers::pi / std::log(2.0);
  const double k = std::round(r.minimum.b / spacing);
  EXPECT_NEAR(r.minimum.b, k * spacing, 1e-6);
  EXPECT_TRUE(r.lattice);
}

TEST(WeaklyDiophantineScan, SingleAtomZero) {
  const AuxiliaryMeasure single({{1.3, 1.0}});
  const auto r = weakly_diophantine_scan(single, 1.0, 50.0, 200);
  EXPECT_LT(r.minimum.abs_one_minus_L, 1e-14);
  EXPECT_NEAR(std::fmod(r.minimum.b, 2 * std::numbers::pi / 1.3), 0.0, 1e-6);
}

TEST(WeaklyDiophantineScan, LurothIsPositive) {
  const double l = 2 * matveev_degree(2, 3) - 2;
  const auto r = weakly_diophantine_scan(luroth_lambda(), l, 1e4, 20000);
  EXPECT_GT(r.minimum.abs_one_minus_L, 0.0);
  EXPECT_TRUE(std::isfinite(r.minimum.log_scaled));
  EXPECT_FALSE(r.lattice);
  for (const auto& p : r.scan) {
    EXPECT_GE(p.abs_one_minus_L, 0.0);
    EXPECT_GE(p.scaled, 0.0);
  }
}

TEST(WeaklyDiophantineScan, MonotoneInExponent) {
  const auto lo = weakly_diophantine_scan(luroth_lambda(), 2.0, 500.0, 2000);
  const auto hi = weakly_diophantine_scan(luroth_lambda(), 3.0, 500.0, 2000);
  ASSERT_EQ(lo.scan.size(), hi.scan.size());
  for (std::size_t i = 0; i < lo.scan.size(); ++i) {
    if (lo.scan[i].b > 1.0) EXPECT_GE(hi.scan[i].scaled, lo.scan[i].scaled);
  }
}

TEST(WeaklyDiophantineScan, Validation) {
  EXPECT_THROW(weakly_diophantine_scan(luroth_lambda(), 0.0, 10.0, 10), InputError);
  EXPECT_THROW(weakly_diophantine_scan(luroth_lambda(), 2.0, 1.0, 10), InputError);
}

TEST(ContinuedFraction, RationalTerminates) {
  const auto cf = continued_fraction_expansion(0.5, 10);
  EXPECT_EQ(cf.quotients, std::vector<std::int64_t>{2});
  EXPECT_TRUE(cf.terminating);
  const auto third = continued_fraction_expansion(1.0 / 3.0, 10);
  EXPECT_TRUE(third.terminating);
  EXPECT_EQ(third.quotients.front(), 3);
  EXPECT_EQ(third.convergents.back().q, 3);
}

TEST(ContinuedFraction, SilverRatio) {
  const auto cf = continued_fraction_expansion(std::sqrt(2.0) - 1.0, 15);
  ASSERT_EQ(cf.quotients.size(), 15u);
  for (auto a : cf.quotients) EXPECT_EQ(a, 2);
  EXPECT_FALSE(cf.terminating);
}

TEST(ContinuedFraction, LogRatio) {
  const double theta = std::log(2.0) / std::log(6.0);
  const auto cf = continued_fraction_expansion(theta, 20);
  // Exact expansion of the stored double; it leaves the expansion of the real
  // log 2 / log 6 (..., 4, 3, 1, 1, 15, ...) after 17 quotients.
  const std::vector<std::int64_t> of_double{2, 1, 1, 2, 2, 3, 1, 5, 2, 23, 2, 2, 1, 1, 55, 1, 4, 1, 1, 2};
  const std::vector<std::int64_t> of_real{2, 1, 1, 2, 2, 3, 1, 5, 2, 23, 2, 2, 1, 1, 55, 1, 4};
  EXPECT_EQ(cf.quotients, of_double);
  EXPECT_TRUE(std::equal(of_real.begin(), of_real.end(), cf.quotients.begin()));
  const Rational exact = exact_rational(theta);
  for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
    const auto& c = cf.convergents[k];
    const Rational err = exact - Rational(c.p, c.q);
    const Rational abs_err = err < 0 ? Rational(-err) : err;
    EXPECT_TRUE(abs_err < Rational(1, BigInt(c.q) * c.q)) << k;
    if (k + 1 < cf.convergents.size()) {
      const auto& next = cf.convergents[k + 1];
      EXPECT_TRUE(abs_err < Rational(1, BigInt(c.q) * next.q)) << k;
      const Rational next_err = exact - Rational(next.p, next.q);
      EXPECT_TRUE((err < 0) != (next_err < 0)) << k;
    }
  }
}

TEST(ContinuedFraction, PrecisionGuard) {
  const auto cf = continued_fraction_expansion(std::log(2.0) / std::log(6.0), 200);
  EXPECT_TRUE(cf.precision_exhausted);
  EXPECT_LE(cf.convergents.back().q, std::int64_t{1} << 50);
  EXPECT_THROW(continued_fraction_expansion(0.0, 5), InputError);
  EXPECT_THROW(continued_fraction_expansion(1.0, 5), InputError);
}

TEST(LatticeTest, Examples) {
  EXPECT_TRUE(lattice_test(AuxiliaryMeasure({{std::log(2.0), 0.3}, {std::log(4.0), 0.7}})));
  EXPECT_TRUE(lattice_test(AuxiliaryMeasure({{1.0, 1.0}})));
  EXPECT_FALSE(lattice_test(luroth_lambda()));
  EXPECT_EQ(classify_lattice(luroth_lambda()), LatticeVerdict::non_lattice);
  EXPECT_TRUE(lattice_test(AuxiliaryMeasure({{0.3, 0.5}, {0.7, 0.25}, {1.1, 0.25}})));
}

TEST(Matveev, DegreeValues) {
  EXPECT_GT(matveev_degree(2, 3), 189369098.0);
  EXPECT_LT(matveev_degree(2, 3), 1.9e8);
  EXPECT_NEAR(matveev_degree(2, 3), kL23, kL23 * 1e-14);
  EXPECT_NEAR(matveev_degree(2, 4), kL24, kL24 * 1e-14);
  EXPECT_LT(matveev_degree(2, 3), matveev_degree(2, 4));
  EXPECT_EQ(matveev_degree(2, 3), matveev_degree(3, 2));
  EXPECT_THROW(matveev_degree(3, 3), InputError);
  EXPECT_THROW(matveev_degree(1, 3), InputError);
}

TEST(Matveev, DegreeIsMonotoneAndLarge) {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<std::int64_t> digit(2, 1000);
  for (int k = 0; k < 200; ++k) {
    const auto a1 = digit(rng), a2 = digit(rng);
    if (a1 == a2) continue;
    EXPECT_GE(matveev_degree(a1, a2), matveev_degree(2, 3));
    EXPECT_LT(matveev_degree(a1, a2), matveev_degree(a1, a2 + 1 == a1 ? a2 + 2 : a2 + 1));
  }
}

TEST(Matveev, LogConstant) {
  EXPECT_NEAR(matveev_log_constant(2, 3), kLogC23, std::abs(kLogC23) * 1e-13);
  EXPECT_NEAR(matveev_log_constant(3, 2), kLogC32, std::abs(kLogC32) * 1e-13);
  EXPECT_NE(matveev_log_constant(2, 3), matveev_log_constant(3, 2));
  EXPECT_LT(matveev_log_constant(2, 3), -1e7);
  EXPECT_GT(matveev_log_constant(2, 3), -1e8);
  // Pieces: -log log(a2(a2-1)) and the exponent term, whose log factor is
  // negative exactly when 3e log(a1(a1-1)) < 2 log(a2(a2-1)).
  auto piece = [](double a1, double a2) {
    return std::log(3 * std::numbers::e * std::log(a1 * (a1 - 1)) / (2 * std::log(a2 * (a2 - 1))));
  };
  EXPECT_GT(piece(2, 3), 0.0);
  EXPECT_GT(piece(3, 2), 0.0);
  EXPECT_LT(piece(2, 10), 0.0);
  EXPECT_NEAR(matveev_log_constant(2, 3), -std::log(std::log(6.0)) - (matveev_degree(2, 3) - 1) * piece(2, 3), 1.0);
  EXPECT_GT(matveev_log_constant(2, 10), 0.0);
  EXPECT_THROW(matveev_log_constant(2, 2), InputError);
}

TEST(PerfectPowers, IntegerRoot) {
  EXPECT_EQ(integer_root(1000000000000000000ULL, 2), 1000000000ULL);
  EXPECT_EQ(integer_root(999999999999999999ULL, 2), 999999999ULL);
  EXPECT_EQ(integer_root(1ULL << 63, 3), 2097152ULL);
  EXPECT_EQ(integer_root(18446744073709551615ULL, 2), 4294967295ULL);
  EXPECT_EQ(integer_root(80, 4), 2ULL);
  EXPECT_EQ(integer_root(81, 4), 3ULL);
}

TEST(PerfectPowers, ConsecutiveProductsAreNeverPowers) {
  EXPECT_TRUE(perfect_power_free(2));
  EXPECT_TRUE(perfect_power_free(3));
  for (std::uint64_t a = 2; a <= 1'000'000; ++a) {
    ASSERT_TRUE(perfect_power_free(a)) << a;
  }
  EXPECT_THROW(perfect_power_free(1), InputError);
}
