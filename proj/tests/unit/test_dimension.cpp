#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fracdecay/dimension.hpp"
#include "fracdecay/errors.hpp"
#include "fracdecay/luroth.hpp"
#include "support/random_ifs.hpp"

using namespace fracdecay;

namespace {
// 40-digit evaluation of the Moran root for ratios 1/2, 1/6.
constexpr double kDimL3 = 0.6009668516136754857157;
constexpr double kP2 = 0.659311955892103027;
constexpr double kP3 = 0.340688044107896973;
}  // namespace

TEST(MoranValue, Examples) {
  const auto l3 = luroth_ifs({2, 3});
  EXPECT_EQ(moran_value(l3, 0.0), 2.0);
  EXPECT_NEAR(moran_value(l3, 1.0), 2.0 / 3.0, 1e-16);
  const auto cantor = WeightedIFS::uniform({{1.0 / 3, 0.0}, {1.0 / 3, 2.0 / 3}});
  EXPECT_NEAR(moran_value(cantor, std::log(2.0) / std::log(3.0)), 1.0, 1e-15);
  EXPECT_THROW(moran_value(l3, -0.1), InputError);
  EXPECT_THROW(moran_value(l3, 1.1), InputError);
}

TEST(MoranValue, StrictlyDecreasing) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ifs = test_support::random_disjoint_ifs(rng);
    double a = unit(rng), b = unit(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    EXPECT_GT(moran_value(ifs, a), moran_value(ifs, b));
    EXPECT_LT(moran_derivative(ifs, a), 0.0);
  }
}

TEST(SolveMoran, LurothGolden) {
  const auto sol = solve_moran(luroth_ifs({2, 3}));
  EXPECT_NEAR(sol.s_star, kDimL3, 1e-15);
  EXPECT_LE(sol.residual, 1e-14);
  EXPECT_LE(std::abs(moran_value(luroth_ifs({2, 3}), sol.s_star) - 1.0), sol.residual + 1e-16);
}

TEST(SolveMoran, ClosedForms) {
  const auto cantor = WeightedIFS::uniform({{1.0 / 3, 0.0}, {1.0 / 3, 2.0 / 3}});
  EXPECT_NEAR(solve_moran(cantor).s_star, std::log(2.0) / std::log(3.0), 1e-13);
  for (int m = 3; m <= 9; ++m) {
    for (int n = 2; n < m; ++n) {
      std::vector<Similitude> maps;
      for (int k = 0; k < n; ++k) maps.push_back({1.0 / m, static_cast<double>(k) / m});
      EXPECT_NEAR(solve_moran(WeightedIFS::uniform(maps)).s_star, std::log(n) / std::log(m), 1e-13);
    }
  }
}

TEST(SolveMoran, DegenerateAndFullCases) {
  EXPECT_EQ(solve_moran(WeightedIFS::uniform({{0.3, 0.1}})).s_star, 0.0);
  EXPECT_EQ(solve_moran(WeightedIFS::uniform({{0.5, 0.0}, {0.5, 0.5}})).s_star, 1.0);
}

TEST(SolveMoran, PreconditionsAreChecked) {
  EXPECT_THROW(solve_moran(WeightedIFS::uniform({{0.5, 0.0}, {2.0 / 3, 0.0}})), PreconditionError);
  EXPECT_THROW(solve_moran(WeightedIFS::uniform({{0.5, 0.0}, {0.5, 0.25}})), PreconditionError);
}

TEST(SolveMoran, InvariantUnderPermutation) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ifs = test_support::random_disjoint_ifs(rng);
    auto maps = ifs.maps();
    std::shuffle(maps.begin(), maps.end(), rng);
    EXPECT_NEAR(solve_moran(ifs).s_star, solve_moran(WeightedIFS::uniform(maps)).s_star, 1e-13);
  }
}

TEST(NaturalWeights, LurothValues) {
  const auto ifs = luroth_ifs({2, 3});
  const double s = solve_moran(ifs).s_star;
  const auto nat = natural_weights(ifs, s);
  EXPECT_NEAR(nat.weight(0), kP2, 1e-15);
  EXPECT_NEAR(nat.weight(1), kP3, 1e-15);
  EXPECT_NEAR(nat.weight(0), std::pow(0.5, s), 1e-15);
  EXPECT_NEAR(nat.weight(0) + nat.weight(1), 1.0, 1e-15);
}

TEST(NaturalWeights, ZeroExponentIsUniform) {
  const auto nat = natural_weights(luroth_ifs({2, 3, 4, 7}), 0.0);
  for (double w : nat.weights()) EXPECT_DOUBLE_EQ(w, 0.25);
}

TEST(NaturalWeights, AlwaysAValidMeasure) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ifs = test_support::random_disjoint_ifs(rng);
    const auto nat = natural_weights(ifs, unit(rng));
    double sum = 0.0;
    for (double w : nat.weights()) {
      EXPECT_GT(w, 0.0);
      sum += w;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}
