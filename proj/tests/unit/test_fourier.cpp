#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "fracdecay/dimension.hpp"
#include "fracdecay/errors.hpp"
#include "fracdecay/fourier.hpp"
#include "fracdecay/luroth.hpp"
#include "fracdecay/parallel.hpp"
#include "support/random_ifs.hpp"

using namespace fracdecay;

namespace {

WeightedIFS cantor() { return WeightedIFS::uniform({{1.0 / 3, 0.0}, {1.0 / 3, 2.0 / 3}}); }

// prod_{n<=N} (1 + e^{-2 pi i xi 2 3^{-n}})/2, tail <= 2 pi |xi| 3^{-N}.
std::complex<double> cantor_product(double xi, int n) {
  std::complex<double> v = 1.0;
  for (int k = 1; k <= n; ++k) {
    const double phase = -2.0 * std::numbers::pi * xi * 2.0 * std::pow(3.0, -k);
    v *= 0.5 * (1.0 + std::polar(1.0, phase));
  }
  return v;
}

}  // namespace

TEST(MuHatCylinder, ZeroFrequencyIsExactlyOne) {
  const auto s = mu_hat_cylinder(natural_measure(luroth_ifs({2, 3})), 0.0, 8.0);
  EXPECT_EQ(s.value, std::complex<double>(1.0, 0.0));
  EXPECT_EQ(s.error_bound, 0.0);
  EXPECT_EQ(s.method, SpectralMethod::cylinder);
}

TEST(MuHatCylinder, SingleMapIsADirac) {
  const auto ifs = WeightedIFS::uniform({{0.4, 0.3}});
  const double fixed = 0.3 / 0.6;
  for (double xi : {0.7, 3.0, 41.5}) {
    const auto s = mu_hat_cylinder(ifs, xi, 10.0);
    EXPECT_NEAR(std::abs(s.value), 1.0, 1e-14);
    const auto exact = std::polar(1.0, -2.0 * std::numbers::pi * xi * fixed);
    EXPECT_LE(std::abs(s.value - exact), s.error_bound + 1e-14);
  }
}

TEST(MuHatCylinder, CantorMatchesProductOracle) {
  const auto ifs = cantor();
  for (double xi : {0.5, 1.0, 7.3, 81.0, 243.7, 999.0}) {
    const auto s = mu_hat_cylinder(ifs, xi, 16.0);
    const double tail = 2 * std::numbers::pi * xi * std::pow(3.0, -40);
    EXPECT_LE(std::abs(s.value - cantor_product(xi, 40)), s.error_bound + tail) << xi;
    EXPECT_NEAR(s.error_bound, std::numbers::pi * xi * std::exp(-16.0), 1e-300);
  }
}

TEST(MuHatCylinder, ErrorBoundIsSoundUnderRefinement) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> xi_dist(0.0, 1000.0), t_dist(2.0, 6.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ifs = test_support::random_disjoint_ifs(rng, 3);
    const double xi = xi_dist(rng), t = t_dist(rng);
    const auto a = mu_hat_cylinder(ifs, xi, t);
    const auto b = mu_hat_cylinder(ifs, xi, t + 5.0);
    EXPECT_LE(std::abs(a.value - b.value), a.error_bound + b.error_bound);
    EXPECT_LE(std::abs(a.value), 1.0 + a.error_bound);
  }
}

TEST(MuHatCylinder, ConjugateSymmetryIsExact) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> xi_dist(0.0, 1000.0);
  for (int trial = 0; trial < 50; ++trial) {
    const CylinderApproximation approx(test_support::random_disjoint_ifs(rng), 6.0);
    const double xi = xi_dist(rng);
    const auto plus = approx.evaluate(xi), minus = approx.evaluate(-xi);
    EXPECT_EQ(minus.value.real(), plus.value.real());
    EXPECT_EQ(minus.value.imag(), -plus.value.imag());
  }
}

TEST(MuHatCylinder, CapOverflow) {
  EXPECT_THROW(mu_hat_cylinder(cantor(), 1.0, 40.0, 1000), ResourceError);
}

TEST(MuHatMonteCarlo, ZeroFrequencyAndDirac) {
  const auto l3 = natural_measure(luroth_ifs({2, 3}));
  EXPECT_EQ(mu_hat_monte_carlo(l3, 0.0, 1000, 20, 7).value, std::complex<double>(1.0, 0.0));
  const auto dirac = mu_hat_monte_carlo(WeightedIFS::uniform({{0.5, 0.2}}), 13.0, 500, 30, 7);
  EXPECT_NEAR(std::abs(dirac.value), 1.0, std::numbers::pi * 13.0 * std::pow(0.5, 30));
  EXPECT_EQ(dirac.method, SpectralMethod::monte_carlo);
  EXPECT_EQ(dirac.cost, 500u);
}

TEST(MuHatMonteCarlo, AgreesWithCylinderOnLuroth) {
  const auto l3 = natural_measure(luroth_ifs({2, 3}));
  const auto cyl = mu_hat_cylinder(l3, 100.0, 12.0);
  const auto mc = mu_hat_monte_carlo(l3, 100.0, 200000, 40, 99);
  EXPECT_LE(std::abs(cyl.value - mc.value), cyl.error_bound + mc.error_bound);
}

TEST(MuHatMonteCarlo, CrossMethodAgreementRate) {
  const auto l3 = natural_measure(luroth_ifs({2, 3}));
  const CylinderApproximation approx(l3, 12.0);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> xi_dist(0.0, 300.0);
  int agree = 0;
  const int trials = 200;
  for (int k = 0; k < trials; ++k) {
    const double xi = xi_dist(rng);
    const auto cyl = approx.evaluate(xi);
    const auto mc = mu_hat_monte_carlo(l3, xi, 4000, 40, static_cast<std::uint64_t>(k));
    if (std::abs(cyl.value - mc.value) <= cyl.error_bound + mc.error_bound) ++agree;
  }
  EXPECT_GE(agree, trials * 99 / 100);
}

TEST(MuHatMonteCarlo, IndependentOfThreadCount) {
  const auto l3 = natural_measure(luroth_ifs({2, 3}));
  const std::size_t saved = thread_count();
  set_thread_count(1);
  const auto a = mu_hat_monte_carlo(l3, 77.7, 50000, 30, 5);
  set_thread_count(4);
  const auto b = mu_hat_monte_carlo(l3, 77.7, 50000, 30, 5);
  set_thread_count(saved);
  EXPECT_EQ(a.value, b.value);
}

TEST(SelfSimilarity, Residuals) {
  EXPECT_EQ(self_similarity_residual(cantor(), 0.0, 10.0).residual, 0.0);
  const auto c = self_similarity_residual(cantor(), 7.3, 15.0);
  EXPECT_LE(c.residual, c.bound);
  const auto d = self_similarity_residual(WeightedIFS::uniform({{0.3, 0.5}}), 11.0, 8.0);
  EXPECT_LE(d.residual, d.bound);
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> xi_dist(0.0, 1000.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = self_similarity_residual(test_support::random_disjoint_ifs(rng, 3), xi_dist(rng), 8.0);
    EXPECT_LE(r.residual, r.bound);
  }
}

TEST(DyadicEnvelope, SingleMapIsFlat) {
  const auto env = dyadic_envelope(WeightedIFS::uniform({{0.5, 0.3}}), 1000.0, 8, 10.0);
  ASSERT_FALSE(env.blocks.empty());
  for (const auto& b : env.blocks) EXPECT_NEAR(b.max_abs, 1.0, 1e-12);
}

TEST(DyadicEnvelope, LebesgueFollowsTheSincBound) {
  const auto env = dyadic_envelope(WeightedIFS::uniform({{0.5, 0.0}, {0.5, 0.5}}), 128.0, 16, 13.0);
  for (const auto& b : env.blocks) {
    EXPECT_LE(b.max_abs, 1.0 / (std::numbers::pi * b.block_start) + b.max_error_bound) << b.block_start;
    EXPECT_GT(b.sample_count, 0u);
  }
  EXPECT_THROW(dyadic_envelope(cantor(), 2.0, 8, 5.0), InputError);
}

TEST(DecayFit, RecoversSyntheticExponent) {
  std::vector<EnvelopeBlock> env;
  for (int k = 0; k < 30; ++k) {
    const double x = std::ldexp(1.0, k);
    env.push_back({x, 0.8 * std::pow(std::log(std::max(x, 2.0)), -0.5), 0.0, 1});
  }
  const auto fit = decay_fit(env);
  EXPECT_NEAR(fit.beta_hat, 0.5, 1e-9);
  EXPECT_NEAR(fit.log_C, std::log(0.8), 1e-9);
  EXPECT_GE(fit.xi_min, std::exp(2.0));
  for (auto& b : env) b.max_abs = 0.3;
  EXPECT_NEAR(decay_fit(env).beta_hat, 0.0, 1e-12);
  env.resize(5);
  EXPECT_THROW(decay_fit(env), InputError);
}

TEST(DecayFit, CantorIsNonNegative) {
  const auto env = dyadic_envelope(cantor(), 1e5, 8, std::log(std::numbers::pi * 1e5) + 5.0);
  EXPECT_GE(decay_fit(env.blocks).beta_hat, 0.0);
}

TEST(TheoreticalBeta, Values) {
  EXPECT_EQ(theoretical_beta(0.0, 2.0), 0.0);
  EXPECT_EQ(theoretical_beta(1.0, 2.0), 1.0 / 54.0);
  EXPECT_NEAR(theoretical_beta(0.6009668516136754857, 189369098.58724383), 9.0077678765346497e-11, 1e-24);
  EXPECT_GT(theoretical_beta(0.6009668516136754857, 189369098.58724383), 1e-11);
  EXPECT_THROW(theoretical_beta(-0.1, 2.0), InputError);
  EXPECT_THROW(theoretical_beta(1.1, 2.0), InputError);
  EXPECT_THROW(theoretical_beta(0.5, 1.5), InputError);
}

TEST(SolveTOfXi, RecoversConstructedRoot) {
  const double xi = std::exp(10.0) * std::pow(10.0, 2.0 / 27.0);
  EXPECT_NEAR(solve_t_of_xi(1.0, 2.0, xi), 10.0, 1e-11);
  const double t = solve_t_of_xi(1.0, 2.0, xi);
  EXPECT_NEAR(std::pow(t, 2.0 / 27.0) * std::exp(t) / xi, 1.0, 1e-12);
}

TEST(SolveTOfXi, ZeroExponentLimitAndMonotonicity) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(solve_t_of_xi(0.0, inf, 1e6), std::log(1e6), 1e-12);
  EXPECT_NEAR(solve_t_of_xi(0.0, 1e12, 1e6), std::log(1e6), 1e-9);
  double prev = 0.0;
  for (double xi = 10.0; xi < 1e12; xi *= 3.7) {
    const double t = solve_t_of_xi(0.6, 3.0, xi);
    EXPECT_GT(t, prev);
    prev = t;
  }
  EXPECT_THROW(solve_t_of_xi(0.5, 2.0, 2.0), InputError);
}
