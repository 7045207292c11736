#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "fracdecay/diophantine.hpp"
#include "fracdecay/ifs.hpp"

namespace fracdecay {

/// A test function g on the overshoot window with a caller-supplied bound
/// on ||g||_{C^1} there. `antiderivative`, when set, makes the limit exact.
struct TestFunction {
  std::function<std::complex<double>(double)> value;
  double c1_norm = 0.0;
  std::function<std::complex<double>(double)> antiderivative;
  std::string name;
};

/// g = 1.
TestFunction constant_one();
/// g(z) = z, with the C^1 bound taken on (-1, upper).
TestFunction identity_function(double upper);
/// g_s(z) = exp(-2 pi i s e^{-z}); ||g_s||_{C^1} <= 1 + 2 pi |s| e on z > -1.
TestFunction oscillatory(double s);

/// S_{n_t} - t for the walk with i.i.d. steps drawn from lambda, using the
/// stream keyed by (seed, index).
double sample_overshoot(const AuxiliaryMeasure& lambda, double t, std::uint64_t seed,
                        std::uint64_t index = 0);

/// (1/sigma) int_0^inf g(z) p(z) dz with p the survival function. Each
/// constant piece of p is integrated in closed form or by Gauss-Kronrod.
std::complex<double> renewal_limit(const AuxiliaryMeasure& lambda, const TestFunction& g);

struct RenewalResult {
  double t = 0.0;
  std::complex<double> mc_estimate;
  double mc_stderr = 0.0;
  std::complex<double> limit_value;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  /// Convergence to the limit needs a non-lattice lambda.
  bool lattice = false;
  double c1_norm = 0.0;

  double discrepancy() const { return std::abs(mc_estimate - limit_value); }
};

/// Monte Carlo mean of g(S_{n_t} - t) over n_samples >= 100 walks. The
/// result depends only on the arguments, not on thread count.
RenewalResult renewal_expectation_mc(const AuxiliaryMeasure& lambda, const TestFunction& g,
                                     double t, std::size_t n_samples, std::uint64_t seed);

/// sum over W_t of p_w g(-log r_w - t): the overshoot expectation evaluated
/// exactly on the word tree of the IFS.
std::complex<double> stopping_expectation(const WeightedIFS& ifs, const TestFunction& g, double t,
                                          std::size_t cap = kDefaultWordCap);

/// E g(S_{n_t} - t) at finite t, exactly: a memoised recursion over the
/// step-count vectors whose partial sum is still below t. The number of such
/// states grows like t^{#atoms}; exceeding `cap` is a ResourceError.
std::complex<double> overshoot_expectation(const AuxiliaryMeasure& lambda, const TestFunction& g,
                                           double t, std::size_t cap = 10'000'000);

}  // namespace fracdecay
