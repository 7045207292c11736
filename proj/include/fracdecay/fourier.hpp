#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fracdecay/ifs.hpp"

namespace fracdecay {

enum class SpectralMethod { cylinder, monte_carlo };

const char* to_string(SpectralMethod m);

/// One evaluation of mu_hat(xi) = int e^{-2 pi i xi x} dmu(x).
struct SpectralSample {
  double xi = 0.0;
  std::complex<double> value{1.0, 0.0};
  double error_bound = 0.0;
  SpectralMethod method = SpectralMethod::cylinder;
  /// Words summed (cylinder) or points drawn (Monte Carlo).
  std::size_t cost = 0;
};

/// The measure replaced by point masses p_w at the midpoints of the
/// cylinders of W_t. Built once, evaluated at many frequencies.
class CylinderApproximation {
 public:
  CylinderApproximation(const WeightedIFS& ifs, double t, std::size_t cap = kDefaultWordCap);

  /// |value - mu_hat(xi)| <= pi |xi| e^{-t}.
  SpectralSample evaluate(double xi) const;

  double threshold() const { return t_; }
  std::size_t size() const { return points_.size(); }
  /// pi |xi| e^{-t}
  double error_bound(double xi) const;

 private:
  double t_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

SpectralSample mu_hat_cylinder(const WeightedIFS& ifs, double xi, double t,
                               std::size_t cap = kDefaultWordCap);

/// Mean of e^{-2 pi i xi x_k} over midpoints of random depth-`depth`
/// cylinders. Bound: pi |xi| r_max^depth + 3 / sqrt(samples). The result
/// depends only on (ifs, xi, samples, depth, seed), not on thread count.
SpectralSample mu_hat_monte_carlo(const WeightedIFS& ifs, double xi, std::size_t samples,
                                  std::size_t depth, std::uint64_t seed);

struct SelfSimilarityResidual {
  /// |mu_hat(xi) - sum_w p_w e^{-2 pi i xi b_w} mu_hat(r_w xi)|
  double residual = 0.0;
  /// Sum of the error bounds of every evaluation involved.
  double bound = 0.0;
};

SelfSimilarityResidual self_similarity_residual(const WeightedIFS& ifs, double xi, double t,
                                                std::size_t cap = kDefaultWordCap);

struct EnvelopeBlock {
  /// Block [block_start, 2 block_start).
  double block_start = 0.0;
  double max_abs = 0.0;
  double max_error_bound = 0.0;
  std::size_t sample_count = 0;
};

struct Envelope {
  std::vector<EnvelopeBlock> blocks;
  std::vector<SpectralSample> samples;
};

/// Maximum |mu_hat| over a log-spaced grid in each dyadic block
/// [2^k, 2^{k+1}), k >= 0, for frequencies up to xi_max.
Envelope dyadic_envelope(const WeightedIFS& ifs, double xi_max,
                         std::size_t points_per_octave, double t,
                         std::size_t cap = kDefaultWordCap);

struct DecayFit {
  double beta_hat = 0.0;
  double log_C = 0.0;
  double xi_min = 0.0;
  double xi_max = 0.0;
  double residual_rms = 0.0;
  std::vector<EnvelopeBlock> envelope;
};

/// Least squares of log(max_abs) on log log X over blocks with X >= e^2.
/// Needs at least four such blocks with positive maxima.
DecayFit decay_fit(const std::vector<EnvelopeBlock>& envelope);

/// alpha / (2 (1 + 2 alpha) (8 l - 7)).
double theoretical_beta(double alpha, double l);

/// The t > 1 with t^{(1+alpha)/((1+2alpha)(8l-7))} e^t = |xi|.
/// l may be +infinity (exponent zero, t = log |xi|).
double solve_t_of_xi(double alpha, double l, double xi);

}  // namespace fracdecay
