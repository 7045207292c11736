#include "fracdecay/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracdecay/numeric.hpp"
#include "fracdecay/parallel.hpp"
#include "fracdecay/rng.hpp"

namespace fracdecay {

namespace {

constexpr std::size_t kMonteCarloChunk = 4096;

void check_alpha_l(double alpha, double l) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0,1]");
  if (!(l >= 2.0)) throw InputError("non-Liouville degree l must be >= 2");
}

}  // namespace

const char* to_string(SpectralMethod m) {
  return m == SpectralMethod::cylinder ? "cylinder" : "monte_carlo";
}

CylinderApproximation::CylinderApproximation(const WeightedIFS& ifs, double t,
                                             std::size_t cap)
    : t_(t) {
  for_each_stopping_word(ifs, t, cap, [&](const WordView& w) {
    points_.push_back(w.cylinder.midpoint());
    weights_.push_back(w.weight);
  });
}

double CylinderApproximation::error_bound(double xi) const {
  return std::numbers::pi * std::abs(xi) * std::exp(-t_);
}

SpectralSample CylinderApproximation::evaluate(double xi) const {
  SpectralSample out;
  out.xi = xi;
  out.method = SpectralMethod::cylinder;
  out.cost = points_.size();
  if (xi == 0.0) return out;
  CompensatedSum<std::complex<double>> sum;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    sum.add(weights_[i] * unit_phase(xi * points_[i]));
  }
  out.value = sum.value();
  out.error_bound = error_bound(xi);
  return out;
}

SpectralSample mu_hat_cylinder(const WeightedIFS& ifs, double xi, double t, std::size_t cap) {
  return CylinderApproximation(ifs, t, cap).evaluate(xi);
}

SpectralSample mu_hat_monte_carlo(const WeightedIFS& ifs, double xi, std::size_t samples,
                                  std::size_t depth, std::uint64_t seed) {
  if (samples < 1) throw InputError("Monte Carlo needs at least one sample");
  std::vector<double> cumulative;
  cumulative.reserve(ifs.size());
  double acc = 0.0;
  for (double w : ifs.weights()) cumulative.push_back(acc += w);
  cumulative.back() = std::numeric_limits<double>::infinity();

  const std::size_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<CompensatedSum<std::complex<double>>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kMonteCarloChunk;
    const std::size_t end = std::min(samples, begin + kMonteCarloChunk);
    for (std::size_t k = begin; k < end; ++k) {
      auto rng = sample_stream(seed, k);
      double slope = 1.0, intercept = 0.0;
      for (std::size_t d = 0; d < depth; ++d) {
        const double u = rng.uniform();
        const auto s = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        const Similitude& f = ifs.maps()[s];
        intercept += slope * f.translation;
        slope *= f.ratio;
      }
      partial[c].add(unit_phase(xi * (intercept + 0.5 * slope)));
    }
  });
  CompensatedSum<std::complex<double>> total;
  for (const auto& p : partial) total.add(p);

  SpectralSample out;
  out.xi = xi;
  out.method = SpectralMethod::monte_carlo;
  out.cost = samples;
  out.value = total.value() / static_cast<double>(samples);
  if (xi == 0.0) {
    out.value = {1.0, 0.0};
    return out;
  }
  out.error_bound = std::numbers::pi * std::abs(xi) *
                        std::pow(ifs.max_ratio(), static_cast<double>(depth)) +
                    3.0 / std::sqrt(static_cast<double>(samples));
  return out;
}

SelfSimilarityResidual self_similarity_residual(const WeightedIFS& ifs, double xi, double t,
                                                std::size_t cap) {
  const CylinderApproximation approx(ifs, t, cap);
  const SpectralSample whole = approx.evaluate(xi);
  CompensatedSum<std::complex<double>> rhs;
  double bound = whole.error_bound;
  for (Symbol w = 0; w < ifs.size(); ++w) {
    const Similitude& f = ifs.maps()[w];
    const SpectralSample part = approx.evaluate(f.ratio * xi);
    rhs.add(ifs.weights()[w] * unit_phase(xi * f.translation) * part.value);
    bound += ifs.weights()[w] * part.error_bound;
  }
  return {std::abs(whole.value - rhs.value()), bound};
}

Envelope dyadic_envelope(const WeightedIFS& ifs, double xi_max,
                         std::size_t points_per_octave, double t, std::size_t cap) {
  if (!(xi_max > 2.0)) throw InputError("xi_max must exceed 2");
  if (points_per_octave < 1) throw InputError("points_per_octave must be at least 1");
  const CylinderApproximation approx(ifs, t, cap);

  Envelope env;
  std::vector<double> grid;
  std::vector<std::size_t> block_of;
  for (double x = 1.0; x < xi_max; x *= 2.0) {
    env.blocks.push_back(EnvelopeBlock{x, 0.0, 0.0, 0});
    for (std::size_t j = 0; j < points_per_octave; ++j) {
      const double xi =
          x * std::exp2(static_cast<double>(j) / static_cast<double>(points_per_octave));
      if (xi > xi_max) break;
      grid.push_back(xi);
      block_of.push_back(env.blocks.size() - 1);
    }
  }
  env.samples.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { env.samples[i] = approx.evaluate(grid[i]); });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto& b = env.blocks[block_of[i]];
    b.max_abs = std::max(b.max_abs, std::abs(env.samples[i].value));
    b.max_error_bound = std::max(b.max_error_bound, env.samples[i].error_bound);
    ++b.sample_count;
  }
  return env;
}

DecayFit decay_fit(const std::vector<EnvelopeBlock>& envelope) {
  const double min_start = std::exp(2.0);
  std::vector<double> xs, ys;
  DecayFit fit;
  for (const auto& b : envelope) {
    if (b.block_start < min_start || !(b.max_abs > 0.0)) continue;
    xs.push_back(std::log(std::log(b.block_start)));
    ys.push_back(std::log(b.max_abs));
    fit.envelope.push_back(b);
  }
  if (xs.size() < 4) {
    throw InputError("decay fit needs at least 4 envelope blocks with X >= e^2, got " +
                     std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss += r * r;
  }
  fit.beta_hat = -slope;
  fit.log_C = intercept;
  fit.residual_rms = std::sqrt(ss / n);
  fit.xi_min = fit.envelope.front().block_start;
  fit.xi_max = 2.0 * fit.envelope.back().block_start;
  return fit;
}

double theoretical_beta(double alpha, double l) {
  check_alpha_l(alpha, l);
  return alpha / (2.0 * (1.0 + 2.0 * alpha) * (8.0 * l - 7.0));
}

double solve_t_of_xi(double alpha, double l, double xi) {
  check_alpha_l(alpha, l);
  const double target = std::log(std::abs(xi));
  if (!(target > 1.0) || !std::isfinite(target)) {
    throw InputError("|xi| must exceed e for a solution t > 1 to exist");
  }
  const double kappa =
      std::isinf(l) ? 0.0 : (1.0 + alpha) / ((1.0 + 2.0 * alpha) * (8.0 * l - 7.0));
  // h(t) = kappa log t + t - log|xi| is increasing; h(1) < 0 <= h(log|xi|).
  auto h = [&](double t) { return kappa * std::log(t) + t - target; };
  double lo = 1.0, hi = target;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int k = 0; k < 3; ++k) {
    const double next = t - h(t) / (kappa / t + 1.0);
    if (next >= 1.0 && next <= target) t = next;
  }
  return t;
}

}  // namespace fracdecay
