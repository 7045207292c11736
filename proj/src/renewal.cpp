#include "fracdecay/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracdecay/errors.hpp"
#include "fracdecay/numeric.hpp"
#include "fracdecay/parallel.hpp"
#include "fracdecay/rng.hpp"

namespace fracdecay {

namespace {

constexpr std::size_t kChunk = 4096;

class StepSampler {
 public:
  explicit StepSampler(const AuxiliaryMeasure& lambda) {
    double acc = 0.0;
    for (const auto& a : lambda.atoms()) {
      acc += a.mass;
      cumulative_.push_back(acc);
      locations_.push_back(a.location);
    }
    cumulative_.back() = std::numeric_limits<double>::infinity();
  }

  double overshoot(double t, SplitMix64& rng) const {
    double s = 0.0;
    while (s < t) {
      const double u = rng.uniform();
      const auto k = std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin();
      s += locations_[static_cast<std::size_t>(k)];
    }
    return s - t;
  }

 private:
  std::vector<double> cumulative_;
  std::vector<double> locations_;
};

std::complex<double> integrate(const TestFunction& g, double a, double b) {
  if (g.antiderivative) return g.antiderivative(b) - g.antiderivative(a);
  using boost::math::quadrature::gauss_kronrod;
  auto re = [&](double z) { return g.value(z).real(); };
  auto im = [&](double z) { return g.value(z).imag(); };
  constexpr unsigned max_depth = 20;
  constexpr double tol = 1e-13;
  return {gauss_kronrod<double, 61>::integrate(re, a, b, max_depth, tol),
          gauss_kronrod<double, 61>::integrate(im, a, b, max_depth, tol)};
}

}  // namespace

TestFunction constant_one() {
  return {[](double) { return std::complex<double>(1.0, 0.0); }, 1.0,
          [](double z) { return std::complex<double>(z, 0.0); }, "one"};
}

TestFunction identity_function(double upper) {
  return {[](double z) { return std::complex<double>(z, 0.0); }, std::max(1.0, std::abs(upper)) + 1.0,
          [](double z) { return std::complex<double>(0.5 * z * z, 0.0); }, "identity"};
}

TestFunction oscillatory(double s) {
  return {[s](double z) { return unit_phase(s * std::exp(-z)); },
          1.0 + kTwoPi * std::abs(s) * std::numbers::e, nullptr, "oscillatory"};
}

double sample_overshoot(const AuxiliaryMeasure& lambda, double t, std::uint64_t seed,
                        std::uint64_t index) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("renewal level t must be positive");
  auto rng = sample_stream(seed, index);
  return StepSampler(lambda).overshoot(t, rng);
}

std::complex<double> renewal_limit(const AuxiliaryMeasure& lambda, const TestFunction& g) {
  if (!g.value) throw InputError("test function has no value");
  CompensatedSum<std::complex<double>> numerator;
  CompensatedSum<double> denominator;
  double left = 0.0;
  const auto& atoms = lambda.atoms();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double right = atoms[k].location;
    CompensatedSum<double> p;
    for (std::size_t j = k; j < atoms.size(); ++j) p.add(atoms[j].mass);
    const double height = p.value();
    numerator.add(height * integrate(g, left, right));
    denominator.add(height * (right - left));
    left = right;
  }
  return numerator.value() / denominator.value();
}

RenewalResult renewal_expectation_mc(const AuxiliaryMeasure& lambda, const TestFunction& g,
                                     double t, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 100) throw InputError("renewal Monte Carlo needs at least 100 samples");
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("renewal level t must be positive");
  if (!g.value) throw InputError("test function has no value");

  const StepSampler sampler(lambda);
  const std::size_t chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<CompensatedSum<std::complex<double>>> sums(chunks);
  std::vector<CompensatedSum<double>> squares(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(n_samples, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      auto rng = sample_stream(seed, i);
      const std::complex<double> v = g.value(sampler.overshoot(t, rng));
      sums[c].add(v);
      squares[c].add(std::norm(v));
    }
  });
  CompensatedSum<std::complex<double>> sum;
  CompensatedSum<double> square;
  for (std::size_t c = 0; c < chunks; ++c) {
    sum.add(sums[c]);
    square.add(squares[c]);
  }

  const auto n = static_cast<double>(n_samples);
  RenewalResult r;
  r.t = t;
  r.mc_estimate = sum.value() / n;
  const double variance = std::max(0.0, square.value() / n - std::norm(r.mc_estimate));
  r.mc_stderr = std::sqrt(variance / (n - 1.0));
  r.limit_value = renewal_limit(lambda, g);
  r.n_samples = n_samples;
  r.seed = seed;
  r.lattice = classify_lattice(lambda) != LatticeVerdict::non_lattice;
  r.c1_norm = g.c1_norm;
  return r;
}

std::complex<double> stopping_expectation(const WeightedIFS& ifs, const TestFunction& g, double t,
                                          std::size_t cap) {
  if (!g.value) throw InputError("test function has no value");
  CompensatedSum<std::complex<double>> sum;
  for_each_stopping_word(ifs, t, cap, [&](const WordView& w) {
    sum.add(w.weight * g.value(w.neg_log_ratio - t));
  });
  return sum.value();
}

std::complex<double> overshoot_expectation(const AuxiliaryMeasure& lambda, const TestFunction& g,
                                           double t, std::size_t cap) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("renewal level t must be positive");
  if (!g.value) throw InputError("test function has no value");
  const auto& atoms = lambda.atoms();
  std::map<std::vector<std::uint32_t>, std::complex<double>> memo;
  std::vector<std::uint32_t> counts(atoms.size(), 0);

  std::function<std::complex<double>()> expect = [&]() -> std::complex<double> {
    if (const auto it = memo.find(counts); it != memo.end()) return it->second;
    if (memo.size() >= cap) {
      throw ResourceError("overshoot recursion exceeds " + std::to_string(cap) + " states",
                          static_cast<double>(memo.size()));
    }
    CompensatedSum<double> partial;
    for (std::size_t j = 0; j < atoms.size(); ++j) partial.add(counts[j] * atoms[j].location);
    const double s = partial.value();
    CompensatedSum<std::complex<double>> total;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      const double next = s + atoms[j].location;
      if (next >= t) {
        total.add(atoms[j].mass * g.value(next - t));
      } else {
        ++counts[j];
        total.add(atoms[j].mass * expect());
        --counts[j];
      }
    }
    return memo[counts] = total.value();
  };
  return expect();
}

}  // namespace fracdecay
