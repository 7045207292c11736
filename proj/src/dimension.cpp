#include "fracdecay/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracdecay/numeric.hpp"

namespace fracdecay {

namespace {

constexpr std::size_t kBisectionIterations = 200;
constexpr std::size_t kNewtonSteps = 5;
constexpr double kResidualCeiling = 1e-14;

void check_exponent(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("exponent s must lie in [0,1]");
}

}  // namespace

double moran_value(const WeightedIFS& ifs, double s) {
  check_exponent(s);
  CompensatedSum<double> sum;
  for (const auto& m : ifs.maps()) sum.add(std::pow(m.ratio, s));
  return sum.value();
}

double moran_derivative(const WeightedIFS& ifs, double s) {
  check_exponent(s);
  CompensatedSum<double> sum;
  for (const auto& m : ifs.maps()) sum.add(std::pow(m.ratio, s) * std::log(m.ratio));
  return sum.value();
}

MoranSolution solve_moran(const WeightedIFS& ifs) {
  const auto disjoint = validate_disjointness(ifs);
  if (!disjoint) {
    const auto [i, j] = disjoint.overlaps.front();
    throw PreconditionError("first-level images of symbols '" + ifs.alphabet()[i] +
                            "' and '" + ifs.alphabet()[j] +
                            "' overlap; Moran dimension needs images disjoint "
                            "except at endpoints");
  }
  const double total_length = moran_value(ifs, 1.0);
  if (total_length > 1.0 + kDisjointnessTolerance) {
    throw PreconditionError("sum of contraction ratios is " + std::to_string(total_length) +
                            " > 1; the images cannot be disjoint");
  }
  if (ifs.size() == 1) return MoranSolution{0.0, 0.0, 0};
  if (total_length >= 1.0) return MoranSolution{1.0, std::abs(total_length - 1.0), 0};

  double lo = 0.0, hi = 1.0;
  std::size_t iterations = 0;
  for (; iterations < kBisectionIterations; ++iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (moran_value(ifs, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double s = 0.5 * (lo + hi);
  double best = s;
  double best_residual = std::abs(moran_value(ifs, s) - 1.0);
  for (std::size_t k = 0; k < kNewtonSteps; ++k) {
    const double step = (moran_value(ifs, s) - 1.0) / moran_derivative(ifs, s);
    s = std::clamp(s - step, 0.0, 1.0);
    const double r = std::abs(moran_value(ifs, s) - 1.0);
    if (r < best_residual) {
      best = s;
      best_residual = r;
    }
    ++iterations;
  }
  if (best_residual > kResidualCeiling) {
    throw InvariantError("Moran solver residual " + std::to_string(best_residual) +
                         " exceeds 1e-14");
  }
  return MoranSolution{best, best_residual, iterations};
}

WeightedIFS natural_weights(const WeightedIFS& ifs, double s) {
  const double total = moran_value(ifs, s);
  std::vector<double> weights;
  weights.reserve(ifs.size());
  for (const auto& m : ifs.maps()) weights.push_back(std::pow(m.ratio, s) / total);
  return ifs.with_weights(std::move(weights));
}

WeightedIFS natural_measure(const WeightedIFS& ifs) {
  return natural_weights(ifs, solve_moran(ifs).s_star);
}

}  // namespace fracdecay
