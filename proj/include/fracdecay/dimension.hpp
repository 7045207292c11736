#pragma once

#include <cstddef>

#include "fracdecay/ifs.hpp"

namespace fracdecay {

struct MoranSolution {
  double s_star = 0.0;
  /// |sum r_w^s_star - 1|
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// sum_w r_w^s. Strictly decreasing in s.
double moran_value(const WeightedIFS& ifs, double s);

/// sum_w r_w^s log r_w.
double moran_derivative(const WeightedIFS& ifs, double s);

/// Root of sum_w r_w^s = 1 on [0,1]: bisection followed by a Newton polish.
///
/// Requires first-level images that meet at most at endpoints and
/// sum_w r_w <= 1; both are checked and reported as PreconditionError.
/// A single map has s_star = 0. The residual is at most 1e-14.
MoranSolution solve_moran(const WeightedIFS& ifs);

/// Weights r_w^s / sum_v r_v^s.
WeightedIFS natural_weights(const WeightedIFS& ifs, double s);

/// natural_weights at the solved Moran exponent.
WeightedIFS natural_measure(const WeightedIFS& ifs);

}  // namespace fracdecay
