#pragma once

#include <cstddef>
#include <vector>

#include "fracdecay/ifs.hpp"

namespace fracdecay {

struct MassBounds {
  double lower = 0.0;
  double upper = 1.0;
};

/// p_w: the mass of the word's cylinder when first-level images are disjoint.
double cylinder_mass(const WeightedIFS& ifs, const Word& word);

/// Certified bounds on mu(interval) from the level-`depth` cylinders.
///
/// Cylinders are images of the attractor hull, so they cover the support.
/// `lower` sums cylinders inside the interval, `upper` those meeting it in
/// more than an endpoint (a point attractor is treated as an exact Dirac
/// mass). Both bounds tighten monotonically as depth grows.
MassBounds interval_mass_bounds(const WeightedIFS& ifs, Interval interval,
                                std::size_t depth, std::size_t cap = kDefaultWordCap);

struct RegularityLevel {
  std::size_t depth = 0;
  double min_exponent = 0.0;
  double max_exponent = 0.0;
};

/// Cylinder statistics of log mu(Q) / log diam(Q).
struct RegularityReport {
  std::size_t depth = 0;
  /// Minimum exponent at the deepest level, in [0,1].
  double alpha_hat = 0.0;
  std::vector<RegularityLevel> levels;
  /// max mu(Q) / diam(Q)^alpha_hat over the deepest level.
  double observed_prefactor = 0.0;
  /// Smallest cylinder diameter scanned.
  double smallest_scale = 1.0;
  /// #A * max_w r_w^{-alpha_hat}: converts cylinder bounds into interval bounds.
  double interval_constant = 0.0;
};

RegularityReport regularity_scan(const WeightedIFS& ifs, std::size_t depth,
                                 std::size_t cap = kDefaultWordCap);

/// Bounds on (mu x mu){ |x - y| <= delta } from pairs of level-`depth`
/// cylinders. The pair count depth-cylinders squared must not exceed `cap`.
MassBounds diagonal_mass(const WeightedIFS& ifs, double delta, std::size_t depth,
                         std::size_t cap = kDefaultWordCap);

}  // namespace fracdecay
