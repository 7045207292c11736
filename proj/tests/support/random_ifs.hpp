#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "fracdecay/ifs.hpp"

namespace fracdecay::test_support {

/// Two to `max_maps` similitudes with disjoint images, ratios in [0.05, 0.6]
/// and random positive weights.
inline WeightedIFS random_disjoint_ifs(std::mt19937_64& rng, std::size_t max_maps = 4) {
  std::uniform_int_distribution<std::size_t> count(2, max_maps);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = count(rng);
  std::vector<double> ratios(n);
  for (auto& r : ratios) r = 0.05 + 0.55 * unit(rng);
  double total = 0.0;
  for (double r : ratios) total += r;
  const double budget = 0.97;
  if (total > budget) {
    for (auto& r : ratios) r *= budget / total;
    total = budget;
  }
  std::vector<double> gaps(n + 1);
  double gap_total = 0.0;
  for (auto& g : gaps) {
    g = unit(rng) + 1e-3;
    gap_total += g;
  }
  const double slack = 1.0 - total;
  std::vector<Similitude> maps;
  double pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pos += gaps[i] / gap_total * slack;
    maps.push_back(Similitude{ratios[i], pos});
    pos += ratios[i];
  }
  std::vector<double> weights(n);
  double wsum = 0.0;
  for (auto& w : weights) {
    w = 0.1 + unit(rng);
    wsum += w;
  }
  for (auto& w : weights) w /= wsum;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return WeightedIFS::create(std::move(labels), std::move(maps), std::move(weights));
}

}  // namespace fracdecay::test_support
