#include "fracdecay/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracdecay/numeric.hpp"
#include "fracdecay/parallel.hpp"

namespace fracdecay {

namespace {

struct WeightedInterval {
  Interval hull;
  double weight;
};

std::vector<WeightedInterval> hull_cylinders(const WeightedIFS& ifs, std::size_t depth,
                                             std::size_t cap) {
  const Interval h = attractor_hull(ifs);
  std::vector<WeightedInterval> out;
  for_each_level_word(ifs, depth, cap, [&](const WordView& w) {
    const double lo = w.cylinder.lo + w.ratio * h.lo;
    const double hi = w.cylinder.lo + w.ratio * h.hi;
    out.push_back({Interval{lo, hi}, w.weight});
  });
  return out;
}

}  // namespace

double cylinder_mass(const WeightedIFS& ifs, const Word& word) {
  double p = 1.0;
  for (Symbol s : word.symbols) {
    if (s >= ifs.size()) throw InputError("word does not belong to this IFS");
    p *= ifs.weights()[s];
  }
  return p;
}

MassBounds interval_mass_bounds(const WeightedIFS& ifs, Interval interval,
                                std::size_t depth, std::size_t cap) {
  if (!(interval.lo >= 0.0 && interval.hi <= 1.0 && interval.lo <= interval.hi)) {
    throw InputError("interval must satisfy 0 <= lo <= hi <= 1");
  }
  if (depth < 1) throw InputError("depth must be at least 1");
  if (attractor_is_point(ifs)) {
    const double x = attractor_hull(ifs).lo;
    const double m = (interval.lo <= x && x <= interval.hi) ? 1.0 : 0.0;
    return {m, m};
  }
  CompensatedSum<double> lower, upper;
  for (const auto& c : hull_cylinders(ifs, depth, cap)) {
    if (interval.contains(c.hull)) lower.add(c.weight);
    const double overlap =
        std::min(c.hull.hi, interval.hi) - std::max(c.hull.lo, interval.lo);
    if (overlap > 0.0 || interval.contains(c.hull)) upper.add(c.weight);
  }
  return {std::min(lower.value(), 1.0), std::min(upper.value(), 1.0)};
}

RegularityReport regularity_scan(const WeightedIFS& ifs, std::size_t depth,
                                 std::size_t cap) {
  if (depth < 1) throw InputError("depth must be at least 1");
  const auto disjoint = validate_disjointness(ifs);
  if (!disjoint) {
    throw PreconditionError("regularity scan needs first-level images disjoint except at endpoints");
  }
  RegularityReport report;
  report.depth = depth;
  for (std::size_t n = 1; n <= depth; ++n) {
    RegularityLevel level{n, std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity()};
    for_each_level_word(ifs, n, cap, [&](const WordView& w) {
      const double e = std::log(w.weight) / -w.neg_log_ratio;
      level.min_exponent = std::min(level.min_exponent, e);
      level.max_exponent = std::max(level.max_exponent, e);
    });
    level.min_exponent = std::max(0.0, level.min_exponent);
    level.max_exponent = std::max(0.0, level.max_exponent);
    report.levels.push_back(level);
  }
  report.alpha_hat = std::clamp(report.levels.back().min_exponent, 0.0, 1.0);
  for_each_level_word(ifs, depth, cap, [&](const WordView& w) {
    report.observed_prefactor =
        std::max(report.observed_prefactor, w.weight / std::pow(w.ratio, report.alpha_hat));
    report.smallest_scale = std::min(report.smallest_scale, w.ratio);
  });
  double d = 0.0;
  for (const auto& m : ifs.maps()) d = std::max(d, std::pow(m.ratio, -report.alpha_hat));
  report.interval_constant = d * static_cast<double>(ifs.size());
  return report;
}

MassBounds diagonal_mass(const WeightedIFS& ifs, double delta, std::size_t depth,
                         std::size_t cap) {
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  if (depth < 1) throw InputError("depth must be at least 1");
  if (delta >= 1.0) return {1.0, 1.0};
  const double cylinders = detail::level_count(ifs, depth);
  if (cylinders * cylinders > static_cast<double>(cap)) {
    throw ResourceError("diagonal mass at depth " + std::to_string(depth) + " needs " +
                            std::to_string(cylinders * cylinders) + " pairs, above cap " +
                            std::to_string(cap),
                        cylinders * cylinders);
  }
  const auto cyl = hull_cylinders(ifs, depth, cap);
  std::vector<CompensatedSum<double>> lower_rows(cyl.size()), upper_rows(cyl.size());
  parallel_for(cyl.size(), [&](std::size_t i) {
    const Interval& a = cyl[i].hull;
    for (const auto& c : cyl) {
      const Interval& b = c.hull;
      const double gap = std::max(a.lo, b.lo) - std::min(a.hi, b.hi);
      const double span = std::max(a.hi, b.hi) - std::min(a.lo, b.lo);
      const double m = cyl[i].weight * c.weight;
      if (gap <= delta) upper_rows[i].add(m);
      if (span <= delta) lower_rows[i].add(m);
    }
  });
  CompensatedSum<double> lower, upper;
  for (std::size_t i = 0; i < cyl.size(); ++i) {
    lower.add(lower_rows[i]);
    upper.add(upper_rows[i]);
  }
  return {std::min(lower.value(), 1.0), std::min(upper.value(), 1.0)};
}

}  // namespace fracdecay
