#include "fracdecay/ifs.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "fracdecay/numeric.hpp"

namespace fracdecay {

namespace {

constexpr double kWeightSumTolerance = 1e-12;
constexpr double kMapBoundaryTolerance = 1e-12;

void validate_weights(const std::vector<double>& weights, std::size_t n) {
  if (weights.size() != n) {
    throw InputError("expected " + std::to_string(n) + " weights, got " +
                     std::to_string(weights.size()));
  }
  CompensatedSum<double> sum;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InputError("every weight must be > 0");
    sum.add(w);
  }
  if (std::abs(sum.value() - 1.0) > kWeightSumTolerance) {
    throw InputError("weights must sum to 1 within 1e-12 (sum is " +
                     std::to_string(sum.value()) + ")");
  }
}

}  // namespace

Similitude make_similitude(double ratio, double translation) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InputError("similitude ratio must lie in (0,1)");
  if (!(translation >= 0.0)) throw InputError("similitude translation must be >= 0");
  if (ratio + translation > 1.0 + kMapBoundaryTolerance) {
    throw InputError("similitude must map [0,1] into [0,1] (ratio + translation <= 1)");
  }
  return Similitude{ratio, translation};
}

WeightedIFS WeightedIFS::create(std::vector<std::string> alphabet,
                                std::vector<Similitude> maps,
                                std::vector<double> weights) {
  if (maps.empty()) throw InputError("alphabet must be non-empty");
  if (alphabet.size() != maps.size()) {
    throw InputError("alphabet and map lists differ in length");
  }
  for (const auto& m : maps) make_similitude(m.ratio, m.translation);
  {
    auto sorted = alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("alphabet labels must be distinct");
    }
  }
  validate_weights(weights, maps.size());
  WeightedIFS ifs;
  ifs.alphabet_ = std::move(alphabet);
  ifs.maps_ = std::move(maps);
  ifs.weights_ = std::move(weights);
  return ifs;
}

WeightedIFS WeightedIFS::uniform(std::vector<Similitude> maps) {
  std::vector<std::string> labels;
  labels.reserve(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) labels.push_back(std::to_string(i));
  const std::size_t n = maps.size();
  const double w = n == 0 ? 0.0 : 1.0 / static_cast<double>(n);
  return create(std::move(labels), std::move(maps), std::vector<double>(n, w));
}

double WeightedIFS::min_ratio() const {
  double r = 1.0;
  for (const auto& m : maps_) r = std::min(r, m.ratio);
  return r;
}

double WeightedIFS::max_ratio() const {
  double r = 0.0;
  for (const auto& m : maps_) r = std::max(r, m.ratio);
  return r;
}

std::optional<Symbol> WeightedIFS::index_of(std::string_view label) const {
  for (Symbol i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_[i] == label) return i;
  }
  return std::nullopt;
}

WeightedIFS WeightedIFS::with_weights(std::vector<double> weights) const {
  return create(alphabet_, maps_, std::move(weights));
}

Word compose_word(const WeightedIFS& ifs, std::span<const Symbol> symbols) {
  Word w;
  w.symbols.assign(symbols.begin(), symbols.end());
  for (Symbol s : symbols) {
    if (s >= ifs.size()) {
      throw InputError("symbol index " + std::to_string(s) + " is outside the alphabet");
    }
    const Similitude& f = ifs.maps()[s];
    // f o (current): x -> r (slope x + intercept) + b
    w.map.intercept = f.ratio * w.map.intercept + f.translation;
    w.map.slope *= f.ratio;
    w.weight_product *= ifs.weights()[s];
  }
  w.ratio_product = w.map.slope;
  return w;
}

Word compose_word(const WeightedIFS& ifs, std::span<const std::string> labels) {
  std::vector<Symbol> symbols;
  symbols.reserve(labels.size());
  for (const auto& label : labels) {
    auto idx = ifs.index_of(label);
    if (!idx) throw InputError("unknown symbol '" + label + "'");
    symbols.push_back(*idx);
  }
  return compose_word(ifs, symbols);
}

Interval cylinder_interval(const WeightedIFS& ifs, const Word& word) {
  for (Symbol s : word.symbols) {
    if (s >= ifs.size()) throw InputError("word does not belong to this IFS");
  }
  return Interval{word.map.intercept, word.map.intercept + word.map.slope};
}

Interval code_cylinder(const WeightedIFS& ifs, std::span<const Symbol> code) {
  std::vector<Symbol> reversed(code.rbegin(), code.rend());
  return cylinder_interval(ifs, compose_word(ifs, reversed));
}

CodedPoint point_from_code(const WeightedIFS& ifs, std::span<const Symbol> code) {
  if (code.empty()) throw InputError("point_from_code needs a non-empty code");
  const Interval c = code_cylinder(ifs, code);
  return CodedPoint{c.midpoint(), 0.5 * c.diameter()};
}

DisjointnessReport validate_disjointness(const WeightedIFS& ifs) {
  DisjointnessReport report;
  const auto& maps = ifs.maps();
  for (Symbol i = 0; i < maps.size(); ++i) {
    for (Symbol j = i + 1; j < maps.size(); ++j) {
      const double lo = std::max(maps[i].translation, maps[j].translation);
      const double hi = std::min(maps[i].translation + maps[i].ratio,
                                 maps[j].translation + maps[j].ratio);
      if (hi - lo > kDisjointnessTolerance) {
        report.disjoint = false;
        report.overlaps.emplace_back(i, j);
      }
    }
  }
  return report;
}

Interval attractor_hull(const WeightedIFS& ifs) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& m : ifs.maps()) {
    lo = std::min(lo, m.fixed_point());
    hi = std::max(hi, m.fixed_point());
  }
  return Interval{std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0)};
}

bool attractor_is_point(const WeightedIFS& ifs) {
  const Interval h = attractor_hull(ifs);
  return h.hi - h.lo <= 1e-15;
}

double StoppingFamily::total_weight() const {
  CompensatedSum<double> sum;
  for (const auto& e : entries_) sum.add(e.weight);
  return sum.value();
}

double word_growth_exponent(const WeightedIFS& ifs) {
  if (ifs.size() == 1) return 0.0;
  auto f = [&](double k) {
    double s = 0.0;
    for (const auto& m : ifs.maps()) s += std::pow(m.ratio, k);
    return s;
  };
  double lo = 0.0, hi = 1.0;
  while (f(hi) > 1.0) hi *= 2.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double estimate_stopping_count(const WeightedIFS& ifs, double t) {
  return std::exp(word_growth_exponent(ifs) * t);
}

StoppingFamily stopping_words(const WeightedIFS& ifs, double t, std::size_t cap) {
  std::vector<Symbol> symbols;
  std::vector<StoppingEntry> entries;
  for_each_stopping_word(ifs, t, cap, [&](const WordView& w) {
    entries.push_back(StoppingEntry{symbols.size(), w.symbols.size(), w.ratio,
                                    w.weight, w.cylinder});
    symbols.insert(symbols.end(), w.symbols.begin(), w.symbols.end());
  });
  return StoppingFamily(t, std::move(symbols), std::move(entries));
}

namespace detail {

double level_count(const WeightedIFS& ifs, std::size_t depth) {
  return std::pow(static_cast<double>(ifs.size()), static_cast<double>(depth));
}

}  // namespace detail

}  // namespace fracdecay
