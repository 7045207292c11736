#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracdecay/errors.hpp"

namespace fracdecay {

/// Default limit on the number of words any single enumeration may visit.
inline constexpr std::size_t kDefaultWordCap = 50'000'000;

/// Tolerance for endpoint contact between first-level images.
inline constexpr double kDisjointnessTolerance = 1e-12;

/// x -> ratio * x + translation, mapping [0,1] into itself.
struct Similitude {
  double ratio = 0.5;
  double translation = 0.0;

  double operator()(double x) const { return ratio * x + translation; }
  double fixed_point() const { return translation / (1.0 - ratio); }
};

/// Throws InputError unless 0 < ratio < 1, translation >= 0 and
/// ratio + translation <= 1.
Similitude make_similitude(double ratio, double translation);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double diameter() const { return hi - lo; }
  double midpoint() const { return lo + 0.5 * (hi - lo); }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
};

using Symbol = std::size_t;

/// Finite alphabet of similitudes with positive probability weights.
class WeightedIFS {
 public:
  /// Validates every invariant: non-empty, one map and one positive weight
  /// per symbol, weights summing to 1 within 1e-12, distinct labels.
  static WeightedIFS create(std::vector<std::string> alphabet,
                            std::vector<Similitude> maps,
                            std::vector<double> weights);

  /// Uniform weights, symbols labelled "0", "1", ...
  static WeightedIFS uniform(std::vector<Similitude> maps);

  std::size_t size() const { return maps_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<Similitude>& maps() const { return maps_; }
  const std::vector<double>& weights() const { return weights_; }
  const Similitude& map(Symbol s) const { return maps_.at(s); }
  double weight(Symbol s) const { return weights_.at(s); }
  double ratio(Symbol s) const { return maps_.at(s).ratio; }
  double min_ratio() const;
  double max_ratio() const;

  std::optional<Symbol> index_of(std::string_view label) const;

  /// Same alphabet and maps with new weights (validated).
  WeightedIFS with_weights(std::vector<double> weights) const;

 private:
  WeightedIFS() = default;

  std::vector<std::string> alphabet_;
  std::vector<Similitude> maps_;
  std::vector<double> weights_;
};

struct AffineMap {
  double slope = 1.0;
  double intercept = 0.0;

  double operator()(double x) const { return slope * x + intercept; }
};

/// A finite word with its products. `map` is f_{w_n} o ... o f_{w_1}.
struct Word {
  std::vector<Symbol> symbols;
  double ratio_product = 1.0;
  double weight_product = 1.0;
  AffineMap map;
};

/// Composes the symbols in application order: the first symbol is applied
/// first, so the result is f_{w_n} o ... o f_{w_1}. Throws InputError on a
/// symbol outside the alphabet.
Word compose_word(const WeightedIFS& ifs, std::span<const Symbol> symbols);
Word compose_word(const WeightedIFS& ifs, std::span<const std::string> labels);

/// Image of [0,1] under the word's composed map.
Interval cylinder_interval(const WeightedIFS& ifs, const Word& word);

/// Image of [0,1] under f_{s_1} o ... o f_{s_n}: every coding-map image of a
/// sequence that begins with `code` lies inside it. Nested under appending.
Interval code_cylinder(const WeightedIFS& ifs, std::span<const Symbol> code);

struct CodedPoint {
  double point = 0.0;
  double radius = 0.0;
};

/// Midpoint and half-width of code_cylinder(code); the radius bounds the
/// distance to the coding-map image of any infinite extension of `code`.
CodedPoint point_from_code(const WeightedIFS& ifs, std::span<const Symbol> code);

struct DisjointnessReport {
  bool disjoint = true;
  /// Pairs of symbols whose first-level images overlap in more than an endpoint.
  std::vector<std::pair<Symbol, Symbol>> overlaps;

  explicit operator bool() const { return disjoint; }
};

DisjointnessReport validate_disjointness(const WeightedIFS& ifs);

/// [min fixed point, max fixed point]: the convex hull of the attractor.
Interval attractor_hull(const WeightedIFS& ifs);

/// True when every map shares one fixed point (the attractor is a point).
bool attractor_is_point(const WeightedIFS& ifs);

/// Non-owning view of one enumerated word. `cylinder` is the coding-order
/// image f_{s_1} o ... o f_{s_n}([0,1]); `slope` equals `ratio`.
struct WordView {
  std::span<const Symbol> symbols;
  double ratio = 1.0;
  double weight = 1.0;
  double neg_log_ratio = 0.0;
  Interval cylinder;
};

/// One minimal word per branch whose contraction first reaches e^{-t}.
struct StoppingEntry {
  std::size_t offset = 0;
  std::size_t length = 0;
  double ratio = 1.0;
  double weight = 1.0;
  Interval cylinder;
};

/// Prefix-free family W_t stored compactly (one symbol buffer).
class StoppingFamily {
 public:
  StoppingFamily(double threshold, std::vector<Symbol> symbols,
                 std::vector<StoppingEntry> entries)
      : threshold_(threshold),
        symbols_(std::move(symbols)),
        entries_(std::move(entries)) {}

  double threshold() const { return threshold_; }
  std::size_t size() const { return entries_.size(); }
  const StoppingEntry& entry(std::size_t i) const { return entries_.at(i); }
  const std::vector<StoppingEntry>& entries() const { return entries_; }
  std::span<const Symbol> symbols(std::size_t i) const {
    const auto& e = entries_.at(i);
    return std::span<const Symbol>(symbols_).subspan(e.offset, e.length);
  }
  double total_weight() const;

 private:
  double threshold_;
  std::vector<Symbol> symbols_;
  std::vector<StoppingEntry> entries_;
};

/// Growth exponent kappa with sum r_w^kappa = 1; |W_t| grows like e^{kappa t}.
double word_growth_exponent(const WeightedIFS& ifs);

/// Rough size of W_t, used in resource errors and early refusal.
double estimate_stopping_count(const WeightedIFS& ifs, double t);

StoppingFamily stopping_words(const WeightedIFS& ifs, double t,
                              std::size_t cap = kDefaultWordCap);

namespace detail {

struct WalkState {
  double neg_log_ratio = 0.0;
  double ratio = 1.0;
  double weight = 1.0;
  double intercept = 0.0;
};

template <class Stop, class Visitor>
class WordWalker {
 public:
  WordWalker(const WeightedIFS& ifs, Stop stop, Visitor& visit, std::size_t cap,
             double estimate)
      : ifs_(ifs), stop_(stop), visit_(visit), cap_(cap), estimate_(estimate) {
    log_ratio_.reserve(ifs.size());
    for (const auto& m : ifs.maps()) log_ratio_.push_back(-std::log(m.ratio));
  }

  std::size_t run() {
    descend(WalkState{});
    return count_;
  }

 private:
  void descend(const WalkState& state) {
    if (stop_(state, path_.size())) {
      if (++count_ > cap_) {
        throw ResourceError("word enumeration exceeds cap of " +
                                std::to_string(cap_) + " (estimated " +
                                std::to_string(estimate_) + " words)",
                            estimate_);
      }
      WordView view{std::span<const Symbol>(path_), state.ratio, state.weight,
                    state.neg_log_ratio,
                    Interval{state.intercept, state.intercept + state.ratio}};
      visit_(view);
      return;
    }
    for (Symbol s = 0; s < ifs_.size(); ++s) {
      const Similitude& f = ifs_.maps()[s];
      WalkState next;
      next.neg_log_ratio = state.neg_log_ratio + log_ratio_[s];
      next.ratio = state.ratio * f.ratio;
      next.weight = state.weight * ifs_.weights()[s];
      next.intercept = state.ratio * f.translation + state.intercept;
      path_.push_back(s);
      descend(next);
      path_.pop_back();
    }
  }

  const WeightedIFS& ifs_;
  Stop stop_;
  Visitor& visit_;
  std::size_t cap_;
  double estimate_;
  std::vector<double> log_ratio_;
  std::vector<Symbol> path_;
  std::size_t count_ = 0;
};

double level_count(const WeightedIFS& ifs, std::size_t depth);

}  // namespace detail

/// Depth-first, alphabet-ordered walk over W_t. Returns the word count.
template <class Visitor>
std::size_t for_each_stopping_word(const WeightedIFS& ifs, double t,
                                   std::size_t cap, Visitor&& visit) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("threshold t must be a positive finite real");
  if (cap < 1) throw InputError("word cap must be at least 1");
  const double estimate = estimate_stopping_count(ifs, t);
  if (estimate > 4.0 * static_cast<double>(cap)) {
    throw ResourceError("stopping family for t=" + std::to_string(t) +
                            " has an estimated " + std::to_string(estimate) +
                            " words, above cap " + std::to_string(cap),
                        estimate);
  }
  auto stop = [t](const detail::WalkState& s, std::size_t depth) {
    return depth > 0 && s.neg_log_ratio >= t;
  };
  detail::WordWalker walker(ifs, stop, visit, cap, estimate);
  return walker.run();
}

/// Depth-first walk over all words of length `depth`.
template <class Visitor>
std::size_t for_each_level_word(const WeightedIFS& ifs, std::size_t depth,
                                std::size_t cap, Visitor&& visit) {
  const double estimate = detail::level_count(ifs, depth);
  if (estimate > static_cast<double>(cap)) {
    throw ResourceError("level-" + std::to_string(depth) + " enumeration has " +
                            std::to_string(estimate) + " words, above cap " +
                            std::to_string(cap),
                        estimate);
  }
  auto stop = [depth](const detail::WalkState&, std::size_t d) { return d == depth; };
  detail::WordWalker walker(ifs, stop, visit, cap, estimate);
  return walker.run();
}

}  // namespace fracdecay
