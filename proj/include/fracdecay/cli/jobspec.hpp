#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracdecay/ifs.hpp"
#include "fracdecay/luroth.hpp"

namespace fracdecay::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Command parameters. Anything unset falls back to a per-command default.
struct Parameters {
  std::optional<double> t;
  std::optional<double> xi_max;
  std::optional<double> delta;
  std::optional<double> l;
  std::optional<double> b_max;
  std::optional<double> s;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> cap;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> points_per_octave;
  std::optional<std::size_t> level;
  std::optional<std::size_t> count;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> x;
  std::optional<std::string> test;
  std::optional<std::vector<Digit>> digits;
  std::optional<std::int64_t> a1;
  std::optional<std::int64_t> a2;
  std::optional<std::string> out;

  /// Copies every parameter that `overrides` sets.
  void merge(const Parameters& overrides);
};

struct JobSpec {
  /// Absent when the document names no system (parameter-only commands).
  std::optional<WeightedIFS> ifs;
  std::optional<std::vector<Digit>> luroth;
  /// Weights were omitted and replaced by the natural weights.
  bool natural_weights = false;
  Parameters params;
  /// FNV-1a of the document text, hex.
  std::string hash;

  /// Throws InputError when the document has no system.
  const WeightedIFS& system() const;
};

/// Parses a JSON job document. System: {"maps": [[ratio, translation], ...],
/// "weights": [...]} or {"luroth": [digits]}; numbers may be JSON numbers,
/// integers, decimals, or "p/q" strings. Omitted weights become the natural
/// weights when the Moran equation is solvable, uniform otherwise. Other keys
/// are parameters named as in Parameters.
JobSpec parse_spec(std::string_view text);

std::string fnv1a_hex(std::string_view text);

}  // namespace fracdecay::cli
