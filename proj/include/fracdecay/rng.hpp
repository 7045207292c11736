#pragma once

#include <cstdint>
#include <limits>

namespace fracdecay {

/// SplitMix64 (Steele, Lea, Flood). Small state, so one stream per sample
/// index is cheap; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Independent stream for sample `index` under `seed`.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed);
  const std::uint64_t a = mixer();
  SplitMix64 keyed(a ^ (index * 0xD1B54A32D192ED03ULL));
  return SplitMix64(keyed());
}

}  // namespace fracdecay
