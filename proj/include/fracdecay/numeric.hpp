#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

namespace fracdecay {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Neumaier-compensated running sum. Works for double and std::complex<double>.
template <class T>
class CompensatedSum {
 public:
  void add(const T& x) {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      add_real(re_, re_c_, x.real());
      add_real(im_, im_c_, x.imag());
    } else {
      add_real(re_, re_c_, x);
    }
  }

  void add(const CompensatedSum& other) {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      add_real(re_, re_c_, other.re_);
      add_real(re_, re_c_, other.re_c_);
      add_real(im_, im_c_, other.im_);
      add_real(im_, im_c_, other.im_c_);
    } else {
      add_real(re_, re_c_, other.re_);
      add_real(re_, re_c_, other.re_c_);
    }
  }

  T value() const {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      return {re_ + re_c_, im_ + im_c_};
    } else {
      return re_ + re_c_;
    }
  }

 private:
  static void add_real(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double re_ = 0.0, re_c_ = 0.0;
  double im_ = 0.0, im_c_ = 0.0;
};

/// e^{-2 pi i x} with the integer part of x removed first, so large
/// arguments keep full phase accuracy. Odd in x bit-for-bit.
inline std::complex<double> unit_phase(double x) {
  const double frac = x - std::round(x);
  const double angle = -kTwoPi * frac;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace fracdecay
