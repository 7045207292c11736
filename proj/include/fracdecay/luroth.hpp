#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fracdecay/ifs.hpp"
#include "fracdecay/rational.hpp"

namespace fracdecay {

using Digit = std::int64_t;

struct LurothDigits {
  std::vector<Digit> digits;
  /// The remainder after the last digit is exactly 1, so every further
  /// digit is 2 and the digits determine x without a tail.
  bool terminating = false;
};

/// Maps f_d(x) = 1/d + x/(d(d-1)) for d in A, in ascending digit order,
/// labelled by the digit, with uniform weights. Throws InputError on an
/// empty set, a digit below 2 or a repeated digit.
WeightedIFS luroth_ifs(std::vector<Digit> digits);

/// First n digits of x in (0,1], computed in exact rational arithmetic
/// (a double argument is converted exactly). The digit at each step is the
/// d with x in (1/d, 1/(d-1)].
LurothDigits luroth_encode(const Rational& x, std::size_t n);
LurothDigits luroth_encode(double x, std::size_t n);

/// Partial sum of the series and the product prod 1/(d_j(d_j-1)). Every x
/// whose expansion starts with the digits lies in (value, value + tail].
/// A terminating sequence has its tail folded into the value.
struct LurothValue {
  double value = 0.0;
  double tail = 0.0;
};

struct ExactLurothValue {
  Rational value;
  Rational tail;
};

LurothValue luroth_decode(const LurothDigits& digits);
ExactLurothValue luroth_decode_exact(const LurothDigits& digits);

/// A retained interval (lo, hi] of the level-k construction of L_A.
struct FigureInterval {
  std::vector<Digit> code;
  Rational lo;
  Rational hi;
};

/// All |A|^level cylinders, in depth-first ascending digit order (which is
/// descending position).
std::vector<FigureInterval> luroth_figure(std::vector<Digit> digits, std::size_t level);

/// (dim/(1+2dim)) 1e-10/(log a1 log a2 + 1) for the two smallest digits.
double beta_theorem4(std::vector<Digit> digits);

/// (1/2)(dim/(1+2dim)) / (3096576 e^3 (15.8 + 5.5 log 2) log(a1(a1-1)) log(a2(a2-1)) + 1).
double beta_prop10(std::vector<Digit> digits);

}  // namespace fracdecay
