#include "fracdecay/luroth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracdecay/dimension.hpp"
#include "fracdecay/errors.hpp"

namespace fracdecay {

namespace {

std::vector<Digit> checked_digit_set(std::vector<Digit> digits) {
  if (digits.empty()) throw InputError("digit set must be non-empty");
  std::sort(digits.begin(), digits.end());
  if (digits.front() < 2) throw InputError("Luroth digits must be >= 2");
  if (std::adjacent_find(digits.begin(), digits.end()) != digits.end()) {
    throw InputError("Luroth digit set has a repeated digit");
  }
  if (digits.back() > (Digit{1} << 31)) throw InputError("Luroth digit too large");
  return digits;
}

void check_digits(const std::vector<Digit>& digits) {
  if (digits.empty()) throw InputError("digit sequence must be non-empty");
  for (Digit d : digits) {
    if (d < 2) throw InputError("Luroth digits must be >= 2");
  }
}

// dim/(1+2 dim) and the two smallest digits.
struct BetaInputs {
  double shape = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

BetaInputs beta_inputs(std::vector<Digit> digits) {
  digits = checked_digit_set(std::move(digits));
  if (digits.size() < 2) throw InputError("beta exponents need at least two digits");
  const double dim = solve_moran(luroth_ifs(digits)).s_star;
  return {dim / (1.0 + 2.0 * dim), static_cast<double>(digits[0]), static_cast<double>(digits[1])};
}

}  // namespace

WeightedIFS luroth_ifs(std::vector<Digit> digits) {
  digits = checked_digit_set(std::move(digits));
  std::vector<std::string> labels;
  std::vector<Similitude> maps;
  for (Digit d : digits) {
    labels.push_back(std::to_string(d));
    maps.push_back(make_similitude(to_double(Rational(1, d * (d - 1))), to_double(Rational(1, d))));
  }
  std::vector<double> weights(digits.size(), 1.0 / static_cast<double>(digits.size()));
  return WeightedIFS::create(std::move(labels), std::move(maps), std::move(weights));
}

LurothDigits luroth_encode(const Rational& x, std::size_t n) {
  if (!(x > 0 && x <= 1)) throw InputError("Luroth encoding needs 0 < x <= 1");
  const BigInt digit_limit = BigInt(std::numeric_limits<Digit>::max() / 4);
  LurothDigits out;
  out.digits.reserve(n);
  Rational r = x;
  for (std::size_t k = 0; k < n; ++k) {
    // x in (1/d, 1/(d-1)]  <=>  d = floor(1/x) + 1
    const BigInt d = boost::multiprecision::denominator(r) / boost::multiprecision::numerator(r) + 1;
    if (d > digit_limit) throw InputError("Luroth digit exceeds the 64-bit range");
    out.digits.push_back(static_cast<Digit>(d));
    r = Rational(d * (d - 1)) * r - Rational(d - 1);
  }
  out.terminating = r == 1;
  return out;
}

LurothDigits luroth_encode(double x, std::size_t n) {
  if (!std::isfinite(x) || !(x > 0.0 && x <= 1.0)) {
    throw InputError("Luroth encoding needs 0 < x <= 1");
  }
  return luroth_encode(exact_rational(x), n);
}

ExactLurothValue luroth_decode_exact(const LurothDigits& digits) {
  check_digits(digits.digits);
  ExactLurothValue v{Rational(0), Rational(1)};
  for (Digit d : digits.digits) {
    v.value += v.tail / d;
    v.tail /= Rational(d) * (d - 1);
  }
  if (digits.terminating) {
    v.value += v.tail;
    v.tail = 0;
  }
  return v;
}

LurothValue luroth_decode(const LurothDigits& digits) {
  const auto exact = luroth_decode_exact(digits);
  return {to_double(exact.value), to_double(exact.tail)};
}

std::vector<FigureInterval> luroth_figure(std::vector<Digit> digits, std::size_t level) {
  digits = checked_digit_set(std::move(digits));
  if (level < 1) throw InputError("figure level must be at least 1");
  const double count = std::pow(static_cast<double>(digits.size()), static_cast<double>(level));
  if (count > 1e7) throw ResourceError("figure level would produce too many intervals", count);

  std::vector<FigureInterval> out;
  std::vector<std::size_t> index(level, 0);
  while (true) {
    LurothDigits code;
    for (std::size_t i : index) code.digits.push_back(digits[i]);
    const auto v = luroth_decode_exact(code);
    out.push_back({code.digits, v.value, v.value + v.tail});
    std::size_t pos = level;
    while (pos > 0 && ++index[pos - 1] == digits.size()) index[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

double beta_theorem4(std::vector<Digit> digits) {
  const auto in = beta_inputs(std::move(digits));
  return in.shape * 1e-10 / (std::log(in.a1) * std::log(in.a2) + 1.0);
}

double beta_prop10(std::vector<Digit> digits) {
  const auto in = beta_inputs(std::move(digits));
  const double omega = (std::log(in.a1) + std::log(in.a1 - 1.0)) * (std::log(in.a2) + std::log(in.a2 - 1.0));
  const double k = 3096576.0 * std::exp(3.0) * (15.8 + 5.5 * std::numbers::ln2);
  return 0.5 * in.shape / (k * omega + 1.0);
}

}  // namespace fracdecay
