#include "fracdecay/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>

#include "fracdecay/errors.hpp"

namespace fracdecay {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("not a number: \"" + std::string(whole) + "\"");
  BigInt v{std::string(s)};
  return negative ? BigInt(-v) : v;
}

BigInt pow10(unsigned n) {
  BigInt p = 1;
  for (unsigned i = 0; i < n; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string_view whole = text;
  if (text.empty()) throw InputError("empty number");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt p = parse_integer(text.substr(0, slash), whole);
    const BigInt q = parse_integer(text.substr(slash + 1), whole);
    if (q == 0) throw InputError("zero denominator in \"" + std::string(whole) + "\"");
    return Rational(p, q);
  }

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const BigInt ev = parse_integer(text.substr(e + 1), whole);
    if (ev > 4000 || ev < -4000) throw InputError("exponent out of range in \"" + std::string(whole) + "\"");
    exponent = static_cast<long>(ev);
    text = text.substr(0, e);
  }
  std::string digits;
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw InputError("not a number: \"" + std::string(whole) + "\"");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
      throw InputError("not a number: \"" + std::string(whole) + "\"");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(text)) throw InputError("not a number: \"" + std::string(whole) + "\"");
    digits = std::string(text);
  }
  Rational v{BigInt(digits)};
  if (exponent > 0) v *= pow10(static_cast<unsigned>(exponent));
  if (exponent < 0) v /= pow10(static_cast<unsigned>(-exponent));
  return negative ? Rational(-v) : v;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value has no rational form");
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
  e -= 53;
  Rational r{BigInt(mantissa)};
  if (e > 0) r *= BigInt(1) << e;
  if (e < 0) r /= BigInt(1) << -e;
  return r;
}

double to_double(const Rational& q) {
  const BigInt n = boost::multiprecision::numerator(q);
  const BigInt d = boost::multiprecision::denominator(q);
  const BigInt limit = BigInt(1) << 53;
  if (boost::multiprecision::abs(n) <= limit && d <= limit) {
    return static_cast<double>(n) / static_cast<double>(d);
  }
  return q.convert_to<double>();
}

std::string to_string(const Rational& q) {
  const BigInt n = boost::multiprecision::numerator(q);
  const BigInt d = boost::multiprecision::denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

}  // namespace fracdecay
