#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fracdecay {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", an integer, or a decimal such as "0.125" or "-2.5e-3",
/// exactly. Throws InputError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double.
Rational exact_rational(double x);

/// Nearest double.
double to_double(const Rational& q);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

}  // namespace fracdecay
