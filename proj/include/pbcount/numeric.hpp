#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace pbcount {

/// Coefficients and degrees. Small values stay inline, large ones spill to the heap.
using BigInt = boost::multiprecision::cpp_int;

/// Exact weights and exact-mode diagram terminals.
using Rational = boost::multiprecision::mpq_rational;

/// Parses an exact rational from a decimal literal (`0.3`, `-2`, `1.5e-3`)
/// or a fraction (`1/3`). Throws std::invalid_argument on anything else,
/// including `inf` and `nan`.
Rational parseRational(std::string_view text);

/// Exact decimal when the denominator only has factors 2 and 5, `p/q` otherwise.
/// parseRational(formatRational(r)) == r for every r.
std::string formatRational(const Rational& value);

/// `%.<digits>g` formatting used for float-mode output.
std::string formatDouble(double value, int significantDigits = 12);

double toDouble(const Rational& value);

/// Optional sign followed by decimal digits; leading zeros are not octal.
BigInt parseDecimalInteger(std::string_view text);

/// Converts a coefficient to a machine integer; throws std::overflow_error when it does not fit.
long long toInt64(const BigInt& value);

}  // namespace pbcount
