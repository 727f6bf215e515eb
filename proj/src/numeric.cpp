#include "pbcount/numeric.hpp"

#include <cctype>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace pbcount {

namespace {

using boost::multiprecision::mpz_int;

bool allDigits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_int pow10(unsigned n) {
    mpz_int r = 1;
    for (unsigned i = 0; i < n; ++i) r *= 10;
    return r;
}

[[noreturn]] void bad(std::string_view text) {
    throw std::invalid_argument("not a finite rational number: '" + std::string(text) + "'");
}

// Boost reads a leading 0 as an octal prefix, so strip it first.
mpz_int decimal(std::string_view digits) {
    auto first = digits.find_first_not_of('0');
    return first == std::string_view::npos ? mpz_int(0) : mpz_int(std::string(digits.substr(first)));
}

}  // namespace

Rational parseRational(std::string_view text) {
    std::string_view s = text;
    if (s.empty()) bad(text);
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!allDigits(num) || !allDigits(den)) bad(text);
        mpz_int d = decimal(den);
        if (d == 0) bad(text);
        Rational r(decimal(num), d);
        return negative ? Rational(-r) : r;
    }

    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        auto expPart = s.substr(e + 1);
        bool expNeg = false;
        if (!expPart.empty() && (expPart.front() == '+' || expPart.front() == '-')) {
            expNeg = expPart.front() == '-';
            expPart.remove_prefix(1);
        }
        if (!allDigits(expPart) || expPart.size() > 5) bad(text);
        exponent = std::stol(std::string(expPart));
        if (expNeg) exponent = -exponent;
    }

    std::string_view intPart = mantissa;
    std::string_view fracPart;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        intPart = mantissa.substr(0, dot);
        fracPart = mantissa.substr(dot + 1);
    }
    if (intPart.empty() && fracPart.empty()) bad(text);
    if (!intPart.empty() && !allDigits(intPart)) bad(text);
    if (!fracPart.empty() && !allDigits(fracPart)) bad(text);

    std::string digits(intPart);
    digits += fracPart;
    mpz_int numerator = decimal(digits);
    exponent -= static_cast<long>(fracPart.size());
    Rational r = exponent >= 0 ? Rational(numerator * pow10(static_cast<unsigned>(exponent)))
                               : Rational(numerator, pow10(static_cast<unsigned>(-exponent)));
    return negative ? Rational(-r) : r;
}

std::string formatRational(const Rational& value) {
    mpz_int num = boost::multiprecision::numerator(value);
    mpz_int den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();

    mpz_int rest = den;
    unsigned twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return num.str() + "/" + den.str();

    unsigned places = std::max(twos, fives);
    mpz_int scaled = num * pow10(places) / den;
    bool negative = scaled < 0;
    std::string digits = (negative ? mpz_int(-scaled) : scaled).str();
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
    return negative ? "-" + digits : digits;
}

std::string formatDouble(double value, int significantDigits) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significantDigits, value);
    return buf;
}

double toDouble(const Rational& value) { return value.convert_to<double>(); }

BigInt parseDecimalInteger(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!allDigits(s)) throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
    auto first = s.find_first_not_of('0');
    BigInt value = first == std::string_view::npos ? BigInt(0) : BigInt(std::string(s.substr(first)));
    return negative ? BigInt(-value) : value;
}

long long toInt64(const BigInt& value) {
    if (value > std::numeric_limits<long long>::max() || value < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + value.str());
    return value.convert_to<long long>();
}

}  // namespace pbcount
