#pragma once

// Exact scalar arithmetic. Every coefficient in the library is a GMP-backed
// rational; fixed-width integers never appear on a coefficient path.

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace cumpoly
{

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

// Thrown when an input cannot be interpreted (bad rational text, bad index
// text, malformed JSON payload). The CLI maps it to a usage error.
class ParseError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a request would exceed a configured enumeration cap.
class SizeCapError : public std::length_error
{
public:
    using std::length_error::length_error;
};

// Accepts "p", "p/q" and finite decimals such as "-0.125" or "1e-3".
Rational parse_rational(std::string_view text);

// Canonical text: "p/q" with q > 1, or "p" when the value is an integer.
std::string to_string(const Rational &q);

inline bool is_zero(const Rational &q)
{
    return q == 0;
}

Rational pow(const Rational &base, unsigned exponent);

Integer factorial(unsigned n);

Integer binomial(unsigned n, unsigned k);

// a (a + 1) ... (a + k - 1); the empty product is 1.
Rational rising_factorial(const Rational &a, unsigned k);

double to_double(const Rational &q);

} // namespace cumpoly
