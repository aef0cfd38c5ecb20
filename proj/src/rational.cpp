#include <cumpoly/rational.hpp>

#include <cctype>
#include <vector>

namespace cumpoly
{

namespace
{

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

// Boost reads a leading 0 as an octal prefix, so parse from the first
// significant digit.
Integer decimal_integer(std::string_view digits)
{
    const auto first = digits.find_first_not_of('0');
    return first == std::string_view::npos ? Integer(0) : Integer(std::string(digits.substr(first)));
}

Integer parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw ParseError("invalid rational: '" + std::string(whole) + "'");
    }
    const Integer value = decimal_integer(s);
    return negative ? Integer(-value) : value;
}

Integer pow10(unsigned e)
{
    Integer r = 1;
    for (unsigned k = 0; k < e; ++k) {
        r *= 10;
    }
    return r;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    const std::string_view whole = text;
    if (text.empty()) {
        throw ParseError("invalid rational: empty string");
    }

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const Integer num = parse_integer(text.substr(0, slash), whole);
        const Integer den = parse_integer(text.substr(slash + 1), whole);
        if (den == 0) {
            throw ParseError("invalid rational: zero denominator in '" + std::string(whole) + "'");
        }
        return Rational(num, den);
    }

    // Decimal with optional exponent, converted exactly.
    int exponent = 0;
    std::string_view mantissa = text;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        const Integer ex = parse_integer(text.substr(e + 1), whole);
        if (ex > 10000 || ex < -10000) {
            throw ParseError("invalid rational: exponent out of range in '" + std::string(whole) + "'");
        }
        exponent = ex.convert_to<int>();
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    int frac_digits = 0;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        const auto ip = mantissa.substr(0, dot);
        const auto fp = mantissa.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
            throw ParseError("invalid rational: '" + std::string(whole) + "'");
        }
        digits = std::string(ip) + std::string(fp);
        frac_digits = static_cast<int>(fp.size());
    } else {
        if (!all_digits(mantissa)) {
            throw ParseError("invalid rational: '" + std::string(whole) + "'");
        }
        digits = std::string(mantissa);
    }
    Integer num = decimal_integer(digits);
    if (negative) {
        num = -num;
    }
    const int shift = exponent - frac_digits;
    if (shift >= 0) {
        return Rational(num * pow10(static_cast<unsigned>(shift)));
    }
    return Rational(num, pow10(static_cast<unsigned>(-shift)));
}

std::string to_string(const Rational &q)
{
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

Rational pow(const Rational &base, unsigned exponent)
{
    Rational result = 1;
    Rational b = base;
    while (exponent != 0) {
        if (exponent & 1U) {
            result *= b;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            b *= b;
        }
    }
    return result;
}

Integer factorial(unsigned n)
{
    thread_local std::vector<Integer> local{Integer(1)};
    while (local.size() <= n) {
        local.push_back(local.back() * static_cast<unsigned>(local.size()));
    }
    return local[n];
}

Integer binomial(unsigned n, unsigned k)
{
    if (k > n) {
        return 0;
    }
    return factorial(n) / (factorial(k) * factorial(n - k));
}

Rational rising_factorial(const Rational &a, unsigned k)
{
    Rational r = 1;
    for (unsigned j = 0; j < k; ++j) {
        r *= a + j;
    }
    return r;
}

double to_double(const Rational &q)
{
    return q.convert_to<double>();
}

} // namespace cumpoly
