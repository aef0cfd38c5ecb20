#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <cumpoly/rational.hpp>

namespace cumpoly
{

// Orders names with embedded digit runs compared numerically, so that
// y_2 < y_10 and c_{1,0} < c_{2,0}.
bool natural_less(std::string_view a, std::string_view b);

// Sparse multivariate polynomial with exact rational coefficients over a set
// of named indeterminates.
//
// The indeterminate list is kept sorted by natural_less; binary operations
// first re-express both operands over the union of their indeterminates.
// Terms are keyed by exponent vectors in graded lexicographic order and zero
// coefficients are never stored.
class Poly
{
public:
    using Exponents = std::vector<unsigned>;

    struct GradedLess {
        bool operator()(const Exponents &a, const Exponents &b) const;
    };
    using TermMap = std::map<Exponents, Rational, GradedLess>;

    Poly() = default;
    Poly(Rational constant); // NOLINT: implicit by design of the coefficient ring
    // Validates exponent lengths, sorts the indeterminates, rejects duplicates.
    Poly(std::vector<std::string> vars, TermMap terms);

    static Poly variable(std::string name);
    // The zero polynomial over the given indeterminates.
    static Poly zero_over(std::vector<std::string> vars);

    const std::vector<std::string> &vars() const noexcept
    {
        return vars_;
    }
    const TermMap &terms() const noexcept
    {
        return terms_;
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    bool is_constant() const;
    // Throws std::domain_error when the polynomial is not constant.
    Rational constant_value() const;
    Rational constant_term() const;
    unsigned degree() const;
    unsigned degree_in(std::string_view var) const;

    // Same polynomial over a superset of indeterminates (sorted on the way in).
    Poly over(const std::vector<std::string> &vars) const;

    Poly &operator+=(const Poly &rhs);
    Poly &operator-=(const Poly &rhs);
    Poly &operator*=(const Poly &rhs);
    Poly &operator*=(const Rational &rhs);

    friend Poly operator+(Poly a, const Poly &b)
    {
        return a += b;
    }
    friend Poly operator-(Poly a, const Poly &b)
    {
        return a -= b;
    }
    friend Poly operator*(Poly a, const Poly &b)
    {
        return a *= b;
    }
    friend Poly operator*(Poly a, const Rational &b)
    {
        return a *= b;
    }
    friend Poly operator*(const Rational &a, Poly b)
    {
        return b *= a;
    }
    Poly operator-() const;

    Poly pow(unsigned exponent) const;

    // Compares the represented polynomial, ignoring unused indeterminates.
    friend bool operator==(const Poly &a, const Poly &b);

    // Positional evaluation; point.size() must equal vars().size().
    Rational evaluate(std::span<const Rational> point) const;
    // Replaces the named indeterminates by values; others stay symbolic.
    Poly evaluate(const std::map<std::string, Rational> &values) const;
    // Replaces the named indeterminates by polynomials.
    Poly substitute(const std::map<std::string, Poly> &images) const;

    // Splits the polynomial with respect to `group`: returns a map from the
    // exponent vector over `group` to the coefficient polynomial in the
    // remaining indeterminates.
    std::map<Exponents, Poly> collect(const std::vector<std::string> &group) const;

    // e.g. "y^3*c_{0,1}*c_{1,0}^2 + 2*y^2*c_{1,0}*c_{1,1}"
    std::string to_string() const;

private:
    void prune();
    std::size_t var_position(std::string_view var) const;

    std::vector<std::string> vars_;
    TermMap terms_;
};

inline bool is_zero(const Poly &p)
{
    return p.is_zero();
}

inline std::string to_string(const Poly &p)
{
    return p.to_string();
}

// The single-argument form of the poly_eval operation.
Rational poly_eval(const Poly &p, std::span<const Rational> point);

// Replaces every power var^l by g[l] (l >= 1); g[0] is not consulted and
// terms free of `var` are kept. Throws std::out_of_range naming the first
// order l >= g.size() that is needed.
Poly umbral_substitute_power(const Poly &p, std::span<const Rational> g, std::string_view var = "y");

} // namespace cumpoly
