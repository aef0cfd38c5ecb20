#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <cumpoly/rational.hpp>

namespace cumpoly
{

// A d-tuple of non-negative integers (d >= 1). Ordered graded-lexicographically:
// total degree first, then lexicographically on the entries.
class MultiIndex
{
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> entries);
    MultiIndex(std::initializer_list<unsigned> entries);

    static MultiIndex zero(std::size_t dim);
    static MultiIndex unit(std::size_t dim, std::size_t r);

    // "i1,i2,...,id"
    static MultiIndex parse(std::string_view text);
    std::string to_string() const;

    std::size_t dim() const noexcept
    {
        return entries_.size();
    }
    unsigned degree() const noexcept
    {
        return degree_;
    }
    bool is_zero() const noexcept
    {
        return degree_ == 0;
    }
    unsigned operator[](std::size_t r) const
    {
        return entries_[r];
    }
    const std::vector<unsigned> &entries() const noexcept
    {
        return entries_;
    }

    // Entrywise <=.
    bool fits_in(const MultiIndex &other) const;

    // Product of the factorials of the entries.
    Integer factorial() const;

    MultiIndex operator+(const MultiIndex &other) const;
    // Throws std::domain_error if any entry would go negative.
    MultiIndex operator-(const MultiIndex &other) const;
    MultiIndex scaled(unsigned k) const;

    friend bool operator==(const MultiIndex &, const MultiIndex &) = default;
    friend std::strong_ordering operator<=>(const MultiIndex &a, const MultiIndex &b);

private:
    std::vector<unsigned> entries_;
    unsigned degree_ = 0;
};

// Plain lexicographic comparison on the entries (used for partition columns).
bool lex_less(const MultiIndex &a, const MultiIndex &b);

// All multi-indexes of dimension `dim` with min_degree <= |i| <= max_degree, in
// graded-lexicographic order.
std::vector<MultiIndex> indices_up_to(std::size_t dim, unsigned max_degree, unsigned min_degree = 0);

// All j with j <= i entrywise, in graded-lexicographic order.
std::vector<MultiIndex> sub_indices(const MultiIndex &i);

// binom(i; j) = i! / (j! (i - j)!), the product of per-coordinate binomials.
Integer binomial(const MultiIndex &i, const MultiIndex &j);

// Power product z^i for a point z.
Rational monomial_value(const MultiIndex &i, const std::vector<Rational> &point);

} // namespace cumpoly
