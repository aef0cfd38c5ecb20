#pragma once

// Truncated multivariate formal power series in exponential format,
//
//     f(z) = sum_{|i| <= D} a_i z^i / i!,
//
// with coefficients in an exact ring (Rational or Poly). Every series stores
// its true constant term; operations that need a delta series (zero constant
// term) check it themselves.

#include <concepts>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <cumpoly/multi_index.hpp>
#include <cumpoly/poly.hpp>
#include <cumpoly/rational.hpp>

namespace cumpoly
{

template <typename C>
concept Coefficient = std::regular<C> && requires(C a, const C b, const Rational q) {
    C(q);
    { a + b } -> std::convertible_to<C>;
    { a - b } -> std::convertible_to<C>;
    { a * b } -> std::convertible_to<C>;
    { a * q } -> std::convertible_to<C>;
    { -b } -> std::convertible_to<C>;
    { is_zero(b) } -> std::convertible_to<bool>;
};

// Lifts a coefficient to a polynomial.
inline Poly to_poly(const Rational &q)
{
    return Poly(q);
}
inline Poly to_poly(const Poly &p)
{
    return p;
}

// Inverse of to_poly; for Rational the polynomial must be constant.
template <Coefficient C>
C from_poly(const Poly &p)
{
    if constexpr (std::same_as<C, Poly>) {
        return p;
    } else {
        return p.constant_value();
    }
}

class DimensionMismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

template <Coefficient C>
class TruncatedSeries
{
public:
    using coefficient_type = C;

    TruncatedSeries(std::size_t dim, unsigned order) : dim_(dim), order_(order)
    {
        if (dim == 0) {
            throw std::invalid_argument("series dimension must be >= 1");
        }
    }

    std::size_t dim() const noexcept
    {
        return dim_;
    }
    unsigned order() const noexcept
    {
        return order_;
    }
    const std::map<MultiIndex, C> &coefficients() const noexcept
    {
        return coeffs_;
    }

    // Missing keys read as zero.
    const C &operator[](const MultiIndex &i) const
    {
        static const C zero{};
        check_index(i);
        auto it = coeffs_.find(i);
        return it == coeffs_.end() ? zero : it->second;
    }

    void set(const MultiIndex &i, C value)
    {
        check_index(i);
        if (is_zero(value)) {
            coeffs_.erase(i);
        } else {
            coeffs_[i] = std::move(value);
        }
    }

    void add(const MultiIndex &i, const C &value)
    {
        check_index(i);
        if (is_zero(value)) {
            return;
        }
        auto [it, inserted] = coeffs_.try_emplace(i, value);
        if (!inserted) {
            it->second = it->second + value;
            if (is_zero(it->second)) {
                coeffs_.erase(it);
            }
        }
    }

    const C &constant_term() const
    {
        return (*this)[MultiIndex::zero(dim_)];
    }
    bool is_delta() const
    {
        return is_zero(constant_term());
    }

    TruncatedSeries truncated(unsigned order) const
    {
        TruncatedSeries out(dim_, order);
        for (const auto &[i, c] : coeffs_) {
            if (i.degree() <= order) {
                out.coeffs_.emplace(i, c);
            }
        }
        return out;
    }

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

private:
    void check_index(const MultiIndex &i) const
    {
        if (i.dim() != dim_) {
            throw DimensionMismatch("index " + i.to_string() + " has dimension " + std::to_string(i.dim()) +
                                    ", series has " + std::to_string(dim_));
        }
        if (i.degree() > order_) {
            throw std::out_of_range("index " + i.to_string() + " beyond truncation order " + std::to_string(order_));
        }
    }

    std::size_t dim_;
    unsigned order_;
    std::map<MultiIndex, C> coeffs_;
};

template <Coefficient D, Coefficient C>
TruncatedSeries<D> ring_cast(const TruncatedSeries<C> &f)
{
    TruncatedSeries<D> out(f.dim(), f.order());
    for (const auto &[i, c] : f.coefficients()) {
        if constexpr (std::same_as<D, Poly>) {
            out.set(i, to_poly(c));
        } else if constexpr (std::same_as<C, Poly>) {
            out.set(i, from_poly<D>(c));
        } else {
            out.set(i, D(c));
        }
    }
    return out;
}

namespace detail
{

inline void require_same_dim(std::size_t a, std::size_t b, const char *what)
{
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
    }
}

template <Coefficient C>
C scaled(const C &c, const Integer &k)
{
    return c * Rational(k);
}

} // namespace detail

template <Coefficient C>
TruncatedSeries<C> series_add(const TruncatedSeries<C> &f, const TruncatedSeries<C> &g)
{
    detail::require_same_dim(f.dim(), g.dim(), "series_add");
    const unsigned order = std::min(f.order(), g.order());
    TruncatedSeries<C> out = f.truncated(order);
    for (const auto &[i, c] : g.coefficients()) {
        if (i.degree() <= order) {
            out.add(i, c);
        }
    }
    return out;
}

template <Coefficient C>
TruncatedSeries<C> series_sub(const TruncatedSeries<C> &f, const TruncatedSeries<C> &g)
{
    detail::require_same_dim(f.dim(), g.dim(), "series_sub");
    const unsigned order = std::min(f.order(), g.order());
    TruncatedSeries<C> out = f.truncated(order);
    for (const auto &[i, c] : g.coefficients()) {
        if (i.degree() <= order) {
            out.add(i, -c);
        }
    }
    return out;
}

template <Coefficient C>
TruncatedSeries<C> series_scale(const C &s, const TruncatedSeries<C> &f)
{
    TruncatedSeries<C> out(f.dim(), f.order());
    if (is_zero(s)) {
        return out;
    }
    for (const auto &[i, c] : f.coefficients()) {
        out.set(i, s * c);
    }
    return out;
}

// Exponential-format convolution: h_i = sum_{j <= i} binom(i; j) f_j g_{i-j}.
template <Coefficient C>
TruncatedSeries<C> series_mul(const TruncatedSeries<C> &f, const TruncatedSeries<C> &g)
{
    detail::require_same_dim(f.dim(), g.dim(), "series_mul");
    const unsigned order = std::min(f.order(), g.order());
    TruncatedSeries<C> out(f.dim(), order);
    for (const auto &[j, a] : f.coefficients()) {
        if (j.degree() > order) {
            continue;
        }
        for (const auto &[k, b] : g.coefficients()) {
            if (j.degree() + k.degree() > order) {
                continue;
            }
            const MultiIndex i = j + k;
            out.add(i, detail::scaled(C(a * b), binomial(i, j)));
        }
    }
    return out;
}

namespace detail
{

inline std::size_t first_nonzero(const MultiIndex &k)
{
    for (std::size_t r = 0; r < k.dim(); ++r) {
        if (k[r] != 0) {
            return r;
        }
    }
    return k.dim();
}

// Coefficient at i + e_r of the product (d/dz_r f) * g, i.e.
// sum_{j <= i} binom(i; j) f_{j + e_r} g_{i - j}.
template <Coefficient C>
C derivative_product(const TruncatedSeries<C> &f, const TruncatedSeries<C> &g, const MultiIndex &i, std::size_t r)
{
    const MultiIndex e = MultiIndex::unit(i.dim(), r);
    C acc{};
    for (const auto &j : sub_indices(i)) {
        const MultiIndex je = j + e;
        if (je.degree() > f.order()) {
            continue;
        }
        const C &fj = f[je];
        if (is_zero(fj)) {
            continue;
        }
        const C &gij = g[i - j];
        if (is_zero(gij)) {
            continue;
        }
        acc = acc + scaled(C(fj * gij), binomial(i, j));
    }
    return acc;
}

} // namespace detail

// exp(f) for a delta series f, computed from (exp f)' = f' exp f one
// coordinate at a time.
template <Coefficient C>
TruncatedSeries<C> series_exp(const TruncatedSeries<C> &f)
{
    if (!f.is_delta()) {
        throw std::domain_error("exp requires a delta series");
    }
    TruncatedSeries<C> out(f.dim(), f.order());
    out.set(MultiIndex::zero(f.dim()), C(Rational(1)));
    for (const auto &k : indices_up_to(f.dim(), f.order(), 1)) {
        const std::size_t r = detail::first_nonzero(k);
        const MultiIndex i = k - MultiIndex::unit(k.dim(), r);
        out.set(k, detail::derivative_product(f, out, i, r));
    }
    return out;
}

// The unique delta series g with exp(g) = f; requires f_0 = 1.
template <Coefficient C>
TruncatedSeries<C> series_log(const TruncatedSeries<C> &f)
{
    if (!(f.constant_term() == C(Rational(1)))) {
        throw std::domain_error("log requires constant term 1");
    }
    TruncatedSeries<C> out(f.dim(), f.order());
    for (const auto &k : indices_up_to(f.dim(), f.order(), 1)) {
        const std::size_t r = detail::first_nonzero(k);
        const MultiIndex i = k - MultiIndex::unit(k.dim(), r);
        // f_k = sum_{j <= i} binom(i; j) g_{j+e_r} f_{i-j}; the j = i term is g_k.
        C acc = f[k];
        const MultiIndex e = MultiIndex::unit(k.dim(), r);
        for (const auto &j : sub_indices(i)) {
            if (j == i) {
                continue;
            }
            const C &gj = out[j + e];
            if (is_zero(gj)) {
                continue;
            }
            const C &fij = f[i - j];
            if (is_zero(fij)) {
                continue;
            }
            acc = acc - detail::scaled(C(gj * fij), binomial(i, j));
        }
        out.set(k, std::move(acc));
    }
    return out;
}

// Partial Bell series: bell[k] holds the coefficients of f^k / k! for
// k = 0..order, built from d(f^k/k!) = f' f^{k-1}/(k-1)!.
template <Coefficient C>
std::vector<TruncatedSeries<C>> partial_bell_series(const TruncatedSeries<C> &f)
{
    if (!f.is_delta()) {
        throw std::domain_error("composition requires a delta inner series");
    }
    std::vector<TruncatedSeries<C>> bell;
    bell.reserve(f.order() + 1);
    bell.emplace_back(f.dim(), f.order());
    bell[0].set(MultiIndex::zero(f.dim()), C(Rational(1)));
    const auto indices = indices_up_to(f.dim(), f.order(), 1);
    for (unsigned k = 1; k <= f.order(); ++k) {
        TruncatedSeries<C> cur(f.dim(), f.order());
        for (const auto &t : indices) {
            if (t.degree() < k) {
                continue;
            }
            const std::size_t r = detail::first_nonzero(t);
            const MultiIndex i = t - MultiIndex::unit(t.dim(), r);
            cur.set(t, detail::derivative_product(f, bell[k - 1], i, r));
        }
        bell.push_back(std::move(cur));
    }
    return bell;
}

// g(f(z)) = g_0 + sum_{j >= 1} g_j f(z)^j / j! for a univariate outer series
// g and a delta inner series f; truncated at the smaller order.
template <Coefficient C>
TruncatedSeries<C> compose_uni_outer(const TruncatedSeries<C> &g, const TruncatedSeries<C> &f)
{
    if (g.dim() != 1) {
        throw DimensionMismatch("compose_uni_outer: outer series must be univariate");
    }
    if (!f.is_delta()) {
        throw std::domain_error("composition requires a delta inner series");
    }
    const unsigned order = std::min(g.order(), f.order());
    const auto bell = partial_bell_series(f.truncated(order));
    TruncatedSeries<C> out(f.dim(), order);
    out.set(MultiIndex::zero(f.dim()), g.constant_term());
    for (unsigned j = 1; j <= order; ++j) {
        const C &gj = g[MultiIndex{j}];
        if (is_zero(gj)) {
            continue;
        }
        for (const auto &[i, b] : bell[j].coefficients()) {
            out.add(i, C(gj * b));
        }
    }
    return out;
}

// G(F_1(z), ..., F_n(z)) for an n-variate outer series G and n delta series
// F_s in d variables (multivariate Faa di Bruno).
template <Coefficient C>
TruncatedSeries<C> compose_multi_outer(const TruncatedSeries<C> &outer, const std::vector<TruncatedSeries<C>> &inner)
{
    const std::size_t n = inner.size();
    if (n == 0) {
        throw std::invalid_argument("compose_multi_outer: no inner series");
    }
    detail::require_same_dim(outer.dim(), n, "compose_multi_outer (outer arity vs inner count)");
    const std::size_t d = inner[0].dim();
    unsigned order = outer.order();
    for (const auto &f : inner) {
        detail::require_same_dim(f.dim(), d, "compose_multi_outer (inner dimensions)");
        if (!f.is_delta()) {
            throw std::domain_error("composition requires delta inner series");
        }
        order = std::min(order, f.order());
    }
    std::vector<TruncatedSeries<C>> fs;
    fs.reserve(n);
    for (const auto &f : inner) {
        fs.push_back(f.truncated(order));
    }

    // bell[k] = coefficients of prod_s F_s^{k_s} / k_s!, by
    // d/dz_r (F^k/k!) = sum_s (d/dz_r F_s) F^{k-e_s}/(k-e_s)!.
    std::map<MultiIndex, TruncatedSeries<C>> bell;
    const auto targets = indices_up_to(d, order, 1);
    for (const auto &k : indices_up_to(n, order)) {
        TruncatedSeries<C> cur(d, order);
        if (k.is_zero()) {
            cur.set(MultiIndex::zero(d), C(Rational(1)));
            bell.emplace(k, std::move(cur));
            continue;
        }
        for (const auto &t : targets) {
            if (t.degree() < k.degree()) {
                continue;
            }
            const std::size_t r = detail::first_nonzero(t);
            const MultiIndex i = t - MultiIndex::unit(d, r);
            C acc{};
            for (std::size_t s = 0; s < n; ++s) {
                if (k[s] == 0) {
                    continue;
                }
                const auto &prev = bell.at(k - MultiIndex::unit(n, s));
                acc = acc + detail::derivative_product(fs[s], prev, i, r);
            }
            cur.set(t, std::move(acc));
        }
        bell.emplace(k, std::move(cur));
    }

    TruncatedSeries<C> out(d, order);
    for (const auto &[k, gk] : outer.coefficients()) {
        if (k.degree() > order) {
            continue;
        }
        for (const auto &[t, b] : bell.at(k).coefficients()) {
            out.add(t, C(gk * b));
        }
    }
    return out;
}

template <Coefficient C>
struct ShiftResult {
    TruncatedSeries<C> series;
    // Highest total degree through which every coefficient is exact, or -1
    // when no coefficient is guaranteed (shifting a series that is only known
    // up to its truncation order).
    int exact_order;
};

// Taylor re-centering: c_i = sum_j a_{i+j} theta^j / j!, over all j with
// |i + j| <= D. When `exactly_representable` is set the caller asserts that
// f has no terms beyond its truncation order, making every output exact.
template <Coefficient C>
ShiftResult<C> series_shift(const TruncatedSeries<C> &f, const std::vector<Rational> &theta,
                            bool exactly_representable = false)
{
    if (theta.size() != f.dim()) {
        throw DimensionMismatch("series_shift: theta has " + std::to_string(theta.size()) + " coordinates, series has " +
                                std::to_string(f.dim()));
    }
    TruncatedSeries<C> out(f.dim(), f.order());
    bool theta_zero = true;
    for (const auto &t : theta) {
        theta_zero = theta_zero && t == 0;
    }
    for (const auto &[m, a] : f.coefficients()) {
        for (const auto &i : sub_indices(m)) {
            const MultiIndex j = m - i;
            const Rational w = monomial_value(j, theta) / Rational(j.factorial());
            if (w == 0) {
                continue;
            }
            out.add(i, a * w);
        }
    }
    const int exact = (theta_zero || exactly_representable) ? static_cast<int>(f.order()) : -1;
    return {std::move(out), exact};
}

} // namespace cumpoly
