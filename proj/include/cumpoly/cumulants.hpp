#pragma once

// Moment/cumulant conversion, cumulant polynomials, random sums and their
// multivariable generalizations.
//
// A sequence of cumulants (or moments) indexed by multi-indexes is carried by
// a SequenceTable. Independent components are kept in separate tables; sums of
// independent vectors are entrywise sums of their cumulant tables.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <cumpoly/multi_index.hpp>
#include <cumpoly/partitions.hpp>
#include <cumpoly/poly.hpp>
#include <cumpoly/rational.hpp>
#include <cumpoly/series.hpp>

namespace cumpoly
{

enum class TableKind { cumulant, moment };

inline const char *to_string(TableKind k)
{
    return k == TableKind::cumulant ? "cumulant" : "moment";
}

// Entries c_i for 1 <= |i| <= order. The entry at 0 is implicit: 0 for a
// cumulant table, 1 for a moment table.
template <Coefficient C>
class SequenceTable
{
public:
    SequenceTable(TableKind kind, std::size_t dim, unsigned order) : kind_(kind), series_(dim, order)
    {
        normalize_constant();
    }

    // Takes a series' coefficients of positive degree; the constant is reset.
    static SequenceTable from_series(TableKind kind, TruncatedSeries<C> s)
    {
        SequenceTable t(kind, s.dim(), s.order());
        t.series_ = std::move(s);
        t.normalize_constant();
        return t;
    }

    // values[k] is the entry of order k + 1.
    static SequenceTable univariate(TableKind kind, const std::vector<C> &values)
    {
        SequenceTable t(kind, 1, static_cast<unsigned>(values.size()));
        for (unsigned k = 0; k < values.size(); ++k) {
            t.set(MultiIndex{k + 1}, values[k]);
        }
        return t;
    }

    TableKind kind() const noexcept
    {
        return kind_;
    }
    std::size_t dim() const noexcept
    {
        return series_.dim();
    }
    unsigned order() const noexcept
    {
        return series_.order();
    }

    const C &operator[](const MultiIndex &i) const
    {
        return series_[i];
    }
    // Order-k entry of a univariate table.
    const C &at(unsigned k) const
    {
        return series_[MultiIndex{k}];
    }

    void set(const MultiIndex &i, C value)
    {
        if (i.is_zero()) {
            throw std::invalid_argument("the order-0 entry of a table is implicit");
        }
        series_.set(i, std::move(value));
    }

    // The exponential generating function, with its true constant term.
    const TruncatedSeries<C> &series() const noexcept
    {
        return series_;
    }
    // The same series with zero constant term.
    TruncatedSeries<C> delta_series() const
    {
        TruncatedSeries<C> s = series_;
        s.set(MultiIndex::zero(dim()), C{});
        return s;
    }

    SequenceTable truncated(unsigned order) const
    {
        return from_series(kind_, series_.truncated(order));
    }

    friend bool operator==(const SequenceTable &, const SequenceTable &) = default;

private:
    void normalize_constant()
    {
        series_.set(MultiIndex::zero(series_.dim()), kind_ == TableKind::moment ? C(Rational(1)) : C{});
    }

    TableKind kind_;
    TruncatedSeries<C> series_;
};

template <Coefficient D, Coefficient C>
SequenceTable<D> ring_cast(const SequenceTable<C> &t)
{
    return SequenceTable<D>::from_series(t.kind(), ring_cast<D>(t.series()));
}

struct CumulantPolynomial {
    MultiIndex index;
    Poly value;
};

enum class SubstitutionMode { moment, cumulant };

namespace detail
{

inline void require_kind(TableKind actual, TableKind expected, const char *what)
{
    if (actual != expected) {
        throw std::invalid_argument(std::string(what) + ": expected a " + to_string(expected) + " table");
    }
}

inline void require_covers(unsigned order, unsigned needed, const char *what)
{
    if (order < needed) {
        throw std::out_of_range(std::string(what) + ": table of order " + std::to_string(order) +
                                " does not cover order " + std::to_string(needed));
    }
}

template <Coefficient C>
C ring_pow(const C &base, unsigned e)
{
    C r(Rational(1));
    for (unsigned k = 0; k < e; ++k) {
        r = r * base;
    }
    return r;
}

// prod_j c_{lambda_j}^{r_j}
template <Coefficient C, typename Parts>
C cumulant_product(const Parts &parts, const SequenceTable<C> &c)
{
    C prod(Rational(1));
    for (const auto &p : parts) {
        const C &v = c[p.column];
        if (is_zero(v)) {
            return C{};
        }
        prod = prod * ring_pow(v, p.multiplicity);
    }
    return prod;
}

inline bool within_caps(const MultiIndex &i, const EnumerationCaps &caps)
{
    return i.dim() <= caps.max_dim && i.degree() <= caps.max_degree;
}

inline std::vector<std::string> default_vars(std::size_t n, const std::string &stem = "y")
{
    std::vector<std::string> v;
    v.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        v.push_back(stem + "_" + std::to_string(k));
    }
    return v;
}

} // namespace detail

// exp of the cumulant series: m_i = sum_{lambda |- i} i!/(m(lambda)! lambda!) prod c^{r_j}.
template <Coefficient C>
SequenceTable<C> moments_from_cumulants(const SequenceTable<C> &c)
{
    detail::require_kind(c.kind(), TableKind::cumulant, "moments_from_cumulants");
    return SequenceTable<C>::from_series(TableKind::moment, series_exp(c.delta_series()));
}

template <Coefficient C>
SequenceTable<C> cumulants_from_moments(const SequenceTable<C> &m)
{
    detail::require_kind(m.kind(), TableKind::moment, "cumulants_from_moments");
    return SequenceTable<C>::from_series(TableKind::cumulant, series_log(m.series()));
}

// C_{i,X}(y) by direct partition enumeration.
template <Coefficient C>
Poly cumulant_polynomial_by_partitions(const MultiIndex &i, const SequenceTable<C> &c, const std::string &var = "y",
                                       const EnumerationCaps &caps = {})
{
    detail::require_kind(c.kind(), TableKind::cumulant, "cumulant_polynomial");
    detail::require_covers(c.order(), i.degree(), "cumulant_polynomial");
    const Poly y = Poly::variable(var);
    Poly total = Poly::zero_over({var});
    for (const auto &lam : enumerate_partitions(i, caps)) {
        const C prod = detail::cumulant_product(lam.parts(), c);
        if (is_zero(prod)) {
            continue;
        }
        total += y.pow(lam.length()) * (to_poly(prod) * Rational(partition_coefficient(i, lam)));
    }
    return total;
}

// C_{i,X}(y) as the coefficient of z^i/i! in exp(y K_X(z)).
template <Coefficient C>
Poly cumulant_polynomial_by_series(const MultiIndex &i, const SequenceTable<C> &c, const std::string &var = "y")
{
    detail::require_kind(c.kind(), TableKind::cumulant, "cumulant_polynomial");
    detail::require_covers(c.order(), i.degree(), "cumulant_polynomial");
    const auto k = ring_cast<Poly>(c.delta_series().truncated(i.degree()));
    const auto e = series_exp(series_scale(Poly::variable(var), k));
    Poly v = e[i];
    return v + Poly::zero_over({var});
}

// Partition enumeration within the caps, series expansion beyond them.
template <Coefficient C>
CumulantPolynomial cumulant_polynomial(const MultiIndex &i, const SequenceTable<C> &c, const std::string &var = "y",
                                       const EnumerationCaps &caps = {})
{
    if (i.is_zero()) {
        throw std::invalid_argument("cumulant polynomials are indexed by non-zero multi-indexes");
    }
    if (detail::within_caps(i, caps)) {
        return {i, cumulant_polynomial_by_partitions(i, c, var, caps)};
    }
    return {i, cumulant_polynomial_by_series(i, c, var)};
}

// Cumulants of the random sum indexed by an umbra with cumulants g:
// h_i = i! sum_{lambda |- i} g_{l(lambda)} / (m(lambda)! lambda!) prod c^{r_j}.
template <Coefficient C>
SequenceTable<C> random_sum_cumulants_by_partitions(const SequenceTable<C> &g, const SequenceTable<C> &c,
                                                    const EnumerationCaps &caps = {})
{
    detail::require_kind(c.kind(), TableKind::cumulant, "random_sum_cumulants");
    if (g.dim() != 1) {
        throw DimensionMismatch("random_sum_cumulants: the index table must be univariate");
    }
    const unsigned order = std::min(g.order(), c.order());
    SequenceTable<C> out(TableKind::cumulant, c.dim(), order);
    for (const auto &i : indices_up_to(c.dim(), order, 1)) {
        C total{};
        for (const auto &lam : enumerate_partitions(i, caps)) {
            const C &gl = g.at(lam.length());
            if (is_zero(gl)) {
                continue;
            }
            const C prod = detail::cumulant_product(lam.parts(), c);
            if (is_zero(prod)) {
                continue;
            }
            total = total + C(C(gl * prod) * Rational(partition_coefficient(i, lam)));
        }
        out.set(i, std::move(total));
    }
    return out;
}

template <Coefficient C>
SequenceTable<C> random_sum_cumulants_by_composition(const SequenceTable<C> &g, const SequenceTable<C> &c)
{
    detail::require_kind(c.kind(), TableKind::cumulant, "random_sum_cumulants");
    if (g.dim() != 1) {
        throw DimensionMismatch("random_sum_cumulants: the index table must be univariate");
    }
    return SequenceTable<C>::from_series(TableKind::cumulant, compose_uni_outer(g.delta_series(), c.delta_series()));
}

template <Coefficient C>
SequenceTable<C> random_sum_cumulants(const SequenceTable<C> &g, const SequenceTable<C> &c,
                                      const EnumerationCaps &caps = {})
{
    const unsigned order = std::min(g.order(), c.order());
    if (c.dim() <= caps.max_dim && order <= caps.max_degree) {
        return random_sum_cumulants_by_partitions(g, c, caps);
    }
    return random_sum_cumulants_by_composition(g, c);
}

// Replaces y^l in p by the order-l entry of a univariate table.
template <Coefficient C>
C umbral_substitute_power(const Poly &p, const SequenceTable<C> &g, const std::string &var = "y")
{
    if (g.dim() != 1) {
        throw DimensionMismatch("umbral substitution needs a univariate table");
    }
    Poly result;
    for (const auto &[e, coeff] : p.collect({var})) {
        const unsigned l = e[0];
        if (l == 0) {
            result += coeff;
            continue;
        }
        if (l > g.order()) {
            throw std::out_of_range("umbral substitution needs the order-" + std::to_string(l) +
                                    " entry, which is missing");
        }
        result += coeff * to_poly(g.at(l));
    }
    return from_poly<C>(result);
}

// C_{i,X}(y_1 + ... + y_n), by substituting the sum into C_{i,X}(y).
template <Coefficient C>
Poly cumulant_poly_multinomial(const MultiIndex &i, const SequenceTable<C> &c, unsigned n,
                               const EnumerationCaps &caps = {})
{
    if (n == 0) {
        throw std::invalid_argument("cumulant_poly_multinomial requires n >= 1");
    }
    const auto vars = detail::default_vars(n);
    const std::string base = "@y";
    const Poly p = cumulant_polynomial(i, c, base, caps).value;
    Poly sum = Poly::zero_over(vars);
    for (const auto &v : vars) {
        sum += Poly::variable(v);
    }
    return p.substitute({{base, sum}}) + Poly::zero_over(vars);
}

// The same polynomial from the augmented-matrix expansion over P_n(i).
template <Coefficient C>
Poly cumulant_poly_augmented(const MultiIndex &i, const SequenceTable<C> &c, unsigned n,
                             const EnumerationCaps &caps = {})
{
    detail::require_kind(c.kind(), TableKind::cumulant, "cumulant_poly_augmented");
    detail::require_covers(c.order(), i.degree(), "cumulant_poly_augmented");
    const auto vars = detail::default_vars(n);
    const Integer ifact = i.factorial();
    Poly total = Poly::zero_over(vars);
    for (const auto &lam : augmented_partitions(i, n, caps)) {
        C prod(Rational(1));
        for (const auto &g : lam.grouped()) {
            prod = prod * detail::ring_pow(c[g.column], g.multiplicity);
        }
        if (is_zero(prod)) {
            continue;
        }
        Poly mono(Rational(ifact, lam.multiplicity_factorial() * lam.part_factorial()));
        for (std::size_t k = 0; k < n; ++k) {
            mono *= Poly::variable(vars[k]).pow(lam.slot_length(k));
        }
        total += mono * to_poly(prod);
    }
    return total;
}

// C_{i,(X_1..X_n)}(y_1..y_n) = sum over compositions i_1 + ... + i_n = i of
// binom(i; i_1..i_n) prod_k C_{i_k,X_k}(y_k), with C_0 = 1.
template <Coefficient C>
Poly multivariable_cumulant_polynomial(const MultiIndex &i, const std::vector<SequenceTable<C>> &cs,
                                       std::vector<std::string> vars = {}, const EnumerationCaps &caps = {})
{
    const std::size_t n = cs.size();
    if (n == 0) {
        throw std::invalid_argument("multivariable_cumulant_polynomial: no tables");
    }
    if (vars.empty()) {
        vars = detail::default_vars(n);
    }
    if (vars.size() != n) {
        throw std::invalid_argument("multivariable_cumulant_polynomial: one indeterminate per table required");
    }
    for (const auto &t : cs) {
        detail::require_same_dim(t.dim(), i.dim(), "multivariable_cumulant_polynomial");
    }
    // Polynomials C_{j,X_k}(y_k) are reused across compositions.
    std::vector<std::map<MultiIndex, Poly>> memo(n);
    auto poly_of = [&](std::size_t k, const MultiIndex &j) -> const Poly & {
        auto it = memo[k].find(j);
        if (it == memo[k].end()) {
            Poly p = j.is_zero() ? Poly(Rational(1)) : cumulant_polynomial(j, cs[k], vars[k], caps).value;
            it = memo[k].emplace(j, std::move(p)).first;
        }
        return it->second;
    };
    Poly total = Poly::zero_over(vars);
    for (const auto &comp : compositions(i, static_cast<unsigned>(n))) {
        Poly term(Rational(multinomial(i, comp)));
        for (std::size_t k = 0; k < n && !term.is_zero(); ++k) {
            term *= poly_of(k, comp[k]);
        }
        total += term;
    }
    return total;
}

// E[C_{i,(X_1..X_n)}(Y_1..Y_n)]: each monomial y^e of the multivariable
// cumulant polynomial is replaced by the joint moment (moment mode) or the
// joint cumulant (cumulant mode) of Y at e. In cumulant mode the result is the
// i-th coefficient of K_Y(K_{X_1}(z), ..., K_{X_n}(z)).
template <Coefficient C>
C correlated_substitution(const MultiIndex &i, const std::vector<SequenceTable<C>> &cs,
                          const SequenceTable<C> &joint_y, SubstitutionMode mode, const EnumerationCaps &caps = {})
{
    detail::require_kind(joint_y.kind(), TableKind::cumulant, "correlated_substitution");
    if (joint_y.dim() != cs.size()) {
        throw DimensionMismatch("correlated_substitution: joint table dimension must equal the number of tables");
    }
    const auto vars = detail::default_vars(cs.size(), "@y");
    const Poly p = multivariable_cumulant_polynomial(i, cs, vars, caps);
    const SequenceTable<C> values = mode == SubstitutionMode::moment ? moments_from_cumulants(joint_y) : joint_y;
    Poly result;
    for (const auto &[e, coeff] : p.collect(vars)) {
        const MultiIndex ei(e);
        if (ei.degree() > values.order()) {
            throw std::out_of_range("correlated_substitution: joint entry " + ei.to_string() + " is missing");
        }
        const C v = ei.is_zero() ? values.series().constant_term() : values[ei];
        if (is_zero(v)) {
            continue;
        }
        result += coeff * to_poly(v);
    }
    return from_poly<C>(result);
}

// a^{|i|} c_i.
template <Coefficient C>
SequenceTable<C> scale_cumulants(const Rational &a, const SequenceTable<C> &c)
{
    SequenceTable<C> out(c.kind(), c.dim(), c.order());
    for (const auto &[i, v] : c.series().coefficients()) {
        if (!i.is_zero()) {
            out.set(i, v * pow(a, i.degree()));
        }
    }
    return out;
}

// Cumulants of a sum of independent vectors.
template <Coefficient C>
SequenceTable<C> convolve_cumulant_tables(const std::vector<SequenceTable<C>> &cs)
{
    if (cs.empty()) {
        throw std::invalid_argument("convolve_cumulant_tables: empty list");
    }
    unsigned order = cs[0].order();
    for (const auto &t : cs) {
        detail::require_kind(t.kind(), TableKind::cumulant, "convolve_cumulant_tables");
        detail::require_same_dim(t.dim(), cs[0].dim(), "convolve_cumulant_tables");
        order = std::min(order, t.order());
    }
    TruncatedSeries<C> acc(cs[0].dim(), order);
    for (const auto &t : cs) {
        acc = series_add(acc, t.delta_series());
    }
    return SequenceTable<C>::from_series(TableKind::cumulant, std::move(acc));
}

// The table {value, 0, 0, ...} of a constant index (or the unity umbra for
// value = 1).
inline SequenceTable<Rational> point_mass_cumulants(const Rational &value, unsigned order)
{
    SequenceTable<Rational> t(TableKind::cumulant, 1, order);
    if (order >= 1) {
        t.set(MultiIndex{1}, value);
    }
    return t;
}

// Constant cumulants c_j = value for every order (value = 1: the Bell umbra,
// i.e. Poisson(1); value = lambda: Poisson(lambda)).
inline SequenceTable<Rational> poisson_cumulants(const Rational &value, unsigned order)
{
    SequenceTable<Rational> t(TableKind::cumulant, 1, order);
    for (unsigned j = 1; j <= order; ++j) {
        t.set(MultiIndex{j}, value);
    }
    return t;
}

} // namespace cumpoly
