#pragma once

// Slow, independent reference computations for the tests. None of these use
// the library's series or partition machinery.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <cumpoly/cumulants.hpp>
#include <cumpoly/poly.hpp>
#include <cumpoly/rational.hpp>

namespace oracle
{

using cumpoly::Integer;
using cumpoly::MultiIndex;
using cumpoly::Poly;
using cumpoly::Rational;

// Every set partition of {0..n-1}, as restricted growth strings.
inline void for_each_set_partition(unsigned n, const std::function<void(const std::vector<unsigned> &)> &visit)
{
    std::vector<unsigned> a(n, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned max_label) {
        if (pos == n) {
            visit(a);
            return;
        }
        for (unsigned b = 0; b <= max_label + 1; ++b) {
            a[pos] = b;
            rec(pos + 1, std::max(max_label, b));
        }
    };
    if (n == 0) {
        visit(a);
        return;
    }
    a[0] = 0;
    rec(1, 0);
}

// Moment m_i from a cumulant lookup: sum over set partitions of a multiset
// holding i_r copies of colour r, of the product of block cumulants.
template <typename C>
C moment_by_set_partitions(const MultiIndex &i, const std::function<C(const MultiIndex &)> &cumulant)
{
    std::vector<std::size_t> colour;
    for (std::size_t r = 0; r < i.dim(); ++r) {
        for (unsigned k = 0; k < i[r]; ++k) {
            colour.push_back(r);
        }
    }
    C total{};
    for_each_set_partition(static_cast<unsigned>(colour.size()), [&](const std::vector<unsigned> &labels) {
        std::map<unsigned, std::vector<unsigned>> blocks;
        for (std::size_t p = 0; p < labels.size(); ++p) {
            auto &b = blocks[labels[p]];
            b.resize(i.dim(), 0);
            ++b[colour[p]];
        }
        C prod = C(Rational(1));
        for (const auto &[label, counts] : blocks) {
            prod = prod * cumulant(MultiIndex(counts));
        }
        total = total + prod;
    });
    return total;
}

// Truncated ordinary polynomials keyed by exponent vectors.
template <typename C>
using Ordinary = std::map<std::vector<unsigned>, C>;

inline unsigned total(const std::vector<unsigned> &e)
{
    unsigned s = 0;
    for (unsigned v : e) {
        s += v;
    }
    return s;
}

template <typename C>
Ordinary<C> mul(const Ordinary<C> &a, const Ordinary<C> &b, unsigned order)
{
    Ordinary<C> out;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            std::vector<unsigned> e(ea.size());
            for (std::size_t k = 0; k < e.size(); ++k) {
                e[k] = ea[k] + eb[k];
            }
            if (total(e) > order) {
                continue;
            }
            out[e] = out[e] + ca * cb;
        }
    }
    return out;
}

// Exponential-format series coefficients (a_i, i-th derivative at 0) to
// ordinary coefficients a_i / i! and back.
template <typename C>
Ordinary<C> to_ordinary(const cumpoly::TruncatedSeries<C> &f)
{
    Ordinary<C> out;
    for (const auto &[i, c] : f.coefficients()) {
        out[i.entries()] = c * (Rational(1) / Rational(i.factorial()));
    }
    return out;
}

template <typename C>
cumpoly::TruncatedSeries<C> from_ordinary(const Ordinary<C> &p, std::size_t dim, unsigned order)
{
    cumpoly::TruncatedSeries<C> out(dim, order);
    for (const auto &[e, c] : p) {
        const MultiIndex i(e);
        out.add(i, c * Rational(i.factorial()));
    }
    return out;
}

// outer(inner_1, ..., inner_n) by expanding every power explicitly.
template <typename C>
cumpoly::TruncatedSeries<C> substitute(const cumpoly::TruncatedSeries<C> &outer,
                                       const std::vector<cumpoly::TruncatedSeries<C>> &inner, unsigned order)
{
    const std::size_t d = inner.at(0).dim();
    std::vector<Ordinary<C>> fs;
    for (const auto &f : inner) {
        fs.push_back(to_ordinary(f));
    }
    const Ordinary<C> one{{std::vector<unsigned>(d, 0), C(Rational(1))}};
    Ordinary<C> acc;
    for (const auto &[k, gk] : to_ordinary(outer)) {
        if (total(k) > order) {
            continue;
        }
        Ordinary<C> term = one;
        for (std::size_t s = 0; s < k.size(); ++s) {
            for (unsigned p = 0; p < k[s]; ++p) {
                term = mul(term, fs[s], order);
            }
        }
        for (const auto &[e, c] : term) {
            acc[e] = acc[e] + gk * c;
        }
    }
    return from_ordinary(acc, d, order);
}

// Deterministic random rationals with small numerators and denominators.
class RationalSource
{
public:
    explicit RationalSource(std::uint64_t seed) : rng_(seed) {}

    Rational next(int max_num = 9, int max_den = 6)
    {
        std::uniform_int_distribution<int> num(-max_num, max_num);
        std::uniform_int_distribution<int> den(1, max_den);
        return Rational(num(rng_), den(rng_));
    }
    unsigned uniform(unsigned lo, unsigned hi)
    {
        return std::uniform_int_distribution<unsigned>(lo, hi)(rng_);
    }

    cumpoly::SequenceTable<Rational> table(cumpoly::TableKind kind, std::size_t dim, unsigned order)
    {
        cumpoly::SequenceTable<Rational> t(kind, dim, order);
        for (const auto &i : cumpoly::indices_up_to(dim, order, 1)) {
            t.set(i, next());
        }
        return t;
    }

    cumpoly::TruncatedSeries<Rational> series(std::size_t dim, unsigned order, bool delta)
    {
        cumpoly::TruncatedSeries<Rational> s(dim, order);
        for (const auto &i : cumpoly::indices_up_to(dim, order, delta ? 1 : 0)) {
            s.set(i, next());
        }
        return s;
    }

private:
    std::mt19937_64 rng_;
};

// The symbolic table with entries named c_{i1,...,id}.
inline cumpoly::SequenceTable<Poly> symbolic_table(std::size_t dim, unsigned order, const std::string &stem = "c")
{
    cumpoly::SequenceTable<Poly> t(cumpoly::TableKind::cumulant, dim, order);
    for (const auto &i : cumpoly::indices_up_to(dim, order, 1)) {
        t.set(i, Poly::variable(stem + "_{" + i.to_string() + "}"));
    }
    return t;
}

// Moments E[X^k] of a finite law.
inline std::vector<double> finite_moments(const std::vector<double> &atoms, const std::vector<double> &weights,
                                          unsigned order)
{
    double mass = 0;
    for (double w : weights) {
        mass += w;
    }
    std::vector<double> m(order + 1, 0.0);
    for (std::size_t a = 0; a < atoms.size(); ++a) {
        double p = 1;
        for (unsigned k = 0; k <= order; ++k) {
            m[k] += weights[a] * p / mass;
            p *= atoms[a];
        }
    }
    return m;
}

} // namespace oracle
