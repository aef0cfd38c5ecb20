#include <cumpoly/symfunc.hpp>

#include <stdexcept>

#include <cumpoly/partitions.hpp>

namespace cumpoly
{

namespace
{

std::string y_var(unsigned k)
{
    return "y_" + std::to_string(k);
}

void require_positive(unsigned v, const char *what)
{
    if (v == 0) {
        throw std::invalid_argument(std::string(what) + " must be >= 1");
    }
}

} // namespace

Poly power_sum(unsigned j, unsigned n, const std::string &stem)
{
    Poly s;
    for (unsigned k = 1; k <= n; ++k) {
        s += Poly::variable(stem + "_" + std::to_string(k)).pow(j);
    }
    return s;
}

Poly PowerSumExpr::expand(unsigned n) const
{
    require_positive(n, "expand: n");
    std::map<std::string, Poly> images;
    for (const auto &v : poly_.vars()) {
        if (v.rfind("s_", 0) != 0) {
            continue;
        }
        images.emplace(v, power_sum(static_cast<unsigned>(std::stoul(v.substr(2))), n));
    }
    return poly_.substitute(images);
}

WeightedSumMoment weighted_sum_moment(unsigned i, const SequenceTable<Poly> &c, unsigned n)
{
    require_positive(i, "weighted_sum_moment: i");
    require_positive(n, "weighted_sum_moment: n");
    if (c.dim() != 1) {
        throw DimensionMismatch("weighted_sum_moment: cumulant table must be univariate");
    }
    if (c.order() < i) {
        throw std::out_of_range("weighted_sum_moment: cumulant of order " + std::to_string(c.order() + 1) +
                                " is missing");
    }
    Poly expr;
    for (const auto &lam : enumerate_integer_partitions(i)) {
        Poly term(Rational(lam.set_partition_count()));
        const auto r = lam.multiplicities();
        for (unsigned j = 1; j < r.size(); ++j) {
            if (r[j] != 0) {
                term *= (c.at(j) * Poly::variable(PowerSumExpr::symbol(j))).pow(r[j]);
            }
        }
        expr += term;
    }
    PowerSumExpr ps(std::move(expr));
    Poly expanded = ps.expand(n);
    return {std::move(ps), std::move(expanded)};
}

WeightedSumMoment weighted_sum_moment(unsigned i, const SequenceTable<Rational> &c, unsigned n)
{
    return weighted_sum_moment(i, ring_cast<Poly>(c), n);
}

Poly weighted_sum_moment_direct(unsigned i, const SequenceTable<Poly> &c, unsigned n)
{
    require_positive(n, "weighted_sum_moment_direct: n");
    if (c.dim() != 1) {
        throw DimensionMismatch("weighted_sum_moment_direct: cumulant table must be univariate");
    }
    // Independent coordinates: only pure axis cumulants are non-zero.
    SequenceTable<Poly> joint(TableKind::cumulant, n, i);
    for (unsigned r = 0; r < n; ++r) {
        for (unsigned k = 1; k <= std::min(i, c.order()); ++k) {
            joint.set(MultiIndex::unit(n, r).scaled(k), c.at(k));
        }
    }
    const auto m = moments_from_cumulants(joint);
    Poly out;
    for (const auto &e : indices_up_to(n, i, i)) {
        Poly mono(Rational(factorial(i)) / Rational(e.factorial()));
        for (unsigned r = 0; r < n; ++r) {
            mono *= Poly::variable(y_var(r + 1)).pow(e[r]);
        }
        out += mono * m[e];
    }
    return out;
}

SequenceTable<Rational> inverse_bell_cumulants(unsigned order)
{
    SequenceTable<Rational> t(TableKind::cumulant, 1, order);
    for (unsigned k = 1; k <= order; ++k) {
        const Rational v(factorial(k - 1));
        t.set(MultiIndex{k}, k % 2 == 1 ? v : Rational(-v));
    }
    return t;
}

ElementarySymmetric elementary_symmetric(unsigned n, unsigned order)
{
    require_positive(n, "elementary_symmetric: n");
    ElementarySymmetric out;

    TruncatedSeries<Poly> product(1, order);
    product.set(MultiIndex{0U}, Poly(Rational(1)));
    for (unsigned j = 1; j <= n; ++j) {
        TruncatedSeries<Poly> factor(1, order);
        factor.set(MultiIndex{0U}, Poly(Rational(1)));
        if (order >= 1) {
            factor.set(MultiIndex{1U}, Poly::variable(y_var(j)));
        }
        product = series_mul(product, factor);
    }

    // sum_j log(1 + y_j z) has coefficients c_k(beta^{<-1>}) s_k.
    const auto inv = inverse_bell_cumulants(order);
    TruncatedSeries<Poly> log_sum(1, order);
    for (unsigned k = 1; k <= order; ++k) {
        log_sum.set(MultiIndex{k}, inv.at(k) * power_sum(k, n));
    }
    const auto exp_route = series_exp(log_sum);

    for (unsigned k = 0; k <= order; ++k) {
        out.direct.push_back(product[MultiIndex{k}]);
        out.via_power_sums.push_back(exp_route[MultiIndex{k}]);
    }
    out.agree = out.direct == out.via_power_sums;
    return out;
}

TraceMomentTable trace_moments_from_matrix_cumulants(const SequenceTable<Rational> &c_a, unsigned n, unsigned order)
{
    require_positive(n, "trace moments: n");
    if (c_a.dim() != 1) {
        throw DimensionMismatch("trace moments: matrix cumulant table must be univariate");
    }
    if (c_a.order() < order) {
        throw std::out_of_range("trace moments: cumulant of order " + std::to_string(c_a.order() + 1) +
                                " is missing");
    }
    TraceMomentTable tm{n, {}};
    const std::map<std::string, Rational> at_n{{"y", Rational(n)}};
    for (unsigned i = 1; i <= order; ++i) {
        tm.moments.push_back(cumulant_polynomial(MultiIndex{i}, c_a).value.evaluate(at_n).constant_value());
    }
    return tm;
}

SequenceTable<Rational> matrix_cumulants_from_trace_moments(const TraceMomentTable &tm)
{
    require_positive(tm.n, "trace moments: n");
    const auto m = SequenceTable<Rational>::univariate(TableKind::moment, tm.moments);
    const auto k = cumulants_from_moments(m);
    return SequenceTable<Rational>::from_series(TableKind::cumulant,
                                                series_scale(Rational(1, tm.n), k.delta_series()));
}

SamplingInvariance sampling_invariance_check(const SequenceTable<Rational> &c_x, unsigned n, unsigned m,
                                             unsigned order)
{
    require_positive(m, "sampling_invariance_check: m");
    if (m > n) {
        throw std::invalid_argument("sampling_invariance_check: sample size m exceeds population size n");
    }
    SamplingInvariance out{matrix_cumulants_from_trace_moments(trace_moments_from_matrix_cumulants(c_x, n, order)),
                           matrix_cumulants_from_trace_moments(trace_moments_from_matrix_cumulants(c_x, m, order)),
                           false};
    out.pass = out.population == out.sample && out.population == c_x.truncated(order);
    return out;
}

} // namespace cumpoly
