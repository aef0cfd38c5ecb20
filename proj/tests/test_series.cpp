#include <doctest.h>

#include <cumpoly/series.hpp>

#include "oracles.hpp"

using namespace cumpoly;

TEST_CASE("product uses binomial weights")
{
    // e^z * e^z = e^{2z}: all coefficients 1 times all 1 gives 2^k.
    TruncatedSeries<Rational> e(1, 6);
    for (unsigned k = 0; k <= 6; ++k) {
        e.set(MultiIndex{k}, Rational(1));
    }
    const auto sq = series_mul(e, e);
    for (unsigned k = 0; k <= 6; ++k) {
        CHECK(sq[MultiIndex{k}] == pow(Rational(2), k));
    }
}

TEST_CASE("exp and log are inverse")
{
    oracle::RationalSource src(11);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t d = src.uniform(1, 3);
        const unsigned order = src.uniform(1, 5);
        const auto f = src.series(d, order, true);
        CHECK(series_log(series_exp(f)) == f);
    }
    TruncatedSeries<Rational> not_delta(1, 2);
    not_delta.set(MultiIndex{0U}, Rational(1));
    CHECK_THROWS(series_exp(not_delta));
    CHECK_THROWS(series_log(TruncatedSeries<Rational>(1, 2)));
}

TEST_CASE("exp agrees with explicit substitution into e^w")
{
    oracle::RationalSource src(12);
    TruncatedSeries<Rational> outer(1, 5);
    for (unsigned k = 0; k <= 5; ++k) {
        outer.set(MultiIndex{k}, Rational(1));
    }
    for (int rep = 0; rep < 10; ++rep) {
        const auto f = src.series(2, 5, true);
        CHECK(series_exp(f) == oracle::substitute(outer, {f}, 5));
    }
}

TEST_CASE("composition agrees with explicit substitution")
{
    oracle::RationalSource src(13);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t d = src.uniform(1, 2);
        const unsigned order = src.uniform(1, 5);
        const auto g = src.series(1, order, false);
        const auto f = src.series(d, order, true);
        CHECK(compose_uni_outer(g, f) == oracle::substitute(g, {f}, order));

        const std::size_t n = src.uniform(1, 3);
        const auto outer = src.series(n, order, false);
        std::vector<TruncatedSeries<Rational>> inner;
        for (std::size_t s = 0; s < n; ++s) {
            inner.push_back(src.series(d, order, true));
        }
        CHECK(compose_multi_outer(outer, inner) == oracle::substitute(outer, inner, order));
    }
}

TEST_CASE("composition works over symbolic coefficients")
{
    TruncatedSeries<Poly> g(1, 3);
    TruncatedSeries<Poly> f(1, 3);
    for (unsigned k = 1; k <= 3; ++k) {
        g.set(MultiIndex{k}, Poly::variable("g" + std::to_string(k)));
        f.set(MultiIndex{k}, Poly::variable("f" + std::to_string(k)));
    }
    const auto h = compose_uni_outer(g, f);
    const Poly g1 = Poly::variable("g1"), g2 = Poly::variable("g2"), g3 = Poly::variable("g3");
    const Poly f1 = Poly::variable("f1"), f2 = Poly::variable("f2"), f3 = Poly::variable("f3");
    // Third-order Faa di Bruno.
    CHECK(h[MultiIndex{3}] == g1 * f3 + Rational(3) * g2 * f1 * f2 + g3 * f1.pow(3));
}

TEST_CASE("composition errors")
{
    TruncatedSeries<Rational> g(1, 2);
    TruncatedSeries<Rational> f(1, 2);
    f.set(MultiIndex{0U}, Rational(1));
    CHECK_THROWS(compose_uni_outer(g, f));
    CHECK_THROWS_AS(compose_uni_outer(TruncatedSeries<Rational>(2, 2), TruncatedSeries<Rational>(1, 2)),
                    DimensionMismatch);
    CHECK_THROWS_AS(compose_multi_outer(TruncatedSeries<Rational>(2, 2), {TruncatedSeries<Rational>(1, 2)}),
                    DimensionMismatch);
}

TEST_CASE("shifting re-centres a polynomial exactly")
{
    // f(z) = z^2/2! shifted by theta gives theta^2/2 + theta z + z^2/2.
    TruncatedSeries<Rational> f(1, 2);
    f.set(MultiIndex{2}, Rational(1));
    const auto r = series_shift(f, {Rational(3)}, true);
    CHECK(r.exact_order == 2);
    CHECK(r.series[MultiIndex{0U}] == Rational(9, 2));
    CHECK(r.series[MultiIndex{1}] == Rational(3));
    CHECK(r.series[MultiIndex{2}] == Rational(1));
    CHECK(series_shift(f, {Rational(3)}).exact_order == -1);
    CHECK(series_shift(f, {Rational(0)}).exact_order == 2);
    CHECK(series_shift(f, {Rational(0)}).series == f);
    CHECK_THROWS_AS(series_shift(f, {Rational(1), Rational(2)}), DimensionMismatch);
}

TEST_CASE("arithmetic rejects mismatched dimensions")
{
    CHECK_THROWS_AS(series_add(TruncatedSeries<Rational>(1, 2), TruncatedSeries<Rational>(2, 2)), DimensionMismatch);
    CHECK_THROWS_AS(series_mul(TruncatedSeries<Rational>(1, 2), TruncatedSeries<Rational>(2, 2)), DimensionMismatch);
}
