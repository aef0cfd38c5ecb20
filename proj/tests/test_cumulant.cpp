#include <doctest.h>

#include <cumpoly/cumulants.hpp>

#include "oracles.hpp"

using namespace cumpoly;

namespace
{

Rational set_partition_moment(const SequenceTable<Rational> &c, const MultiIndex &i)
{
    return oracle::moment_by_set_partitions<Rational>(i, [&](const MultiIndex &j) { return c[j]; });
}

} // namespace

TEST_CASE("moments from cumulants match the set-partition expansion")
{
    oracle::RationalSource src(21);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t d = src.uniform(1, 3);
        const unsigned order = src.uniform(1, 5);
        const auto c = src.table(TableKind::cumulant, d, order);
        const auto m = moments_from_cumulants(c);
        CHECK(m.kind() == TableKind::moment);
        for (const auto &i : indices_up_to(d, order, 1)) {
            CHECK(m[i] == set_partition_moment(c, i));
        }
    }
}

TEST_CASE("moment and cumulant tables round trip")
{
    oracle::RationalSource src(22);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t d = src.uniform(1, 3);
        const unsigned order = src.uniform(1, 6);
        const auto c = src.table(TableKind::cumulant, d, order);
        CHECK(cumulants_from_moments(moments_from_cumulants(c)) == c);
        const auto m = src.table(TableKind::moment, d, order);
        CHECK(moments_from_cumulants(cumulants_from_moments(m)) == m);
    }
    CHECK_THROWS(moments_from_cumulants(SequenceTable<Rational>(TableKind::moment, 1, 2)));
    CHECK_THROWS(cumulants_from_moments(SequenceTable<Rational>(TableKind::cumulant, 1, 2)));
}

TEST_CASE("Bell numbers from the all-ones table")
{
    const auto m = moments_from_cumulants(poisson_cumulants(Rational(1), 8));
    const std::vector<int> bell{1, 2, 5, 15, 52, 203, 877, 4140};
    for (unsigned k = 1; k <= 8; ++k) {
        CHECK(m.at(k) == bell[k - 1]);
    }
}

TEST_CASE("symbolic moments through the Gaussian")
{
    // Gaussian moments: E[X^4] = 3 sigma^4 for a centred law.
    SequenceTable<Poly> c(TableKind::cumulant, 1, 6);
    c.set(MultiIndex{2}, Poly::variable("s"));
    const auto m = moments_from_cumulants(c);
    CHECK(m.at(4) == Rational(3) * Poly::variable("s").pow(2));
    CHECK(m.at(6) == Rational(15) * Poly::variable("s").pow(3));
    CHECK(m.at(5).is_zero());
}

TEST_CASE("cumulant polynomial of (2,1)")
{
    const auto c = oracle::symbolic_table(2, 3);
    const Poly y = Poly::variable("y");
    auto v = [](const char *n) { return Poly::variable(n); };
    const Poly expected = y.pow(3) * v("c_{0,1}") * v("c_{1,0}").pow(2) +
                          Rational(2) * y.pow(2) * v("c_{1,0}") * v("c_{1,1}") +
                          y.pow(2) * v("c_{0,1}") * v("c_{2,0}") + y * v("c_{2,1}");
    const auto p = cumulant_polynomial(MultiIndex{2, 1}, c);
    CHECK(p.value == expected);
    CHECK(cumulant_polynomial_by_series(MultiIndex{2, 1}, c) == expected);
}

TEST_CASE("partition and series routes agree")
{
    oracle::RationalSource src(23);
    for (const auto &i : indices_up_to(2, 5, 1)) {
        const auto c = src.table(TableKind::cumulant, 2, 5);
        CHECK(cumulant_polynomial_by_partitions(i, c) == cumulant_polynomial_by_series(i, c));
    }
    // Beyond the caps the series route is used.
    const auto c = poisson_cumulants(Rational(1), 14);
    const auto p = cumulant_polynomial(MultiIndex{14}, c);
    CHECK(p.value.evaluate(std::vector<Rational>{Rational(1)}) == Rational(190899322));
}

TEST_CASE("cumulant polynomial at y = 1 gives the moments")
{
    oracle::RationalSource src(24);
    const auto c = src.table(TableKind::cumulant, 2, 4);
    const auto m = moments_from_cumulants(c);
    const std::vector<Rational> one{Rational(1)};
    for (const auto &i : indices_up_to(2, 4, 1)) {
        CHECK(cumulant_polynomial(i, c).value.evaluate(one) == m[i]);
    }
}

TEST_CASE("cumulant polynomial at integer n gives moments of an n-fold sum")
{
    oracle::RationalSource src(25);
    for (unsigned n = 1; n <= 4; ++n) {
        const auto c = src.table(TableKind::cumulant, 2, 4);
        // Independent copies add their cumulants.
        SequenceTable<Rational> sum(TableKind::cumulant, 2, 4);
        for (const auto &i : indices_up_to(2, 4, 1)) {
            sum.set(i, Rational(n) * c[i]);
        }
        const std::vector<Rational> at{Rational(n)};
        for (const auto &i : indices_up_to(2, 4, 1)) {
            CHECK(cumulant_polynomial(i, c).value.evaluate(at) == set_partition_moment(sum, i));
        }
    }
}

TEST_CASE("random sums match explicit composition")
{
    oracle::RationalSource src(26);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t d = src.uniform(1, 2);
        const unsigned order = src.uniform(1, 5);
        const auto g = src.table(TableKind::cumulant, 1, order);
        const auto c = src.table(TableKind::cumulant, d, order);
        const auto expected = oracle::substitute(g.series(), {c.delta_series()}, order);
        const auto by_parts = random_sum_cumulants_by_partitions(g, c);
        const auto by_comp = random_sum_cumulants_by_composition(g, c);
        CHECK(by_parts.series() == expected);
        CHECK(by_comp == by_parts);
    }
}

TEST_CASE("compound Poisson sums have cumulants lambda m_i")
{
    oracle::RationalSource src(27);
    const Rational lambda(7, 3);
    const auto c = src.table(TableKind::cumulant, 2, 4);
    const auto s = random_sum_cumulants(poisson_cumulants(lambda, 4), c);
    for (const auto &i : indices_up_to(2, 4, 1)) {
        CHECK(s[i] == lambda * set_partition_moment(c, i));
    }
}

TEST_CASE("substituting the Bell umbra turns moments of X into cumulants")
{
    // E[C_i(N)] for N ~ Poisson(1) is the i-th moment of the compound sum,
    // whose cumulants are the moments of X.
    const auto c = oracle::symbolic_table(1, 5);
    const auto bell_moments = ring_cast<Poly>(moments_from_cumulants(poisson_cumulants(Rational(1), 5)));
    SequenceTable<Poly> substituted(TableKind::moment, 1, 5);
    for (unsigned k = 1; k <= 5; ++k) {
        substituted.set(MultiIndex{k}, umbral_substitute_power(cumulant_polynomial(MultiIndex{k}, c).value, bell_moments));
    }
    const auto m = moments_from_cumulants(c);
    const auto k = cumulants_from_moments(substituted);
    for (unsigned j = 1; j <= 5; ++j) {
        CHECK(k.at(j) == m.at(j));
    }
}

TEST_CASE("multinomial expansion equals the augmented-matrix sum")
{
    const auto c = oracle::symbolic_table(2, 4);
    for (const auto &i : indices_up_to(2, 4, 1)) {
        for (unsigned n = 1; n <= 3; ++n) {
            CHECK(cumulant_poly_multinomial(i, c, n) == cumulant_poly_augmented(i, c, n));
        }
    }
}

TEST_CASE("multivariable cumulant polynomial with one table is the ordinary one")
{
    const auto c = oracle::symbolic_table(2, 3);
    const auto p = multivariable_cumulant_polynomial(MultiIndex{2, 1}, std::vector<SequenceTable<Poly>>{c}, {"y"});
    CHECK(p == cumulant_polynomial(MultiIndex{2, 1}, c).value);
    CHECK_THROWS(multivariable_cumulant_polynomial(MultiIndex{1}, std::vector<SequenceTable<Poly>>{}));
}

TEST_CASE("correlated substitution, cumulant mode, is a multivariate composition")
{
    oracle::RationalSource src(28);
    for (int rep = 0; rep < 5; ++rep) {
        const std::size_t n = src.uniform(1, 3);
        const auto joint = src.table(TableKind::cumulant, n, 4);
        std::vector<SequenceTable<Rational>> cs;
        std::vector<TruncatedSeries<Rational>> inner;
        for (std::size_t s = 0; s < n; ++s) {
            cs.push_back(src.table(TableKind::cumulant, 2, 4));
            inner.push_back(cs.back().delta_series());
        }
        const auto expected = oracle::substitute(joint.series(), inner, 4);
        for (const auto &i : indices_up_to(2, 4, 1)) {
            CHECK(correlated_substitution(i, cs, joint, SubstitutionMode::cumulant) == expected[i]);
        }
    }
}

TEST_CASE("correlated substitution, moment mode, on independent indeterminates")
{
    // With Y = (1, 1) deterministic, moment mode gives moments of X_1 + X_2.
    oracle::RationalSource src(29);
    const auto c1 = src.table(TableKind::cumulant, 1, 4);
    const auto c2 = src.table(TableKind::cumulant, 1, 4);
    SequenceTable<Rational> y(TableKind::cumulant, 2, 4);
    y.set(MultiIndex{1, 0}, Rational(1));
    y.set(MultiIndex{0, 1}, Rational(1));
    const auto m = moments_from_cumulants(convolve_cumulant_tables<Rational>({c1, c2}));
    for (unsigned k = 1; k <= 4; ++k) {
        CHECK(correlated_substitution(MultiIndex{k}, std::vector{c1, c2}, y, SubstitutionMode::moment) == m.at(k));
    }
    CHECK_THROWS_AS(correlated_substitution(MultiIndex{1}, std::vector{c1}, y, SubstitutionMode::moment),
                    DimensionMismatch);
}

TEST_CASE("homogeneity and additivity")
{
    oracle::RationalSource src(30);
    const auto c = src.table(TableKind::cumulant, 2, 4);
    const auto scaled = scale_cumulants(Rational(-2, 3), c);
    for (const auto &i : indices_up_to(2, 4, 1)) {
        CHECK(scaled[i] == pow(Rational(-2, 3), i.degree()) * c[i]);
    }
    const auto c2 = src.table(TableKind::cumulant, 2, 3);
    const auto sum = convolve_cumulant_tables<Rational>({c, c2});
    CHECK(sum.order() == 3);
    CHECK(sum[MultiIndex{1, 2}] == c[MultiIndex{1, 2}] + c2[MultiIndex{1, 2}]);
}

TEST_CASE("point mass tables")
{
    const auto m = moments_from_cumulants(point_mass_cumulants(Rational(3), 4));
    for (unsigned k = 1; k <= 4; ++k) {
        CHECK(m.at(k) == pow(Rational(3), k));
    }
}
