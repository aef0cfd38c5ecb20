#include <doctest.h>

#include <set>

#include <cumpoly/partitions.hpp>

#include "oracles.hpp"

using namespace cumpoly;

TEST_CASE("multi-index parsing, printing and arithmetic")
{
    const auto i = MultiIndex::parse("2,1");
    CHECK(i.dim() == 2);
    CHECK(i.degree() == 3);
    CHECK(i.to_string() == "2,1");
    CHECK(i.factorial() == 2);
    CHECK(i + MultiIndex{1, 1} == MultiIndex{3, 2});
    CHECK(i - MultiIndex{1, 0} == MultiIndex{1, 1});
    CHECK_THROWS_AS((MultiIndex{0, 1} - MultiIndex{1, 0}), std::domain_error);
    CHECK_THROWS_AS(MultiIndex::parse("2,x"), ParseError);
    CHECK_THROWS_AS(MultiIndex::parse(""), ParseError);
    CHECK(MultiIndex::unit(3, 1) == MultiIndex{0, 1, 0});
}

TEST_CASE("graded-lex order lists indices by degree first")
{
    const auto list = indices_up_to(2, 2);
    const std::vector<MultiIndex> expected{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
    CHECK(list == expected);
    CHECK(sub_indices(MultiIndex{1, 1}).size() == 4);
    CHECK(binomial(MultiIndex{3, 2}, MultiIndex{1, 1}) == 6);
}

TEST_CASE("partitions of (2,1) are the four canonical matrices")
{
    const auto ps = enumerate_partitions(MultiIndex{2, 1});
    REQUIRE(ps.size() == 4);
    std::vector<std::vector<MultiIndex>> cols;
    for (const auto &p : ps) {
        cols.push_back(p.columns());
    }
    const std::vector<std::vector<MultiIndex>> expected{
        {{2, 1}}, {{0, 1}, {2, 0}}, {{1, 0}, {1, 1}}, {{0, 1}, {1, 0}, {1, 0}}};
    CHECK(cols == expected);
    CHECK(ps[3].multiplicity_factorial() == 2);
}

TEST_CASE("partition counts match known sequences")
{
    const std::vector<std::size_t> p{1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (unsigned n = 1; n <= 10; ++n) {
        CHECK(count_partitions(MultiIndex{n}) == p[n - 1]);
        CHECK(enumerate_partitions(MultiIndex{n}).size() == p[n - 1]);
    }
    CHECK(count_partitions(MultiIndex{1, 1}) == 2);
    CHECK(count_partitions(MultiIndex{1, 1, 1}) == 5);
    CHECK(count_partitions(MultiIndex{2, 2}) == 9);
    CHECK(count_partitions(MultiIndex{1, 1, 1, 1}) == 15);
}

TEST_CASE("partition enumeration has no duplicates and is sorted")
{
    for (const auto &i : indices_up_to(3, 4, 1)) {
        const auto ps = enumerate_partitions(i);
        for (std::size_t k = 1; k < ps.size(); ++k) {
            CHECK(canonical_less(ps[k - 1], ps[k]));
        }
        CHECK(ps.size() == count_partitions(i));
    }
}

TEST_CASE("partition coefficients count set partitions")
{
    // Summing d_lambda over lambda gives the Bell number of |i|.
    const std::vector<unsigned> bell{1, 1, 2, 5, 15, 52, 203, 877};
    for (const auto &i : indices_up_to(2, 6, 1)) {
        Integer sum = 0;
        for (const auto &lam : enumerate_partitions(i)) {
            sum += partition_coefficient(i, lam);
        }
        CHECK(sum == bell[i.degree()]);
    }
}

TEST_CASE("caps and degenerate inputs")
{
    CHECK_THROWS_AS(enumerate_partitions(MultiIndex{0, 0}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(enumerate_partitions(MultiIndex{13}), doctest::Contains("size cap exceeded"), SizeCapError);
    CHECK_THROWS_AS(enumerate_partitions(MultiIndex{1, 1, 1, 1, 1}), SizeCapError);
    EnumerationCaps wide{5, 12};
    CHECK(enumerate_partitions(MultiIndex{1, 1, 1, 1, 1}, wide).size() == 52);
}

TEST_CASE("partition constructor canonicalizes and validates")
{
    const MultiIndexPartition a(MultiIndex{2, 1}, {{MultiIndex{1, 0}, 1}, {MultiIndex{0, 1}, 1}, {MultiIndex{1, 0}, 1}});
    CHECK(a.parts().size() == 2);
    CHECK(a.length() == 3);
    CHECK_THROWS_AS(MultiIndexPartition(MultiIndex{2, 1}, {{MultiIndex{1, 0}, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndexPartition(MultiIndex{1, 0}, {{MultiIndex{0, 0}, 1}, {MultiIndex{1, 0}, 1}}),
                    std::invalid_argument);
}

TEST_CASE("compositions")
{
    const auto cs = compositions(MultiIndex{2, 1}, 2);
    // binom(2+1,1) * binom(1+1,1) = 6
    CHECK(cs.size() == 6);
    std::set<std::vector<MultiIndex>> unique(cs.begin(), cs.end());
    CHECK(unique.size() == cs.size());
    for (const auto &c : cs) {
        CHECK(c[0] + c[1] == MultiIndex{2, 1});
    }
    CHECK_THROWS(compositions(MultiIndex{1}, 0));
    CHECK(multinomial(MultiIndex{2, 1}, {MultiIndex{1, 0}, MultiIndex{1, 1}}) == 2);
}

TEST_CASE("integer partitions")
{
    const auto ps = enumerate_integer_partitions(4);
    CHECK(ps.size() == 5);
    Integer sum = 0;
    for (const auto &p : ps) {
        sum += p.set_partition_count();
    }
    CHECK(sum == 15);
    CHECK(IntegerPartition({2, 1, 1}).set_partition_count() == 6);
}

TEST_CASE("augmented partitions")
{
    // Every element splits i among n slots and partitions each slot.
    const auto aug = augmented_partitions(MultiIndex{2, 1}, 2);
    std::size_t expected = 0;
    for (const auto &comp : compositions(MultiIndex{2, 1}, 2)) {
        std::size_t prod = 1;
        for (const auto &part : comp) {
            prod *= part.is_zero() ? 1 : count_partitions(part);
        }
        expected += prod;
    }
    CHECK(aug.size() == expected);
    for (const auto &a : aug) {
        unsigned t = 0;
        for (const auto &g : a.grouped()) {
            unsigned slots = 0;
            for (unsigned v : g.per_slot) {
                slots += v;
            }
            CHECK(slots == g.multiplicity);
            t += g.multiplicity;
        }
        CHECK(t == a.slot_length(0) + a.slot_length(1));
    }
}

TEST_CASE("rational helpers")
{
    CHECK(factorial(10) == 3628800);
    CHECK(binomial(6U, 2U) == 15);
    CHECK(rising_factorial(Rational(1, 2), 3) == Rational(15, 8));
}
