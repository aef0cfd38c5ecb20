#pragma once

// Multi-index partitions and the combinatorial weights used by the cumulant
// formulas.
//
// A partition of a multi-index i is a matrix with non-negative entries and no
// zero column whose columns sum to i. The canonical form used here groups equal
// columns, records their multiplicities, and lists the distinct columns in
// strictly increasing lexicographic order.

#include <cstddef>
#include <string>
#include <vector>

#include <cumpoly/multi_index.hpp>
#include <cumpoly/rational.hpp>

namespace cumpoly
{

struct EnumerationCaps {
    std::size_t max_dim = 4;
    unsigned max_degree = 12;

    // Throws SizeCapError("size cap exceeded: ...") if i is out of bounds.
    void check(const MultiIndex &i) const;
};

struct PartitionPart {
    MultiIndex column;
    unsigned multiplicity = 0;

    friend bool operator==(const PartitionPart &, const PartitionPart &) = default;
};

class MultiIndexPartition
{
public:
    // Canonicalizes: drops nothing, but merges equal columns and sorts them.
    // Throws std::invalid_argument for zero columns, zero multiplicities, or
    // columns that do not sum to `target`.
    MultiIndexPartition(MultiIndex target, std::vector<PartitionPart> parts);

    const MultiIndex &target() const noexcept
    {
        return target_;
    }
    const std::vector<PartitionPart> &parts() const noexcept
    {
        return parts_;
    }

    // l(lambda): number of columns counted with multiplicity.
    unsigned length() const noexcept
    {
        return length_;
    }
    std::vector<unsigned> multiplicities() const;
    // m(lambda)! = prod r_j!
    Integer multiplicity_factorial() const;
    // lambda! = prod over columns (with multiplicity) of column!
    Integer part_factorial() const;

    // Columns expanded with multiplicity, in canonical order.
    std::vector<MultiIndex> columns() const;

    std::string to_string() const;

    friend bool operator==(const MultiIndexPartition &, const MultiIndexPartition &) = default;

private:
    MultiIndex target_;
    std::vector<PartitionPart> parts_;
    unsigned length_ = 0;
};

// Ordering of a partition list: by length, then lexicographically on the
// expanded column sequence.
bool canonical_less(const MultiIndexPartition &a, const MultiIndexPartition &b);

// Every partition of i exactly once, sorted by canonical_less.
// Throws std::invalid_argument("no partitions of zero index") when |i| = 0.
std::vector<MultiIndexPartition> enumerate_partitions(const MultiIndex &i, const EnumerationCaps &caps = {});

// Number of partitions of i, without materializing them.
std::size_t count_partitions(const MultiIndex &i, const EnumerationCaps &caps = {});

// i! / (m(lambda)! lambda!). Throws std::invalid_argument if lambda is not a
// partition of i.
Integer partition_coefficient(const MultiIndex &i, const MultiIndexPartition &lambda);

// prod_r binom(i_r; parts_1[r], ..., parts_n[r]).
Integer multinomial(const MultiIndex &i, const std::vector<MultiIndex> &parts);

// All ordered n-tuples of multi-indexes (zero allowed) summing to i.
std::vector<std::vector<MultiIndex>> compositions(const MultiIndex &i, unsigned n);

class IntegerPartition
{
public:
    // Parts in any order; stored weakly decreasing.
    explicit IntegerPartition(std::vector<unsigned> parts);

    unsigned target() const noexcept
    {
        return target_;
    }
    const std::vector<unsigned> &parts() const noexcept
    {
        return parts_;
    }
    unsigned length() const noexcept
    {
        return static_cast<unsigned>(parts_.size());
    }
    // r_j for j = 1..target (index 0 unused).
    std::vector<unsigned> multiplicities() const;
    // d_lambda = i! / ((1!)^{r_1} (2!)^{r_2} ... r_1! r_2! ...): the number of
    // set partitions of an i-set with these block sizes.
    Integer set_partition_count() const;

private:
    std::vector<unsigned> parts_;
    unsigned target_ = 0;
};

// Integer partitions of n >= 1, ordered by length then lexicographically
// on the weakly increasing part list (matching the d = 1 multi-index order).
std::vector<IntegerPartition> enumerate_integer_partitions(unsigned n);

// An element of P_n(i): one partition per slot, lambda_k |- i_k, with
// i_1 + ... + i_n = i. A slot with i_k = 0 holds no columns.
class AugmentedPartition
{
public:
    struct GroupedColumn {
        MultiIndex column;
        unsigned multiplicity = 0;        // t_j over the whole augmented matrix
        std::vector<unsigned> per_slot;   // origin labels: multiplicity contributed by each slot
    };

    AugmentedPartition(MultiIndex target, std::vector<std::vector<PartitionPart>> slots);

    const MultiIndex &target() const noexcept
    {
        return target_;
    }
    std::size_t slot_count() const noexcept
    {
        return slots_.size();
    }
    const std::vector<PartitionPart> &slot(std::size_t k) const
    {
        return slots_.at(k);
    }
    // l(lambda_k)
    unsigned slot_length(std::size_t k) const;
    // prod_k m(lambda_k)!
    Integer multiplicity_factorial() const;
    // prod_k lambda_k!
    Integer part_factorial() const;
    // Equal columns across slots merged, with origin labels.
    std::vector<GroupedColumn> grouped() const;

    friend bool operator==(const AugmentedPartition &, const AugmentedPartition &) = default;

private:
    MultiIndex target_;
    std::vector<std::vector<PartitionPart>> slots_;
};

std::vector<AugmentedPartition> augmented_partitions(const MultiIndex &i, unsigned n,
                                                     const EnumerationCaps &caps = {});

} // namespace cumpoly
