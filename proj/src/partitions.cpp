#include <cumpoly/partitions.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace cumpoly
{

void EnumerationCaps::check(const MultiIndex &i) const
{
    if (i.dim() > max_dim || i.degree() > max_degree) {
        throw SizeCapError("size cap exceeded: index " + i.to_string() + " (caps: dim <= " + std::to_string(max_dim) +
                           ", degree <= " + std::to_string(max_degree) + ")");
    }
}

namespace
{

std::vector<PartitionPart> canonicalize(std::vector<PartitionPart> parts)
{
    std::map<std::vector<unsigned>, unsigned> merged;
    for (auto &p : parts) {
        if (p.multiplicity == 0) {
            throw std::invalid_argument("partition part with zero multiplicity");
        }
        if (p.column.is_zero()) {
            throw std::invalid_argument("partition column must be non-zero");
        }
        merged[p.column.entries()] += p.multiplicity;
    }
    std::vector<PartitionPart> out;
    out.reserve(merged.size());
    for (auto &[col, mult] : merged) {
        out.push_back({MultiIndex(col), mult});
    }
    return out;
}

// Nonzero multi-indexes fitting in i, in increasing lexicographic order.
std::vector<MultiIndex> candidate_columns(const MultiIndex &i)
{
    auto subs = sub_indices(i);
    std::erase_if(subs, [](const MultiIndex &m) { return m.is_zero(); });
    std::sort(subs.begin(), subs.end(), lex_less);
    return subs;
}

// Canonical-form generation: every next column is lexicographically larger than
// the previous one, so no partition is produced twice.
template <typename Visit>
void descend(const std::vector<MultiIndex> &cands, std::size_t start, const MultiIndex &residual,
             std::vector<PartitionPart> &current, const Visit &visit)
{
    if (residual.is_zero()) {
        visit(current);
        return;
    }
    for (std::size_t c = start; c < cands.size(); ++c) {
        const MultiIndex &col = cands[c];
        if (!col.fits_in(residual)) {
            continue;
        }
        MultiIndex rest = residual - col;
        unsigned mult = 1;
        while (true) {
            current.push_back({col, mult});
            descend(cands, c + 1, rest, current, visit);
            current.pop_back();
            if (!col.fits_in(rest)) {
                break;
            }
            rest = rest - col;
            ++mult;
        }
    }
}

void require_nonzero(const MultiIndex &i)
{
    if (i.dim() == 0 || i.is_zero()) {
        throw std::invalid_argument("no partitions of zero index");
    }
}

} // namespace

MultiIndexPartition::MultiIndexPartition(MultiIndex target, std::vector<PartitionPart> parts)
    : target_(std::move(target)), parts_(canonicalize(std::move(parts)))
{
    MultiIndex sum = MultiIndex::zero(target_.dim());
    for (const auto &p : parts_) {
        if (p.column.dim() != target_.dim()) {
            throw std::invalid_argument("partition column dimension mismatch");
        }
        sum = sum + p.column.scaled(p.multiplicity);
        length_ += p.multiplicity;
    }
    if (sum != target_) {
        throw std::invalid_argument("columns do not sum to the target " + target_.to_string());
    }
}

std::vector<unsigned> MultiIndexPartition::multiplicities() const
{
    std::vector<unsigned> m;
    m.reserve(parts_.size());
    for (const auto &p : parts_) {
        m.push_back(p.multiplicity);
    }
    return m;
}

Integer MultiIndexPartition::multiplicity_factorial() const
{
    Integer f = 1;
    for (const auto &p : parts_) {
        f *= factorial(p.multiplicity);
    }
    return f;
}

Integer MultiIndexPartition::part_factorial() const
{
    Integer f = 1;
    for (const auto &p : parts_) {
        f *= boost::multiprecision::pow(p.column.factorial(), p.multiplicity);
    }
    return f;
}

std::vector<MultiIndex> MultiIndexPartition::columns() const
{
    std::vector<MultiIndex> cols;
    cols.reserve(length_);
    for (const auto &p : parts_) {
        cols.insert(cols.end(), p.multiplicity, p.column);
    }
    return cols;
}

std::string MultiIndexPartition::to_string() const
{
    std::string out = "{";
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        if (k != 0) {
            out += ", ";
        }
        out += "(" + parts_[k].column.to_string() + ")^" + std::to_string(parts_[k].multiplicity);
    }
    return out + "}";
}

bool canonical_less(const MultiIndexPartition &a, const MultiIndexPartition &b)
{
    if (a.length() != b.length()) {
        return a.length() < b.length();
    }
    const auto ca = a.columns();
    const auto cb = b.columns();
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end(), lex_less);
}

std::vector<MultiIndexPartition> enumerate_partitions(const MultiIndex &i, const EnumerationCaps &caps)
{
    require_nonzero(i);
    caps.check(i);
    const auto cands = candidate_columns(i);
    std::vector<MultiIndexPartition> out;
    std::vector<PartitionPart> current;
    descend(cands, 0, i, current, [&](const std::vector<PartitionPart> &parts) { out.emplace_back(i, parts); });
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::size_t count_partitions(const MultiIndex &i, const EnumerationCaps &caps)
{
    require_nonzero(i);
    caps.check(i);
    const auto cands = candidate_columns(i);
    std::size_t count = 0;
    std::vector<PartitionPart> current;
    descend(cands, 0, i, current, [&](const std::vector<PartitionPart> &) { ++count; });
    return count;
}

Integer partition_coefficient(const MultiIndex &i, const MultiIndexPartition &lambda)
{
    if (lambda.target() != i) {
        throw std::invalid_argument("partition does not partition index " + i.to_string());
    }
    return i.factorial() / (lambda.multiplicity_factorial() * lambda.part_factorial());
}

Integer multinomial(const MultiIndex &i, const std::vector<MultiIndex> &parts)
{
    MultiIndex sum = MultiIndex::zero(i.dim());
    Integer denom = 1;
    for (const auto &p : parts) {
        sum = sum + p;
        denom *= p.factorial();
    }
    if (sum != i) {
        throw std::invalid_argument("parts do not sum to " + i.to_string());
    }
    return i.factorial() / denom;
}

std::vector<std::vector<MultiIndex>> compositions(const MultiIndex &i, unsigned n)
{
    if (n == 0) {
        throw std::invalid_argument("compositions require n >= 1");
    }
    std::vector<std::vector<MultiIndex>> out;
    std::vector<MultiIndex> current;
    std::function<void(const MultiIndex &, unsigned)> rec = [&](const MultiIndex &residual, unsigned slot) {
        if (slot + 1 == n) {
            current.push_back(residual);
            out.push_back(current);
            current.pop_back();
            return;
        }
        for (const auto &j : sub_indices(residual)) {
            current.push_back(j);
            rec(residual - j, slot + 1);
            current.pop_back();
        }
    };
    rec(i, 0);
    // Order: first slot descending, so ((1),(0)) precedes ((0),(1)).
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] != b[k]) {
                return b[k] < a[k];
            }
        }
        return false;
    });
    return out;
}

IntegerPartition::IntegerPartition(std::vector<unsigned> parts) : parts_(std::move(parts))
{
    for (unsigned p : parts_) {
        if (p == 0) {
            throw std::invalid_argument("integer partition parts must be positive");
        }
        target_ += p;
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

std::vector<unsigned> IntegerPartition::multiplicities() const
{
    std::vector<unsigned> r(target_ + 1, 0);
    for (unsigned p : parts_) {
        ++r[p];
    }
    return r;
}

Integer IntegerPartition::set_partition_count() const
{
    const auto r = multiplicities();
    Integer denom = 1;
    for (unsigned j = 1; j < r.size(); ++j) {
        denom *= boost::multiprecision::pow(factorial(j), r[j]) * factorial(r[j]);
    }
    return factorial(target_) / denom;
}

std::vector<IntegerPartition> enumerate_integer_partitions(unsigned n)
{
    if (n == 0) {
        throw std::invalid_argument("no partitions of zero index");
    }
    std::vector<std::vector<unsigned>> raw;
    std::vector<unsigned> current;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned min_part) {
        if (remaining == 0) {
            raw.push_back(current);
            return;
        }
        for (unsigned p = min_part; p <= remaining; ++p) {
            current.push_back(p);
            rec(remaining - p, p);
            current.pop_back();
        }
    };
    rec(n, 1);
    std::sort(raw.begin(), raw.end(), [](const auto &a, const auto &b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    });
    std::vector<IntegerPartition> out;
    out.reserve(raw.size());
    for (auto &p : raw) {
        out.emplace_back(std::move(p));
    }
    return out;
}

AugmentedPartition::AugmentedPartition(MultiIndex target, std::vector<std::vector<PartitionPart>> slots)
    : target_(std::move(target)), slots_(std::move(slots))
{
    MultiIndex sum = MultiIndex::zero(target_.dim());
    for (auto &s : slots_) {
        s = canonicalize(std::move(s));
        for (const auto &p : s) {
            sum = sum + p.column.scaled(p.multiplicity);
        }
    }
    if (sum != target_) {
        throw std::invalid_argument("augmented partition does not sum to " + target_.to_string());
    }
}

unsigned AugmentedPartition::slot_length(std::size_t k) const
{
    unsigned l = 0;
    for (const auto &p : slots_.at(k)) {
        l += p.multiplicity;
    }
    return l;
}

Integer AugmentedPartition::multiplicity_factorial() const
{
    Integer f = 1;
    for (const auto &s : slots_) {
        for (const auto &p : s) {
            f *= factorial(p.multiplicity);
        }
    }
    return f;
}

Integer AugmentedPartition::part_factorial() const
{
    Integer f = 1;
    for (const auto &s : slots_) {
        for (const auto &p : s) {
            f *= boost::multiprecision::pow(p.column.factorial(), p.multiplicity);
        }
    }
    return f;
}

std::vector<AugmentedPartition::GroupedColumn> AugmentedPartition::grouped() const
{
    std::map<std::vector<unsigned>, GroupedColumn> acc;
    for (std::size_t k = 0; k < slots_.size(); ++k) {
        for (const auto &p : slots_[k]) {
            auto &g = acc[p.column.entries()];
            if (g.per_slot.empty()) {
                g.column = p.column;
                g.per_slot.assign(slots_.size(), 0);
            }
            g.multiplicity += p.multiplicity;
            g.per_slot[k] += p.multiplicity;
        }
    }
    std::vector<GroupedColumn> out;
    out.reserve(acc.size());
    for (auto &[key, g] : acc) {
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<AugmentedPartition> augmented_partitions(const MultiIndex &i, unsigned n, const EnumerationCaps &caps)
{
    require_nonzero(i);
    caps.check(i);
    std::vector<AugmentedPartition> out;
    // Partition lists per sub-index are reused across compositions.
    std::map<MultiIndex, std::vector<MultiIndexPartition>> memo;
    auto parts_of = [&](const MultiIndex &j) -> const std::vector<MultiIndexPartition> & {
        auto it = memo.find(j);
        if (it == memo.end()) {
            it = memo.emplace(j, enumerate_partitions(j, caps)).first;
        }
        return it->second;
    };
    for (const auto &comp : compositions(i, n)) {
        std::vector<std::vector<PartitionPart>> slots(n);
        std::function<void(unsigned)> rec = [&](unsigned k) {
            if (k == n) {
                out.emplace_back(i, slots);
                return;
            }
            if (comp[k].is_zero()) {
                slots[k].clear();
                rec(k + 1);
                return;
            }
            for (const auto &lam : parts_of(comp[k])) {
                slots[k] = lam.parts();
                rec(k + 1);
            }
            slots[k].clear();
        };
        rec(0);
    }
    return out;
}

} // namespace cumpoly
