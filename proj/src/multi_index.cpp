#include <cumpoly/multi_index.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace cumpoly
{

MultiIndex::MultiIndex(std::vector<unsigned> entries)
    : entries_(std::move(entries)), degree_(std::accumulate(entries_.begin(), entries_.end(), 0U))
{
    if (entries_.empty()) {
        throw std::invalid_argument("multi-index must have dimension >= 1");
    }
}

MultiIndex::MultiIndex(std::initializer_list<unsigned> entries) : MultiIndex(std::vector<unsigned>(entries)) {}

MultiIndex MultiIndex::zero(std::size_t dim)
{
    return MultiIndex(std::vector<unsigned>(dim, 0));
}

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t r)
{
    std::vector<unsigned> e(dim, 0);
    e.at(r) = 1;
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::parse(std::string_view text)
{
    std::vector<unsigned> entries;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        auto field = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!field.empty() && field.front() == ' ') {
            field.remove_prefix(1);
        }
        while (!field.empty() && field.back() == ' ') {
            field.remove_suffix(1);
        }
        unsigned value = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
            throw ParseError("invalid multi-index: '" + std::string(text) + "'");
        }
        entries.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return MultiIndex(std::move(entries));
}

std::string MultiIndex::to_string() const
{
    std::string out;
    for (std::size_t r = 0; r < entries_.size(); ++r) {
        if (r != 0) {
            out += ',';
        }
        out += std::to_string(entries_[r]);
    }
    return out;
}

bool MultiIndex::fits_in(const MultiIndex &other) const
{
    if (other.dim() != dim()) {
        return false;
    }
    for (std::size_t r = 0; r < dim(); ++r) {
        if (entries_[r] > other.entries_[r]) {
            return false;
        }
    }
    return true;
}

Integer MultiIndex::factorial() const
{
    Integer f = 1;
    for (unsigned e : entries_) {
        f *= cumpoly::factorial(e);
    }
    return f;
}

MultiIndex MultiIndex::operator+(const MultiIndex &other) const
{
    if (other.dim() != dim()) {
        throw std::invalid_argument("multi-index dimension mismatch");
    }
    std::vector<unsigned> e(entries_);
    for (std::size_t r = 0; r < dim(); ++r) {
        e[r] += other.entries_[r];
    }
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex &other) const
{
    if (!other.fits_in(*this)) {
        throw std::domain_error("multi-index subtraction would go negative");
    }
    std::vector<unsigned> e(entries_);
    for (std::size_t r = 0; r < dim(); ++r) {
        e[r] -= other.entries_[r];
    }
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::scaled(unsigned k) const
{
    std::vector<unsigned> e(entries_);
    for (auto &x : e) {
        x *= k;
    }
    return MultiIndex(std::move(e));
}

std::strong_ordering operator<=>(const MultiIndex &a, const MultiIndex &b)
{
    if (auto c = a.degree_ <=> b.degree_; c != 0) {
        return c;
    }
    return a.entries_ <=> b.entries_;
}

bool lex_less(const MultiIndex &a, const MultiIndex &b)
{
    return a.entries() < b.entries();
}

namespace
{

void fill_degree(std::vector<unsigned> &cur, std::size_t r, unsigned remaining, std::vector<MultiIndex> &out)
{
    if (r + 1 == cur.size()) {
        cur[r] = remaining;
        out.emplace_back(cur);
        return;
    }
    // Ascending lexicographic order: smallest leading entry first.
    for (unsigned v = 0; v <= remaining; ++v) {
        cur[r] = v;
        fill_degree(cur, r + 1, remaining - v, out);
    }
}

void fill_box(const std::vector<unsigned> &bound, std::vector<unsigned> &cur, std::size_t r,
              std::vector<MultiIndex> &out)
{
    if (r == bound.size()) {
        out.emplace_back(cur);
        return;
    }
    for (unsigned v = 0; v <= bound[r]; ++v) {
        cur[r] = v;
        fill_box(bound, cur, r + 1, out);
    }
}

} // namespace

std::vector<MultiIndex> indices_up_to(std::size_t dim, unsigned max_degree, unsigned min_degree)
{
    if (dim == 0) {
        throw std::invalid_argument("multi-index must have dimension >= 1");
    }
    std::vector<MultiIndex> out;
    std::vector<unsigned> cur(dim, 0);
    for (unsigned k = min_degree; k <= max_degree; ++k) {
        fill_degree(cur, 0, k, out);
    }
    return out;
}

std::vector<MultiIndex> sub_indices(const MultiIndex &i)
{
    std::vector<MultiIndex> out;
    std::vector<unsigned> cur(i.dim(), 0);
    fill_box(i.entries(), cur, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

Integer binomial(const MultiIndex &i, const MultiIndex &j)
{
    if (!j.fits_in(i)) {
        return 0;
    }
    Integer b = 1;
    for (std::size_t r = 0; r < i.dim(); ++r) {
        b *= binomial(i[r], j[r]);
    }
    return b;
}

Rational monomial_value(const MultiIndex &i, const std::vector<Rational> &point)
{
    if (point.size() != i.dim()) {
        throw std::invalid_argument("point dimension does not match multi-index");
    }
    Rational v = 1;
    for (std::size_t r = 0; r < i.dim(); ++r) {
        v *= pow(point[r], i[r]);
    }
    return v;
}

} // namespace cumpoly
