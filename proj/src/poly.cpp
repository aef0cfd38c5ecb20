#include <cumpoly/poly.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cumpoly
{

bool natural_less(std::string_view a, std::string_view b)
{
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            std::size_t ie = i;
            std::size_t je = j;
            while (ie < a.size() && is_digit(a[ie])) {
                ++ie;
            }
            while (je < b.size() && is_digit(b[je])) {
                ++je;
            }
            auto da = a.substr(i, ie - i);
            auto db = b.substr(j, je - j);
            while (da.size() > 1 && da.front() == '0') {
                da.remove_prefix(1);
            }
            while (db.size() > 1 && db.front() == '0') {
                db.remove_prefix(1);
            }
            if (da.size() != db.size()) {
                return da.size() < db.size();
            }
            if (da != db) {
                return da < db;
            }
            i = ie;
            j = je;
            continue;
        }
        if (a[i] != b[j]) {
            return a[i] < b[j];
        }
        ++i;
        ++j;
    }
    if ((a.size() - i) != (b.size() - j)) {
        return (a.size() - i) < (b.size() - j);
    }
    return a < b;
}

bool Poly::GradedLess::operator()(const Exponents &a, const Exponents &b) const
{
    const auto da = std::accumulate(a.begin(), a.end(), 0U);
    const auto db = std::accumulate(b.begin(), b.end(), 0U);
    if (da != db) {
        return da < db;
    }
    return a < b;
}

Poly::Poly(Rational constant)
{
    if (constant != 0) {
        terms_.emplace(Exponents{}, std::move(constant));
    }
}

Poly::Poly(std::vector<std::string> vars, TermMap terms)
{
    const std::size_t n = vars.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return natural_less(vars[x], vars[y]); });
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (vars[order[k]] == vars[order[k + 1]]) {
            throw std::invalid_argument("duplicate indeterminate '" + vars[order[k]] + "'");
        }
    }
    vars_.reserve(n);
    for (auto idx : order) {
        vars_.push_back(vars[idx]);
    }
    for (auto &[exps, coeff] : terms) {
        if (exps.size() != n) {
            throw std::invalid_argument("exponent vector length does not match the number of indeterminates");
        }
        if (coeff == 0) {
            continue;
        }
        Exponents permuted(n);
        for (std::size_t k = 0; k < n; ++k) {
            permuted[k] = exps[order[k]];
        }
        terms_[permuted] += coeff;
    }
    prune();
}

Poly Poly::variable(std::string name)
{
    TermMap t;
    t.emplace(Exponents{1}, Rational(1));
    return Poly({std::move(name)}, std::move(t));
}

Poly Poly::zero_over(std::vector<std::string> vars)
{
    return Poly(std::move(vars), {});
}

void Poly::prune()
{
    std::erase_if(terms_, [](const auto &kv) { return kv.second == 0; });
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && degree() == 0);
}

Rational Poly::constant_term() const
{
    const Exponents zero(vars_.size(), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_value() const
{
    if (!is_constant()) {
        throw std::domain_error("polynomial is not constant: " + to_string());
    }
    return constant_term();
}

unsigned Poly::degree() const
{
    if (terms_.empty()) {
        return 0;
    }
    const auto &e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0U);
}

std::size_t Poly::var_position(std::string_view var) const
{
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        if (vars_[k] == var) {
            return k;
        }
    }
    return vars_.size();
}

unsigned Poly::degree_in(std::string_view var) const
{
    const auto pos = var_position(var);
    if (pos == vars_.size()) {
        return 0;
    }
    unsigned d = 0;
    for (const auto &[e, c] : terms_) {
        d = std::max(d, e[pos]);
    }
    return d;
}

Poly Poly::over(const std::vector<std::string> &vars) const
{
    std::vector<std::string> target(vars);
    std::sort(target.begin(), target.end(), [](const auto &a, const auto &b) { return natural_less(a, b); });
    target.erase(std::unique(target.begin(), target.end()), target.end());
    if (target == vars_) {
        return *this;
    }
    std::vector<std::size_t> pos(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::find(target.begin(), target.end(), vars_[k]);
        if (it == target.end()) {
            throw std::invalid_argument("indeterminate '" + vars_[k] + "' missing from target set");
        }
        pos[k] = static_cast<std::size_t>(it - target.begin());
    }
    Poly out;
    out.vars_ = std::move(target);
    for (const auto &[e, c] : terms_) {
        Exponents ne(out.vars_.size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) {
            ne[pos[k]] = e[k];
        }
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

namespace
{

std::vector<std::string> merged_vars(const std::vector<std::string> &a, const std::vector<std::string> &b)
{
    std::vector<std::string> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
               [](const auto &x, const auto &y) { return natural_less(x, y); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

Poly &Poly::operator+=(const Poly &rhs)
{
    if (rhs.vars_ != vars_) {
        const auto vars = merged_vars(vars_, rhs.vars_);
        *this = over(vars);
        const Poly r = rhs.over(vars);
        for (const auto &[e, c] : r.terms_) {
            terms_[e] += c;
        }
    } else {
        for (const auto &[e, c] : rhs.terms_) {
            terms_[e] += c;
        }
    }
    prune();
    return *this;
}

Poly &Poly::operator-=(const Poly &rhs)
{
    return *this += -rhs;
}

Poly &Poly::operator*=(const Poly &rhs)
{
    const auto vars = merged_vars(vars_, rhs.vars_);
    const Poly a = over(vars);
    const Poly b = rhs.over(vars);
    TermMap out;
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            Exponents e(ea);
            for (std::size_t k = 0; k < e.size(); ++k) {
                e[k] += eb[k];
            }
            out[e] += ca * cb;
        }
    }
    vars_ = vars;
    terms_ = std::move(out);
    prune();
    return *this;
}

Poly &Poly::operator*=(const Rational &rhs)
{
    if (rhs == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, c] : terms_) {
        c *= rhs;
    }
    return *this;
}

Poly Poly::operator-() const
{
    Poly out(*this);
    for (auto &[e, c] : out.terms_) {
        c = -c;
    }
    return out;
}

Poly Poly::pow(unsigned exponent) const
{
    Poly result = Poly(Rational(1)).over(vars_);
    Poly base = *this;
    while (exponent != 0) {
        if (exponent & 1U) {
            result *= base;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            base *= base;
        }
    }
    return result;
}

bool operator==(const Poly &a, const Poly &b)
{
    if (a.vars_ == b.vars_) {
        return a.terms_ == b.terms_;
    }
    const auto vars = merged_vars(a.vars_, b.vars_);
    return a.over(vars).terms_ == b.over(vars).terms_;
}

Rational Poly::evaluate(std::span<const Rational> point) const
{
    if (point.size() != vars_.size()) {
        throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) + " coordinates, expected " +
                                    std::to_string(vars_.size()));
    }
    Rational total = 0;
    for (const auto &[e, c] : terms_) {
        Rational t = c;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] != 0) {
                t *= cumpoly::pow(point[k], e[k]);
            }
        }
        total += t;
    }
    return total;
}

Poly Poly::evaluate(const std::map<std::string, Rational> &values) const
{
    std::map<std::string, Poly> images;
    for (const auto &[name, v] : values) {
        images.emplace(name, Poly(v));
    }
    return substitute(images);
}

Poly Poly::substitute(const std::map<std::string, Poly> &images) const
{
    std::vector<std::string> kept;
    std::vector<std::size_t> kept_pos;
    std::vector<std::pair<std::size_t, const Poly *>> replaced;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = images.find(vars_[k]);
        if (it == images.end()) {
            kept.push_back(vars_[k]);
            kept_pos.push_back(k);
        } else {
            replaced.emplace_back(k, &it->second);
        }
    }
    // Powers of each image are reused across terms.
    std::vector<std::vector<Poly>> powers(replaced.size());
    Poly result = Poly::zero_over(kept);
    for (const auto &[e, c] : terms_) {
        TermMap mono;
        Exponents ke(kept.size());
        for (std::size_t k = 0; k < kept.size(); ++k) {
            ke[k] = e[kept_pos[k]];
        }
        mono.emplace(std::move(ke), c);
        Poly term(kept, std::move(mono));
        for (std::size_t r = 0; r < replaced.size(); ++r) {
            const unsigned p = e[replaced[r].first];
            if (p == 0) {
                continue;
            }
            auto &cache = powers[r];
            if (cache.empty()) {
                cache.push_back(Poly(Rational(1)));
            }
            while (cache.size() <= p) {
                cache.push_back(cache.back() * *replaced[r].second);
            }
            term *= cache[p];
        }
        result += term;
    }
    return result;
}

std::map<Poly::Exponents, Poly> Poly::collect(const std::vector<std::string> &group) const
{
    std::vector<std::size_t> gpos(group.size(), vars_.size());
    for (std::size_t g = 0; g < group.size(); ++g) {
        gpos[g] = var_position(group[g]);
    }
    std::vector<std::string> rest;
    std::vector<std::size_t> rest_pos;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        if (std::find(group.begin(), group.end(), vars_[k]) == group.end()) {
            rest.push_back(vars_[k]);
            rest_pos.push_back(k);
        }
    }
    std::map<Exponents, Poly> out;
    for (const auto &[e, c] : terms_) {
        Exponents ge(group.size(), 0);
        for (std::size_t g = 0; g < group.size(); ++g) {
            if (gpos[g] < vars_.size()) {
                ge[g] = e[gpos[g]];
            }
        }
        Exponents re(rest.size());
        for (std::size_t k = 0; k < rest.size(); ++k) {
            re[k] = e[rest_pos[k]];
        }
        TermMap mono;
        mono.emplace(std::move(re), c);
        auto [it, inserted] = out.try_emplace(ge, Poly::zero_over(rest));
        it->second += Poly(rest, std::move(mono));
    }
    return out;
}

std::string Poly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[e, c] = *it;
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += '*';
            }
            mono += vars_[k];
            if (e[k] > 1) {
                mono += '^' + std::to_string(e[k]);
            }
        }
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        std::string term;
        if (mono.empty()) {
            term = cumpoly::to_string(mag);
        } else if (mag == 1) {
            term = mono;
        } else {
            term = cumpoly::to_string(mag) + "*" + mono;
        }
        if (first) {
            out = negative ? "-" + term : term;
        } else {
            out += negative ? " - " : " + ";
            out += term;
        }
        first = false;
    }
    return out;
}

Rational poly_eval(const Poly &p, std::span<const Rational> point)
{
    return p.evaluate(point);
}

Poly umbral_substitute_power(const Poly &p, std::span<const Rational> g, std::string_view var)
{
    const std::string name(var);
    Poly result;
    for (const auto &[e, coeff] : p.collect({name})) {
        const unsigned l = e[0];
        if (l == 0) {
            result += coeff;
            continue;
        }
        if (l >= g.size()) {
            throw std::out_of_range("umbral substitution needs the order-" + std::to_string(l) +
                                    " entry, which is missing");
        }
        result += coeff * g[l];
    }
    return result;
}

} // namespace cumpoly
