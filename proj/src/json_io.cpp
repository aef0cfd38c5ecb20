#include <cumpoly/json_io.hpp>

#include <string>

namespace cumpoly::io
{

namespace
{

const json &field(const json &j, const char *name)
{
    if (!j.is_object()) {
        throw FormatError(std::string("expected a JSON object with field '") + name + "'");
    }
    const auto it = j.find(name);
    if (it == j.end()) {
        throw FormatError(std::string("missing field '") + name + "'");
    }
    return *it;
}

unsigned unsigned_field(const json &j, const char *name)
{
    const json &v = field(j, name);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw FormatError(std::string("field '") + name + "' must be a non-negative integer");
    }
    return v.get<unsigned>();
}

std::vector<Rational> vector_from_json(const json &j, const char *what)
{
    if (!j.is_array()) {
        throw FormatError(std::string(what) + " must be an array");
    }
    std::vector<Rational> out;
    for (const auto &v : j) {
        out.push_back(rational_from_json(v));
    }
    return out;
}

json vector_to_json(const std::vector<Rational> &v)
{
    json out = json::array();
    for (const auto &q : v) {
        out.push_back(to_json(q));
    }
    return out;
}

std::string exponents_key(const Poly::Exponents &e)
{
    std::string s;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (k != 0) {
            s += ',';
        }
        s += std::to_string(e[k]);
    }
    return s;
}

Poly::Exponents parse_exponents(const std::string &key, std::size_t n)
{
    Poly::Exponents e;
    if (n == 0) {
        if (!key.empty()) {
            throw FormatError("polynomial term '" + key + "' has exponents but no variables");
        }
        return e;
    }
    const MultiIndex m = MultiIndex::parse(key);
    if (m.dim() != n) {
        throw FormatError("polynomial term '" + key + "' does not match the variable count");
    }
    for (std::size_t k = 0; k < n; ++k) {
        e.push_back(m[k]);
    }
    return e;
}

template <typename C>
json series_coeffs(const TruncatedSeries<C> &s)
{
    json coeffs = json::object();
    for (const auto &[i, c] : s.coefficients()) {
        if (is_zero(c)) {
            continue;
        }
        if constexpr (std::is_same_v<C, Poly>) {
            coeffs[i.to_string()] = entry_to_json(c);
        } else {
            coeffs[i.to_string()] = to_json(c);
        }
    }
    return coeffs;
}

template <typename C>
json table_json(const SequenceTable<C> &t)
{
    json entries = json::object();
    for (const auto &[i, c] : t.series().coefficients()) {
        if (i.is_zero() || is_zero(c)) {
            continue;
        }
        if constexpr (std::is_same_v<C, Poly>) {
            entries[i.to_string()] = entry_to_json(c);
        } else {
            entries[i.to_string()] = to_json(c);
        }
    }
    return {{"d", t.dim()}, {"order", t.order()}, {"kind", to_string(t.kind())}, {"entries", entries}};
}

// Reads {"key": entry} pairs of a series/table body, checking dimension and order.
template <typename Sink>
void read_entries(const json &obj, std::size_t d, unsigned order, Sink &&sink)
{
    if (!obj.is_object()) {
        throw FormatError("entries must be a JSON object keyed by multi-index");
    }
    for (const auto &[key, value] : obj.items()) {
        MultiIndex i = MultiIndex::zero(1);
        try {
            i = MultiIndex::parse(key);
        } catch (const std::exception &e) {
            throw FormatError("invalid multi-index key '" + key + "'");
        }
        if (i.dim() != d) {
            throw FormatError("multi-index key '" + key + "' does not have " + std::to_string(d) + " coordinates");
        }
        if (i.degree() > order) {
            throw FormatError("multi-index key '" + key + "' exceeds order " + std::to_string(order));
        }
        sink(i, entry_from_json(value));
    }
}

} // namespace

json to_json(const Rational &q)
{
    return cumpoly::to_string(q);
}

Rational rational_from_json(const json &j)
{
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError &e) {
            throw FormatError(e.what());
        }
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long long>());
    }
    throw FormatError("expected a rational string, got " + j.dump());
}

json to_json(const Poly &p)
{
    json terms = json::object();
    for (const auto &[e, c] : p.terms()) {
        terms[exponents_key(e)] = to_json(c);
    }
    return {{"vars", p.vars()}, {"terms", terms}};
}

Poly poly_from_json(const json &j)
{
    const json &vars_j = field(j, "vars");
    const json &terms_j = field(j, "terms");
    if (!vars_j.is_array() || !terms_j.is_object()) {
        throw FormatError("polynomial needs a 'vars' array and a 'terms' object");
    }
    std::vector<std::string> vars;
    for (const auto &v : vars_j) {
        if (!v.is_string()) {
            throw FormatError("polynomial variable names must be strings");
        }
        vars.push_back(v.get<std::string>());
    }
    // Build through arithmetic so that any variable order is accepted.
    Poly out = Poly::zero_over(vars);
    for (const auto &[key, value] : terms_j.items()) {
        const auto e = parse_exponents(key, vars.size());
        Poly term(rational_from_json(value));
        for (std::size_t k = 0; k < vars.size(); ++k) {
            if (e[k] != 0) {
                term *= Poly::variable(vars[k]).pow(e[k]);
            }
        }
        out += term;
    }
    return out;
}

Poly entry_from_json(const json &j)
{
    if (j.is_object()) {
        return poly_from_json(j);
    }
    if (j.is_number_integer()) {
        return Poly(Rational(j.get<long long>()));
    }
    if (!j.is_string()) {
        throw FormatError("table entries must be rational strings, symbol names or polynomial objects");
    }
    const auto s = j.get<std::string>();
    try {
        return Poly(parse_rational(s));
    } catch (const ParseError &) {
    }
    if (s.empty() || s.find_first_of(" \t\n+*^") != std::string::npos) {
        throw FormatError("invalid table entry '" + s + "'");
    }
    return Poly::variable(s);
}

json entry_to_json(const Poly &p)
{
    if (p.is_constant()) {
        return to_json(p.constant_value());
    }
    if (p.terms().size() == 1) {
        const auto &[e, c] = *p.terms().begin();
        std::size_t nonzero = 0, at = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] != 0) {
                ++nonzero;
                at = k;
            }
        }
        if (c == 1 && nonzero == 1 && e[at] == 1) {
            return p.vars()[at];
        }
    }
    return to_json(p);
}

json to_json(const TruncatedSeries<Rational> &s)
{
    return {{"d", s.dim()}, {"order", s.order()}, {"coeffs", series_coeffs(s)}};
}

json to_json(const TruncatedSeries<Poly> &s)
{
    return {{"d", s.dim()}, {"order", s.order()}, {"coeffs", series_coeffs(s)}};
}

TruncatedSeries<Poly> series_from_json(const json &j)
{
    const unsigned d = unsigned_field(j, "d");
    if (d == 0) {
        throw FormatError("series dimension must be >= 1");
    }
    TruncatedSeries<Poly> s(d, unsigned_field(j, "order"));
    read_entries(field(j, "coeffs"), d, s.order(), [&](const MultiIndex &i, Poly p) { s.set(i, std::move(p)); });
    return s;
}

json to_json(const SequenceTable<Rational> &t)
{
    return table_json(t);
}

json to_json(const SequenceTable<Poly> &t)
{
    return table_json(t);
}

SequenceTable<Poly> table_from_json(const json &j, TableKind default_kind)
{
    TableKind kind = default_kind;
    if (j.is_object() && j.contains("kind")) {
        const auto &k = j["kind"];
        if (k == "cumulant") {
            kind = TableKind::cumulant;
        } else if (k == "moment") {
            kind = TableKind::moment;
        } else {
            throw FormatError("table kind must be \"cumulant\" or \"moment\"");
        }
    }
    const unsigned d = unsigned_field(j, "d");
    if (d == 0) {
        throw FormatError("table dimension must be >= 1");
    }
    SequenceTable<Poly> t(kind, d, unsigned_field(j, "order"));
    read_entries(field(j, "entries"), d, t.order(), [&](const MultiIndex &i, Poly p) {
        if (i.is_zero()) {
            throw FormatError("the order-0 entry of a table is implicit");
        }
        t.set(i, std::move(p));
    });
    return t;
}

bool is_numeric(const TruncatedSeries<Poly> &s)
{
    for (const auto &[i, c] : s.coefficients()) {
        if (!c.is_constant()) {
            return false;
        }
    }
    return true;
}

TruncatedSeries<Rational> to_rational(const TruncatedSeries<Poly> &s)
{
    return ring_cast<Rational>(s);
}

SequenceTable<Rational> to_rational(const SequenceTable<Poly> &t)
{
    return ring_cast<Rational>(t);
}

json to_json(const MultiIndexPartition &p)
{
    json parts = json::array();
    for (const auto &part : p.parts()) {
        parts.push_back({{"column", part.column.to_string()}, {"multiplicity", part.multiplicity}});
    }
    json columns = json::array();
    for (const auto &c : p.columns()) {
        columns.push_back(c.to_string());
    }
    return {{"columns", columns},
            {"parts", parts},
            {"length", p.length()},
            {"coefficient", partition_coefficient(p.target(), p).str()}};
}

json partitions_to_json(const MultiIndex &i, const std::vector<MultiIndexPartition> &ps)
{
    json list = json::array();
    for (const auto &p : ps) {
        list.push_back(to_json(p));
    }
    return {{"index", i.to_string()}, {"count", ps.size()}, {"partitions", list}};
}

json to_json(const TraceMomentTable &t)
{
    return {{"n", t.n}, {"moments", vector_to_json(t.moments)}};
}

TraceMomentTable trace_table_from_json(const json &j)
{
    TraceMomentTable t{unsigned_field(j, "n"), vector_from_json(field(j, "moments"), "moments")};
    if (t.n == 0) {
        throw FormatError("trace table: n must be >= 1");
    }
    return t;
}

RationalMatrix matrix_from_json(const json &j)
{
    if (!j.is_array()) {
        throw FormatError("matrix must be an array of rows");
    }
    RationalMatrix m;
    for (const auto &row : j) {
        m.push_back(vector_from_json(row, "matrix row"));
    }
    return m;
}

json to_json(const RationalMatrix &m)
{
    json out = json::array();
    for (const auto &row : m) {
        out.push_back(vector_to_json(row));
    }
    return out;
}

json to_json(const GaussianSpec &g)
{
    return {{"mean", vector_to_json(g.mean)}, {"covariance", to_json(g.covariance)}};
}

GaussianSpec gaussian_from_json(const json &j)
{
    return {vector_from_json(field(j, "mean"), "mean"), matrix_from_json(field(j, "covariance"))};
}

json to_json(const MertonSpec &m)
{
    return {{"drift", vector_to_json(m.drift)},
            {"covariance", to_json(m.covariance)},
            {"intensity", to_json(m.intensity)},
            {"jump", to_json(m.jump)},
            {"horizon", to_json(m.horizon)}};
}

MertonSpec merton_from_json(const json &j)
{
    return {vector_from_json(field(j, "drift"), "drift"), matrix_from_json(field(j, "covariance")),
            rational_from_json(field(j, "intensity")), gaussian_from_json(field(j, "jump")),
            rational_from_json(field(j, "horizon"))};
}

json to_json(const VGSpec &v)
{
    return {{"time", to_json(v.time)},
            {"nu", to_json(v.nu)},
            {"drift", vector_to_json(v.drift)},
            {"covariance", to_json(v.covariance)}};
}

VGSpec vg_from_json(const json &j)
{
    return {rational_from_json(field(j, "time")), rational_from_json(field(j, "nu")),
            vector_from_json(field(j, "drift"), "drift"), matrix_from_json(field(j, "covariance"))};
}

json to_json(const mc::ModelSpec &m)
{
    json out = std::visit(
        [](const auto &s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, mc::RandomSumSpec>) {
                return {{"intensity", to_json(s.intensity)}, {"summand", to_json(s.summand)}};
            } else if constexpr (std::is_same_v<T, mc::MatrixSpec>) {
                return {{"n", s.n}, {"mean", to_json(s.mean)}, {"variance", to_json(s.variance)}};
            } else {
                return to_json(s);
            }
        },
        m);
    out["model"] = mc::model_name(m);
    return out;
}

mc::ModelSpec model_from_json(const json &j)
{
    const json &name = field(j, "model");
    if (name == "merton") {
        return merton_from_json(j);
    }
    if (name == "vg") {
        return vg_from_json(j);
    }
    if (name == "randsum") {
        return mc::RandomSumSpec{rational_from_json(field(j, "intensity")), gaussian_from_json(field(j, "summand"))};
    }
    if (name == "matrix") {
        return mc::MatrixSpec{unsigned_field(j, "n"), rational_from_json(field(j, "mean")),
                              rational_from_json(field(j, "variance"))};
    }
    throw FormatError("unknown model " + name.dump() + " (expected merton, vg, randsum or matrix)");
}

json report_to_json(const mc::ModelSpec &model, std::uint64_t seed, std::uint64_t samples,
                    const mc::ComparisonReport &report)
{
    json results = json::array();
    for (const auto &r : report.rows) {
        results.push_back({{"index", r.index.to_string()},
                           {"symbolic", to_json(r.symbolic)},
                           {"estimate", r.estimate},
                           {"se", r.se},
                           {"pass", r.pass}});
    }
    return {{"spec", to_json(model)}, {"seed", seed},          {"samples", samples},
            {"k", report.k},          {"pass", report.all_pass()}, {"results", results}};
}

} // namespace cumpoly::io
