#include <cumpoly/cli.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <cumpoly/json_io.hpp>

namespace cumpoly::cli
{

namespace
{

using io::json;

// Input or option content that cannot be understood; maps to exit_usage.
class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string index;
    unsigned order = 0;
    unsigned dim = 0;
    std::vector<std::string> cumulants;
    std::vector<std::string> moments;
    std::string outer;
    std::vector<std::string> inner;
    std::string spec;
    std::string cov;
    std::string trace;
    std::string x;
    std::string theta;
    std::string y;
    unsigned n = 0;
    unsigned m = 0;
    std::uint64_t seed = 20261018;
    std::uint64_t samples = 1000000;
    double k = 4;
    unsigned threads = 0;
    bool exact = false;
    std::string format = "json";
    std::size_t max_dim = 0;
    unsigned max_degree = 0;
};

std::optional<unsigned long> env_unsigned(const char *name)
{
    const char *v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
        return std::nullopt;
    }
    char *end = nullptr;
    const unsigned long parsed = std::strtoul(v, &end, 10);
    if (*end != '\0') {
        throw UsageError(std::string("environment variable ") + name + " must be a non-negative integer");
    }
    return parsed;
}

EnumerationCaps caps_of(const Options &o)
{
    EnumerationCaps caps;
    if (auto v = env_unsigned("CUMPOLY_MAX_DIM")) {
        caps.max_dim = *v;
    }
    if (auto v = env_unsigned("CUMPOLY_MAX_DEGREE")) {
        caps.max_degree = static_cast<unsigned>(*v);
    }
    if (o.max_dim != 0) {
        caps.max_dim = o.max_dim;
    }
    if (o.max_degree != 0) {
        caps.max_degree = o.max_degree;
    }
    return caps;
}

class Context
{
public:
    Context(const Options &o, std::istream &in) : opts(o), in_(in) {}

    // A path, "-" for standard input, or an inline JSON document.
    json load(const std::string &source)
    {
        std::string text;
        if (source == "-") {
            if (stdin_used_) {
                throw UsageError("standard input can be read only once");
            }
            stdin_used_ = true;
            std::ostringstream ss;
            ss << in_.rdbuf();
            text = ss.str();
        } else if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
            text = source;
        } else {
            std::ifstream f(source);
            if (!f) {
                throw UsageError("cannot open input file '" + source + "'");
            }
            std::ostringstream ss;
            ss << f.rdbuf();
            text = ss.str();
        }
        try {
            return json::parse(text);
        } catch (const json::parse_error &e) {
            throw UsageError(std::string("malformed JSON: ") + e.what());
        }
    }

    SequenceTable<Poly> table(const std::string &source, TableKind kind)
    {
        auto t = io::table_from_json(load(source), kind);
        if (t.kind() != kind) {
            throw UsageError(std::string("expected a ") + to_string(kind) + " table, got a " + to_string(t.kind()) +
                             " table");
        }
        if (opts.order != 0 && opts.order < t.order()) {
            t = t.truncated(opts.order);
        }
        return t;
    }

    const Options &opts;

private:
    std::istream &in_;
    bool stdin_used_ = false;
};

MultiIndex index_of(const Options &o)
{
    if (o.index.empty()) {
        throw UsageError("--index is required");
    }
    return MultiIndex::parse(o.index);
}

std::vector<Rational> rationals_of(const std::string &text, const char *flag)
{
    if (text.empty()) {
        throw UsageError(std::string(flag) + " is required");
    }
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_rational(item));
    }
    return out;
}

unsigned required(unsigned v, const char *flag)
{
    if (v == 0) {
        throw UsageError(std::string(flag) + " must be given and >= 1");
    }
    return v;
}

const std::string &single(const std::vector<std::string> &v, const char *flag)
{
    if (v.size() != 1) {
        throw UsageError(std::string(flag) + " must be given exactly once");
    }
    return v.front();
}

json poly_doc(const Poly &p)
{
    return {{"poly", io::to_json(p)}, {"display", p.to_string()}};
}

// Evaluates p at the comma-separated --y values (one per variable name).
json with_values(json doc, const Poly &p, const std::vector<std::string> &vars, const std::string &y)
{
    if (y.empty()) {
        return doc;
    }
    const auto values = rationals_of(y, "--y");
    if (values.size() != vars.size()) {
        throw UsageError("--y needs " + std::to_string(vars.size()) + " value(s)");
    }
    std::map<std::string, Rational> at;
    for (std::size_t k = 0; k < vars.size(); ++k) {
        at.emplace(vars[k], values[k]);
    }
    doc["y"] = y;
    doc["value"] = io::entry_to_json(p.evaluate(at));
    return doc;
}

json cmd_partitions(Context &ctx)
{
    const auto i = index_of(ctx.opts);
    return io::partitions_to_json(i, enumerate_partitions(i, caps_of(ctx.opts)));
}

json cmd_m2c(Context &ctx)
{
    return io::to_json(cumulants_from_moments(ctx.table(single(ctx.opts.moments, "--moments"), TableKind::moment)));
}

json cmd_c2m(Context &ctx)
{
    return io::to_json(
        moments_from_cumulants(ctx.table(single(ctx.opts.cumulants, "--cumulants"), TableKind::cumulant)));
}

json cmd_cumpoly(Context &ctx)
{
    const auto i = index_of(ctx.opts);
    const auto c = ctx.table(single(ctx.opts.cumulants, "--cumulants"), TableKind::cumulant);
    const auto p = cumulant_polynomial(i, c, "y", caps_of(ctx.opts)).value;
    json doc = poly_doc(p);
    doc["index"] = i.to_string();
    return with_values(doc, p, {"y"}, ctx.opts.y);
}

json cmd_randsum(Context &ctx)
{
    if (ctx.opts.outer.empty()) {
        throw UsageError("--outer is required");
    }
    const auto g = ctx.table(ctx.opts.outer, TableKind::cumulant);
    const auto c = ctx.table(single(ctx.opts.cumulants, "--cumulants"), TableKind::cumulant);
    return io::to_json(random_sum_cumulants(g, c, caps_of(ctx.opts)));
}

json cmd_multipoly(Context &ctx)
{
    const auto i = index_of(ctx.opts);
    if (ctx.opts.cumulants.empty()) {
        throw UsageError("--cumulants must be given once per table");
    }
    std::vector<SequenceTable<Poly>> cs;
    for (const auto &src : ctx.opts.cumulants) {
        cs.push_back(ctx.table(src, TableKind::cumulant));
    }
    const auto vars = detail::default_vars(cs.size());
    const auto p = multivariable_cumulant_polynomial(i, cs, vars, caps_of(ctx.opts));
    json doc = poly_doc(p);
    doc["index"] = i.to_string();
    return with_values(doc, p, vars, ctx.opts.y);
}

json cmd_compose(Context &ctx)
{
    if (ctx.opts.outer.empty() || ctx.opts.inner.empty()) {
        throw UsageError("--outer and at least one --inner are required");
    }
    const auto outer = io::series_from_json(ctx.load(ctx.opts.outer));
    std::vector<TruncatedSeries<Poly>> inner;
    for (const auto &src : ctx.opts.inner) {
        inner.push_back(io::series_from_json(ctx.load(src)));
    }
    if (inner.size() == 1 && outer.dim() == 1) {
        return io::to_json(compose_uni_outer(outer, inner.front()));
    }
    return io::to_json(compose_multi_outer(outer, inner));
}

json cmd_hermite(Context &ctx)
{
    const auto i = index_of(ctx.opts);
    if (ctx.opts.cov.empty()) {
        throw UsageError("--cov is required");
    }
    const auto p = hermite(i, io::matrix_from_json(ctx.load(ctx.opts.cov)));
    json doc = poly_doc(p);
    doc["index"] = i.to_string();
    return doc;
}

json cmd_nef(Context &ctx)
{
    const auto c = io::to_rational(ctx.table(single(ctx.opts.cumulants, "--cumulants"), TableKind::cumulant));
    if (!ctx.opts.theta.empty()) {
        const auto shifted = shifted_cumulants(c, rationals_of(ctx.opts.theta, "--theta"), ctx.opts.exact);
        json doc = io::to_json(shifted.table);
        doc["exact_order"] = shifted.exact_order;
        return doc;
    }
    return io::to_json(nef_series(rationals_of(ctx.opts.x, "--x"), c));
}

json cmd_sheffer(Context &ctx)
{
    if (ctx.opts.cumulants.size() != 2) {
        throw UsageError("sheffer needs --cumulants twice: the g table, then the K table");
    }
    const auto c_tilde = ctx.table(ctx.opts.cumulants[0], TableKind::cumulant);
    const auto c = ctx.table(ctx.opts.cumulants[1], TableKind::cumulant);
    return io::to_json(moments_from_cumulants(convolve_cumulant_tables<Poly>({c_tilde, c})));
}

json model_doc(const SequenceTable<Rational> &cumulants)
{
    return {{"cumulants", io::to_json(cumulants)}, {"moments", io::to_json(moments_from_cumulants(cumulants))}};
}

json cmd_model_merton(Context &ctx)
{
    if (ctx.opts.spec.empty()) {
        throw UsageError("--spec is required");
    }
    const auto spec = io::merton_from_json(ctx.load(ctx.opts.spec));
    return model_doc(merton_cumulants(spec, required(ctx.opts.order, "--order")));
}

json cmd_model_vg(Context &ctx)
{
    if (ctx.opts.spec.empty()) {
        throw UsageError("--spec is required");
    }
    const auto spec = io::vg_from_json(ctx.load(ctx.opts.spec));
    const unsigned order = required(ctx.opts.order, "--order");
    json doc = model_doc(vg_cumulants(spec, order));
    doc["outer"] = io::to_json(vg_outer_cumulants(spec.time, spec.nu, order));
    return doc;
}

json cmd_wsum(Context &ctx)
{
    const auto i = index_of(ctx.opts);
    if (i.dim() != 1) {
        throw UsageError("--index must be a single order for wsum");
    }
    const auto c = ctx.table(single(ctx.opts.cumulants, "--cumulants"), TableKind::cumulant);
    const auto r = weighted_sum_moment(i[0], c, required(ctx.opts.n, "--n"));
    return {{"index", i.to_string()},
            {"n", ctx.opts.n},
            {"power_sums", poly_doc(r.power_sums.poly())},
            {"expanded", poly_doc(r.expanded)}};
}

json cmd_elem(Context &ctx)
{
    const auto r = elementary_symmetric(required(ctx.opts.n, "--n"), required(ctx.opts.order, "--order"));
    json direct = json::array();
    json via = json::array();
    for (std::size_t k = 0; k < r.direct.size(); ++k) {
        direct.push_back(poly_doc(r.direct[k]));
        via.push_back(poly_doc(r.via_power_sums[k]));
    }
    return {{"n", ctx.opts.n},
            {"order", ctx.opts.order},
            {"direct", direct},
            {"via_power_sums", via},
            {"agree", r.agree},
            {"inverse_bell_cumulants", io::to_json(inverse_bell_cumulants(ctx.opts.order))}};
}

json cmd_trace(Context &ctx)
{
    if (!ctx.opts.trace.empty()) {
        return io::to_json(matrix_cumulants_from_trace_moments(io::trace_table_from_json(ctx.load(ctx.opts.trace))));
    }
    const auto c = io::to_rational(ctx.table(single(ctx.opts.cumulants, "--cumulants"), TableKind::cumulant));
    const unsigned order = ctx.opts.order != 0 ? ctx.opts.order : c.order();
    return io::to_json(trace_moments_from_matrix_cumulants(c, required(ctx.opts.n, "--n"), order));
}

json cmd_invcheck(Context &ctx)
{
    const auto c = io::to_rational(ctx.table(single(ctx.opts.cumulants, "--cumulants"), TableKind::cumulant));
    const unsigned order = ctx.opts.order != 0 ? ctx.opts.order : c.order();
    const auto r =
        sampling_invariance_check(c, required(ctx.opts.n, "--n"), required(ctx.opts.m, "--m"), order);
    return {{"n", ctx.opts.n},
            {"m", ctx.opts.m},
            {"population", io::to_json(r.population)},
            {"sample", io::to_json(r.sample)},
            {"pass", r.pass}};
}

json cmd_mc_validate(Context &ctx)
{
    if (ctx.opts.spec.empty()) {
        throw UsageError("--spec is required");
    }
    mc::SampleSpec spec{io::model_from_json(ctx.load(ctx.opts.spec)), ctx.opts.samples, ctx.opts.seed,
                        required(ctx.opts.order, "--order"), ctx.opts.threads};
    const auto estimates = mc::simulate_moments(spec);
    const auto report = mc::compare(mc::symbolic_moments(spec.model, spec.order), estimates, ctx.opts.k);
    return io::report_to_json(spec.model, spec.seed, spec.samples, report);
}

bool is_poly_object(const json &j)
{
    return j.is_object() && j.size() == 2 && j.contains("vars") && j.contains("terms");
}

std::string scalar_text(const json &j)
{
    if (j.is_string()) {
        return j.get<std::string>();
    }
    if (is_poly_object(j)) {
        return io::poly_from_json(j).to_string();
    }
    return j.dump();
}

void pretty_into(const json &j, int indent, std::ostringstream &os)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object() && !is_poly_object(j)) {
        for (const auto &[key, value] : j.items()) {
            if ((value.is_object() && !is_poly_object(value) && !value.empty()) ||
                (value.is_array() && !value.empty() && (value.front().is_structured()))) {
                os << pad << key << ":\n";
                pretty_into(value, indent + 1, os);
            } else if (value.is_array()) {
                os << pad << key << ": [";
                for (std::size_t k = 0; k < value.size(); ++k) {
                    os << (k == 0 ? "" : "; ") << scalar_text(value[k]);
                }
                os << "]\n";
            } else {
                os << pad << key << ": " << (value.is_object() && value.empty() ? "{}" : scalar_text(value)) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) {
            os << pad << "[" << k << "]\n";
            pretty_into(j[k], indent + 1, os);
        }
    } else {
        os << pad << scalar_text(j) << "\n";
    }
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char ch : s) {
        q += ch;
        if (ch == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

void flatten(const json &j, const std::string &path, std::vector<std::pair<std::string, std::string>> &rows)
{
    if (j.is_object() && !is_poly_object(j)) {
        for (const auto &[key, value] : j.items()) {
            flatten(value, path.empty() ? key : path + "." + key, rows);
        }
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) {
            flatten(j[k], path + "[" + std::to_string(k) + "]", rows);
        }
    } else {
        rows.emplace_back(path, scalar_text(j));
    }
}

} // namespace

std::string render_pretty(const json &doc)
{
    std::ostringstream os;
    pretty_into(doc, 0, os);
    return os.str();
}

std::string render_csv(const json &doc)
{
    std::ostringstream os;
    // Tables and series: one row per multi-index.
    const char *body = doc.is_object() && doc.contains("entries") ? "entries"
                       : doc.is_object() && doc.contains("coeffs") ? "coeffs"
                                                                   : nullptr;
    if (body != nullptr && doc[body].is_object()) {
        os << "index,value\n";
        for (const auto &[key, value] : doc[body].items()) {
            os << csv_field(key) << "," << csv_field(scalar_text(value)) << "\n";
        }
        return os.str();
    }
    if (doc.is_object() && doc.contains("results") && doc["results"].is_array()) {
        os << "index,symbolic,estimate,se,pass\n";
        for (const auto &r : doc["results"]) {
            os << csv_field(r.at("index").get<std::string>()) << "," << r.at("symbolic").get<std::string>() << ","
               << r.at("estimate").dump() << "," << r.at("se").dump() << "," << r.at("pass").dump() << "\n";
        }
        return os.str();
    }
    if (doc.is_object() && doc.contains("partitions")) {
        os << "partition,length,coefficient\n";
        for (const auto &p : doc["partitions"]) {
            std::string cols;
            for (const auto &c : p.at("columns")) {
                cols += (cols.empty() ? "" : ";") + c.get<std::string>();
            }
            os << csv_field(cols) << "," << p.at("length").dump() << "," << p.at("coefficient").get<std::string>()
               << "\n";
        }
        return os.str();
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    os << "key,value\n";
    for (const auto &[k, v] : rows) {
        os << csv_field(k) << "," << csv_field(v) << "\n";
    }
    return os.str();
}

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err)
{
    Options o;
    CLI::App app{"Exact multivariate cumulant polynomial toolkit", "cumpoly"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cumpoly 0.1.0");

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
        sub->add_option("--order", o.order, "Truncation order");
        sub->add_option("--max-dim", o.max_dim, "Enumeration cap on dimension (env CUMPOLY_MAX_DIM)");
        sub->add_option("--max-degree", o.max_degree, "Enumeration cap on degree (env CUMPOLY_MAX_DEGREE)");
    };
    auto add_index = [&](CLI::App *sub) { sub->add_option("--index", o.index, "Multi-index, e.g. 2,1")->required(); };
    auto add_cumulants = [&](CLI::App *sub) {
        sub->add_option("--cumulants", o.cumulants, "Cumulant table: file, - for stdin, or inline JSON");
    };

    using Handler = json (*)(Context &);
    std::vector<std::pair<CLI::App *, Handler>> handlers;
    auto sub = [&](CLI::App &parent, const std::string &name, const std::string &desc, Handler h) {
        CLI::App *s = parent.add_subcommand(name, desc);
        add_common(s);
        if (h != nullptr) {
            handlers.emplace_back(s, h);
        }
        return s;
    };

    add_index(sub(app, "partitions", "Enumerate the partitions of a multi-index", cmd_partitions));
    sub(app, "m2c", "Moments to cumulants", cmd_m2c)->add_option("--moments", o.moments, "Moment table");
    add_cumulants(sub(app, "c2m", "Cumulants to moments", cmd_c2m));
    {
        auto *s = sub(app, "cumpoly", "Cumulant polynomial C_i(y)", cmd_cumpoly);
        add_index(s);
        add_cumulants(s);
        s->add_option("--y", o.y, "Evaluate at this y");
    }
    {
        auto *s = sub(app, "randsum", "Cumulants of a random sum", cmd_randsum);
        s->add_option("--outer", o.outer, "Univariate cumulant table of the count");
        add_cumulants(s);
    }
    {
        auto *s = sub(app, "multipoly", "Multivariable cumulant polynomial", cmd_multipoly);
        add_index(s);
        add_cumulants(s);
        s->add_option("--y", o.y, "Evaluate at y_1,...,y_n");
    }
    {
        auto *s = sub(app, "compose", "Compose exponential-format series", cmd_compose);
        s->add_option("--outer", o.outer, "Outer series");
        s->add_option("--inner", o.inner, "Inner delta series (repeat for several)");
    }
    {
        auto *s = sub(app, "hermite", "Multivariate Hermite polynomial", cmd_hermite);
        add_index(s);
        s->add_option("--cov", o.cov, "Covariance matrix as JSON rows");
    }
    {
        auto *s = sub(app, "nef", "Natural exponential family series or tilted cumulants", cmd_nef);
        add_cumulants(s);
        s->add_option("--x", o.x, "Point x, comma separated");
        s->add_option("--theta", o.theta, "Tilt parameter, comma separated");
        s->add_flag("--exact", o.exact, "Assert the table is exact beyond its order");
    }
    add_cumulants(sub(app, "sheffer", "Sheffer coefficients of exp(K~ + K)", cmd_sheffer));
    {
        auto *model = app.add_subcommand("model", "Lévy model cumulants");
        model->require_subcommand(1);
        sub(*model, "merton", "Merton jump diffusion", cmd_model_merton)->add_option("--spec", o.spec, "Model JSON");
        sub(*model, "vg", "Common-clock variance gamma", cmd_model_vg)->add_option("--spec", o.spec, "Model JSON");
    }
    {
        auto *sym = app.add_subcommand("symfun", "Symmetric functions and random matrices");
        sym->require_subcommand(1);
        auto *w = sub(*sym, "wsum", "Moment of a weighted sum in power sums", cmd_wsum);
        add_index(w);
        add_cumulants(w);
        w->add_option("--n", o.n, "Number of summands");
        sub(*sym, "elem", "Elementary symmetric polynomials, two routes", cmd_elem)
            ->add_option("--n", o.n, "Number of variables");
        auto *t = sub(*sym, "trace", "Trace moments from matrix cumulants, or back", cmd_trace);
        add_cumulants(t);
        t->add_option("--n", o.n, "Matrix dimension");
        t->add_option("--trace", o.trace, "Trace moment table to invert");
        auto *ic = sub(*sym, "invcheck", "Simple random sampling invariance", cmd_invcheck);
        add_cumulants(ic);
        ic->add_option("--n", o.n, "Population size");
        ic->add_option("--m", o.m, "Sample size");
    }
    {
        auto *s = sub(app, "mc-validate", "Monte Carlo check of exact moments", cmd_mc_validate);
        s->add_option("--spec", o.spec, "Model JSON with a \"model\" field");
        s->add_option("--seed", o.seed, "RNG seed");
        s->add_option("--samples", o.samples, "Sample count")->check(CLI::PositiveNumber);
        s->add_option("--k", o.k, "Pass threshold in standard errors")->check(CLI::PositiveNumber);
        s->add_option("--threads", o.threads, "Worker threads (0: all cores)");
    }

    auto diagnose = [&](const char *kind, const std::string &message, int code) {
        err << json{{"error", kind}, {"message", message}}.dump() << "\n";
        return code;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    Context ctx(o, in);
    for (const auto &[s, h] : handlers) {
        if (!s->parsed()) {
            continue;
        }
        try {
            const json doc = h(ctx);
            if (o.format == "csv") {
                out << render_csv(doc);
            } else if (o.format == "pretty") {
                out << render_pretty(doc);
            } else {
                out << doc.dump(2) << "\n";
            }
            return exit_ok;
        } catch (const UsageError &e) {
            return diagnose("usage", e.what(), exit_usage);
        } catch (const ParseError &e) {
            return diagnose("usage", e.what(), exit_usage);
        } catch (const io::FormatError &e) {
            return diagnose("usage", e.what(), exit_usage);
        } catch (const SizeCapError &e) {
            return diagnose("size_cap", e.what(), exit_failure);
        } catch (const std::exception &e) {
            return diagnose("computation", e.what(), exit_failure);
        }
    }
    return diagnose("usage", "no subcommand selected", exit_usage);
}

} // namespace cumpoly::cli
