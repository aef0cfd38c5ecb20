#pragma once

// JSON readers and writers. Rationals travel as "p/q" strings, multi-indexes
// as "i1,i2,...". Every writer's output is accepted by the matching reader.

#include <nlohmann/json.hpp>

#include <cumpoly/cumulants.hpp>
#include <cumpoly/mc.hpp>
#include <cumpoly/models.hpp>
#include <cumpoly/partitions.hpp>
#include <cumpoly/symfunc.hpp>

namespace cumpoly::io
{

using nlohmann::json;

// Raised for structurally invalid documents (wrong types, missing fields).
class FormatError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

json to_json(const Rational &q);
// Accepts rational strings and JSON integers.
Rational rational_from_json(const json &j);

// {"vars": [...], "terms": {"e1,e2": "r"}}
json to_json(const Poly &p);
Poly poly_from_json(const json &j);

// A table or series entry: a rational string stays numeric, any other string
// names an indeterminate, an object is a polynomial.
Poly entry_from_json(const json &j);
json entry_to_json(const Poly &p);

json to_json(const TruncatedSeries<Rational> &s);
json to_json(const TruncatedSeries<Poly> &s);
TruncatedSeries<Poly> series_from_json(const json &j);

json to_json(const SequenceTable<Rational> &t);
json to_json(const SequenceTable<Poly> &t);
// Missing "kind" defaults to `default_kind`.
SequenceTable<Poly> table_from_json(const json &j, TableKind default_kind = TableKind::cumulant);

// True when every entry is a constant.
bool is_numeric(const TruncatedSeries<Poly> &s);
TruncatedSeries<Rational> to_rational(const TruncatedSeries<Poly> &s);
SequenceTable<Rational> to_rational(const SequenceTable<Poly> &t);

json to_json(const MultiIndexPartition &p);
json partitions_to_json(const MultiIndex &i, const std::vector<MultiIndexPartition> &ps);

json to_json(const TraceMomentTable &t);
TraceMomentTable trace_table_from_json(const json &j);

RationalMatrix matrix_from_json(const json &j);
json to_json(const RationalMatrix &m);
json to_json(const GaussianSpec &g);
GaussianSpec gaussian_from_json(const json &j);
json to_json(const MertonSpec &m);
MertonSpec merton_from_json(const json &j);
json to_json(const VGSpec &v);
VGSpec vg_from_json(const json &j);

// {"model": "merton" | "vg" | "randsum" | "matrix", ...model fields}
json to_json(const mc::ModelSpec &m);
mc::ModelSpec model_from_json(const json &j);

// {"spec": ..., "seed": int, "samples": int, "k": float, "results": [...]}
json report_to_json(const mc::ModelSpec &model, std::uint64_t seed, std::uint64_t samples,
                    const mc::ComparisonReport &report);

} // namespace cumpoly::io
