#include <sstream>
#include <stdexcept>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cumpoly/cli.hpp>
#include <cumpoly/json_io.hpp>
#include <cumpoly/symfunc.hpp>

namespace py = pybind11;
using nlohmann::json;
using namespace cumpoly;

namespace
{

// Documents cross the boundary as JSON text; the Python layer decodes them.
std::string table_convert(const std::string &doc, TableKind from)
{
    const auto t = io::table_from_json(json::parse(doc), from);
    if (t.kind() != from) {
        throw std::invalid_argument(std::string("expected a ") + to_string(from) + " table");
    }
    if (io::is_numeric(t.delta_series())) {
        const auto r = io::to_rational(t);
        return (from == TableKind::cumulant ? io::to_json(moments_from_cumulants(r))
                                            : io::to_json(cumulants_from_moments(r)))
            .dump();
    }
    return (from == TableKind::cumulant ? io::to_json(moments_from_cumulants(t))
                                        : io::to_json(cumulants_from_moments(t)))
        .dump();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Multivariate cumulant polynomial sequences";

    m.def(
        "run",
        [](const std::vector<std::string> &args, const std::string &input) {
            std::istringstream in(input);
            std::ostringstream out, err;
            const int code = cli::run(args, in, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "");

    m.def(
        "partitions",
        [](const std::string &index) {
            const auto i = MultiIndex::parse(index);
            return io::partitions_to_json(i, enumerate_partitions(i)).dump();
        },
        py::arg("index"));

    m.def(
        "moments_from_cumulants", [](const std::string &doc) { return table_convert(doc, TableKind::cumulant); },
        py::arg("table"));
    m.def(
        "cumulants_from_moments", [](const std::string &doc) { return table_convert(doc, TableKind::moment); },
        py::arg("table"));

    m.def(
        "cumulant_polynomial",
        [](const std::string &index, const std::string &doc) {
            const auto t = io::table_from_json(json::parse(doc), TableKind::cumulant);
            return io::to_json(cumulant_polynomial(MultiIndex::parse(index), t).value).dump();
        },
        py::arg("index"), py::arg("cumulants"));

    m.def(
        "hermite",
        [](const std::string &index, const std::string &covariance) {
            return io::to_json(hermite(MultiIndex::parse(index), io::matrix_from_json(json::parse(covariance)))).dump();
        },
        py::arg("index"), py::arg("covariance"));

    py::register_exception<io::FormatError>(m, "FormatError", PyExc_ValueError);
}
