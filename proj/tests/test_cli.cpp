#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <cumpoly/cli.hpp>
#include <cumpoly/json_io.hpp>

using namespace cumpoly;
using nlohmann::json;

namespace
{

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string> &args, const std::string &input = "")
{
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

json run_json(const std::vector<std::string> &args, const std::string &input = "")
{
    const auto r = run(args, input);
    INFO(r.err);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

const std::string symbolic21 =
    R"({"d":2,"order":3,"entries":{"1,0":"c_{1,0}","0,1":"c_{0,1}","2,0":"c_{2,0}","1,1":"c_{1,1}",)"
    R"("0,2":"c_{0,2}","2,1":"c_{2,1}","1,2":"c_{1,2}","3,0":"c_{3,0}","0,3":"c_{0,3}"}})";

} // namespace

TEST_CASE("partitions of 2,1")
{
    const auto doc = run_json({"partitions", "--index", "2,1"});
    CHECK(doc["count"] == 4);
    CHECK(doc["partitions"][3]["columns"] == json{"0,1", "1,0", "1,0"});
    const auto csv = run({"partitions", "--index", "2,1", "--format", "csv"});
    CHECK(csv.out.rfind("partition,length,coefficient\n", 0) == 0);
}

TEST_CASE("cumulant polynomial display")
{
    const auto doc = run_json({"cumpoly", "--index", "2,1", "--cumulants", symbolic21});
    CHECK(doc["display"] ==
          "c_{0,1}*c_{1,0}^2*y^3 + c_{0,1}*c_{2,0}*y^2 + 2*c_{1,0}*c_{1,1}*y^2 + c_{2,1}*y");
    const auto evald = run_json({"cumpoly", "--index", "3", "--cumulants",
                                 R"({"d":1,"order":3,"entries":{"1":"1","2":"1","3":"1"}})", "--y", "1"});
    CHECK(evald["value"] == "5");
}

TEST_CASE("m2c and c2m round trip through standard input")
{
    const std::string table = R"({"d":2,"order":3,"kind":"moment","entries":{"1,0":"1/2","0,1":"-1","2,0":"3",)"
                              R"("1,1":"2/7","0,2":"1","2,1":"4","3,0":"0","0,3":"-5/2","1,2":"1"}})";
    const auto c = run({"m2c", "--moments", table});
    REQUIRE(c.code == 0);
    const auto back = run_json({"c2m", "--cumulants", "-"}, c.out);
    CHECK(io::table_from_json(back) == io::table_from_json(json::parse(table)));
    const auto sym = run({"c2m", "--cumulants", symbolic21});
    REQUIRE(sym.code == 0);
    CHECK(io::table_from_json(run_json({"m2c", "--moments", "-"}, sym.out)) == io::table_from_json(json::parse(symbolic21)));
}

TEST_CASE("exit codes")
{
    CHECK(run({}).code == cli::exit_usage);
    CHECK(run({"nonsense"}).code == cli::exit_usage);
    CHECK(run({"c2m", "--cumulants", "{bad json"}).code == cli::exit_usage);
    CHECK(run({"c2m", "--cumulants", "/no/such/file"}).code == cli::exit_usage);
    CHECK(run({"partitions", "--index", "a,b"}).code == cli::exit_usage);
    const auto cap = run({"partitions", "--index", "20"});
    CHECK(cap.code == cli::exit_failure);
    CHECK(cap.err.find("size cap exceeded") != std::string::npos);
    CHECK(json::parse(cap.err)["error"] == "size_cap");
    const auto comp = run({"symfun", "invcheck", "--cumulants", R"({"d":1,"order":2,"entries":{"1":"1"}})", "--n", "2",
                           "--m", "3"});
    CHECK(comp.code == cli::exit_failure);
    CHECK(run({"partitions", "--help"}).code == 0);
}

TEST_CASE("size caps from the command line")
{
    CHECK(run({"partitions", "--index", "3", "--max-degree", "2"}).code == cli::exit_failure);
    CHECK(run({"partitions", "--index", "14", "--max-degree", "14"}).code == 0);
}

TEST_CASE("pretty output is a rendering of the json output")
{
    const std::vector<std::string> base{"model", "vg", "--spec",
                                        R"({"time":"1","nu":"1/4","drift":["1/10"],"covariance":[["1/25"]]})",
                                        "--order", "3"};
    const auto doc = run_json(base);
    auto pretty_args = base;
    pretty_args.insert(pretty_args.end(), {"--format", "pretty"});
    CHECK(run(pretty_args).out == cli::render_pretty(doc));
    CHECK(doc["outer"]["entries"]["2"] == "4");
}

TEST_CASE("every subcommand's output parses back")
{
    const std::string ones = R"({"d":1,"order":4,"entries":{"1":"1","2":"1","3":"1","4":"1"}})";
    const std::string gauss2 = R"({"d":2,"order":3,"entries":{"2,0":"1","0,2":"1"}})";

    const auto rs = run_json({"randsum", "--outer", ones, "--cumulants", gauss2});
    CHECK(io::table_from_json(rs).order() == 3);

    const auto mp = run_json({"multipoly", "--index", "2", "--cumulants", ones, "--cumulants", ones, "--y", "1,2"});
    CHECK(io::poly_from_json(mp["poly"]).to_string() == mp["display"]);
    CHECK(mp["value"] == "12");

    const std::string outer = R"({"d":1,"order":3,"coeffs":{"0":"1","1":"1","2":"1","3":"1"}})";
    const std::string inner = R"({"d":1,"order":3,"coeffs":{"1":"1","2":"1","3":"1"}})";
    const auto comp = io::series_from_json(run_json({"compose", "--outer", outer, "--inner", inner}));
    CHECK(comp[MultiIndex{3}] == Rational(5));

    const auto h = run_json({"hermite", "--index", "2", "--cov", R"([["3"]])"});
    CHECK(h["display"] == "y_1^2 - 3");

    const auto nef = io::series_from_json(run_json({"nef", "--x", "0", "--cumulants", R"({"d":1,"order":2,"entries":{"2":"1"}})"}));
    CHECK(nef[MultiIndex{2}] == Rational(-1));
    const auto tilt = run_json({"nef", "--theta", "2", "--exact", "--cumulants", R"({"d":1,"order":2,"entries":{"1":"1","2":"3"}})"});
    CHECK(tilt["entries"]["1"] == "7");
    CHECK(tilt["exact_order"] == 2);

    const auto sh = io::table_from_json(run_json({"sheffer", "--cumulants", ones, "--cumulants", ones}), TableKind::moment);
    CHECK(sh[MultiIndex{2}] == Rational(6));

    const auto merton = run_json({"model", "merton", "--order", "2", "--spec",
                                  R"({"drift":["0"],"covariance":[["1"]],"intensity":"0",)"
                                  R"("jump":{"mean":["0"],"covariance":[["1"]]},"horizon":"2"})"});
    CHECK(merton["cumulants"]["entries"]["2"] == "2");

    const auto ws = run_json({"symfun", "wsum", "--index", "2", "--n", "2", "--cumulants", ones});
    CHECK(ws["power_sums"]["display"] == "s_1^2 + s_2");

    const auto el = run_json({"symfun", "elem", "--n", "2", "--order", "3"});
    CHECK(el["agree"] == true);
    CHECK(el["inverse_bell_cumulants"]["entries"]["2"] == "-1");

    const auto tr = run_json({"symfun", "trace", "--n", "3", "--cumulants", ones});
    const auto tm = io::trace_table_from_json(tr);
    CHECK(tm.n == 3);
    const auto back = run_json({"symfun", "trace", "--trace", tr.dump()});
    CHECK(io::table_from_json(back) == io::table_from_json(json::parse(ones)));

    const auto inv = run_json({"symfun", "invcheck", "--n", "5", "--m", "2", "--cumulants", ones});
    CHECK(inv["pass"] == true);
}

TEST_CASE("mc-validate report")
{
    const auto doc = run_json({"mc-validate", "--samples", "20000", "--seed", "5", "--order", "2", "--spec",
                               R"({"model":"randsum","intensity":"2","summand":{"mean":["1"],"covariance":[["1"]]}})"});
    CHECK(doc["seed"] == 5);
    CHECK(doc["results"].size() == 2);
    CHECK(doc["results"][0]["symbolic"] == "2");
    CHECK(io::model_from_json(doc["spec"]).index() == 2);
    const auto csv = run({"mc-validate", "--samples", "2000", "--order", "1", "--format", "csv", "--spec", doc["spec"].dump()});
    CHECK(csv.out.rfind("index,symbolic,estimate,se,pass\n", 0) == 0);
}

TEST_CASE("csv tables have one row per multi-index")
{
    const auto r = run({"c2m", "--cumulants", R"({"d":2,"order":1,"entries":{"1,0":"1/2","0,1":"3"}})", "--format", "csv"});
    CHECK(r.out == "index,value\n\"0,1\",3\n\"1,0\",1/2\n");
}
