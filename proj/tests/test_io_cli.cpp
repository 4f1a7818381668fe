#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chromhopf/cli.hpp"
#include "chromhopf/error.hpp"
#include "chromhopf/io.hpp"
#include "support.hpp"

using namespace chromhopf;

namespace {

std::string data(const std::string& name) { return std::string(CHROMHOPF_DATA_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("chromhopf_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const InvalidInput& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Io, ScalarRoundTrips)
{
    const Partition lambda{3, 1, 1};
    EXPECT_EQ(to_json(lambda).dump(), "[3,1,1]");
    EXPECT_EQ(partition_from_json(to_json(lambda)), lambda);
    EXPECT_THROW(partition_from_json(Json::parse("[1,3,1]")), InvalidInput);
    EXPECT_THROW(partition_from_json(Json::parse("[2,0]")), InvalidInput);

    const Rational r(-7, 12);
    EXPECT_EQ(to_json(r).dump(), "\"-7/12\"");
    EXPECT_EQ(rational_from_json(to_json(r)), r);
    EXPECT_EQ(rational_from_json(Json(5)), Rational(5));
    EXPECT_THROW(rational_from_json(Json("1/0")), InvalidInput);

    const auto roots = PhaseScalar::from_rational(Rational(1, 16)).kth_roots(4);
    for (const auto& x : roots) EXPECT_EQ(phase_scalar_from_json(to_json(x)), x);
    EXPECT_EQ(phase_scalar_from_json(Json("-3/2")), PhaseScalar::from_rational(Rational(-3, 2)));
}

TEST(Io, GraphRoundTrip)
{
    const auto g = make_graph(3, {{0, 1}, {1, 2}}, {2, 1, 3});
    const auto back = graph_from_json(to_json(g));
    EXPECT_EQ(back.vertex_count(), 3U);
    EXPECT_EQ(back.edges(), g.edges());
    for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(back.weight(v), g.weight(v));

    const auto k1 = graph_from_json(Json::parse(R"({"vertices":[{"id":"a"}],"edges":[]})"));
    EXPECT_EQ(k1.vertex_count(), 1U);
    EXPECT_EQ(k1.weight(0), 1);
    EXPECT_EQ(k1.edge_count(), 0U);
}

TEST(Io, StrictGraphDecoding)
{
    const auto bad = [](const char* text) {
        return error_of([&] { graph_from_json(Json::parse(text)); });
    };
    EXPECT_NE(bad(R"({"vertices":[{"id":"a"}],"edges":[],"extra":1})").find("extra"), std::string::npos);
    EXPECT_NE(bad(R"({"vertices":[{"id":"a","weight":0}],"edges":[]})").find("weight"), std::string::npos);
    EXPECT_NE(bad(R"({"vertices":[{"id":"a","colour":1}],"edges":[]})").find("colour"), std::string::npos);
    EXPECT_FALSE(bad(R"({"vertices":[{"id":"a"},{"id":"b"}],"edges":[["a","b"],["b","a"]]})").empty());
    EXPECT_FALSE(bad(R"({"vertices":[{"id":"a"},{"id":"a"}],"edges":[]})").empty());
    EXPECT_FALSE(bad(R"({"vertices":[{"id":"a"}],"edges":[["a","a"]]})").empty());
    EXPECT_FALSE(bad(R"({"vertices":[{"id":"a"}],"edges":[["a","z"]]})").empty());
    EXPECT_FALSE(bad(R"({"edges":[]})").empty());
}

TEST(Io, MalformedFileReportsPosition)
{
    const auto path = write_temp("malformed.json", "{\"vertices\": [\n  {\"id\": \"a\"},\n  oops\n]}");
    const std::string msg = error_of([&] { read_json_file(path); });
    EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;
    EXPECT_FALSE(error_of([] { read_json_file("/nonexistent/graph.json"); }).empty());
}

TEST(Io, SeriesRoundTrips)
{
    Series f(Basis::m_tilde, Algebra::LambdaTilde, 5);
    f.add({2, 1}, Rational(3, 2));
    f.add({1, 1, 1}, Rational(-1));
    EXPECT_EQ(series_from_json(to_json(f)), f);
    const Series x = csf(make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}}), Basis::p);
    EXPECT_EQ(series_from_json(to_json(x)), x);
    EXPECT_THROW(series_from_json(Json::parse(R"({"basis":"q","terms":[]})")), InvalidInput);

    const KSeries k = ksf_mbar(make_graph(2, {{0, 1}}));
    EXPECT_EQ(kseries_from_json(to_json(k)), k);
    const KSeries m = ksf_oracle(make_graph(2, {{0, 1}}), 4);
    EXPECT_EQ(kseries_from_json(to_json(m)), m);

    GraphSum s = antipode_schmitt(make_graph(3, {{0, 1}, {1, 2}}));
    EXPECT_EQ(graph_sum_from_json(to_json(s)), s);
}

TEST(Io, ClassConfigRoundTrip)
{
    ClassConfig cfg;
    cfg.c_star = {3, 5};
    cfg.classes[1] = {1};
    cfg.classes[2] = {2, 4};
    cfg.default_value = PhaseScalar::from_rational(Rational(0));
    const ClassConfig back = class_config_from_json(to_json(cfg));
    EXPECT_EQ(back.c_star, cfg.c_star);
    EXPECT_EQ(back.classes, cfg.classes);
    EXPECT_EQ(back.default_value, cfg.default_value);

    EXPECT_THROW(class_config_from_json(Json::parse(R"({"C_star":[1],"classes":{"1":[1]}})")), InvalidInput);
}

TEST(Cli, CsfOfThePaw)
{
    const auto r = run({"csf", "--graph", data("paw.json"), "--basis", "p"});
    EXPECT_EQ(r.code, cli::ok) << r.err;
    const Series x = csf(parse_graph_file(data("paw.json")), Basis::p);
    EXPECT_EQ(r.out, x.to_string() + "\n");

    const auto j = run({"--json", "csf", "--graph", data("paw.json"), "--basis", "p"});
    EXPECT_EQ(j.code, cli::ok);
    EXPECT_EQ(series_from_json(Json::parse(j.out)), x);
}

TEST(Cli, SolveMap)
{
    const auto bull = run({"solve-map", "--graph", data("bull.json")});
    EXPECT_EQ(bull.code, cli::verified_false) << bull.out;
    EXPECT_NE(bull.out.find("status: infeasible"), std::string::npos) << bull.out;
    EXPECT_NE(bull.out.find("witness: -2*a3*a2 = 0  [lambda=[3,2]]"), std::string::npos) << bull.out;

    const auto paw = run({"--json", "solve-map", "--graph", data("paw.json")});
    EXPECT_EQ(paw.code, cli::ok) << paw.err;
    const Json j = Json::parse(paw.out);
    EXPECT_EQ(j.at("status"), "solutions");

    const auto tri = run({"solve-map", "--graph", data("triangle_211.json")});
    EXPECT_EQ(tri.code, cli::ok) << tri.err;
}

TEST(Cli, VerifyMapAndDiagram)
{
    EXPECT_EQ(run({"verify-map", "--graph", data("paw.json"), "--a", "1,-1,1/4,0"}).code, cli::ok);
    EXPECT_EQ(run({"verify-map", "--graph", data("paw.json"), "--spec", "identity"}).code, cli::verified_false);
    EXPECT_EQ(run({"verify-map", "--graph", data("paw.json")}).code, cli::usage_error);
    EXPECT_EQ(run({"verify-diagram", "--graph", data("paw.json"), "--V", "{1}", "--E", "{2}"}).code, cli::ok);
}

TEST(Cli, BinaryFamily)
{
    const auto r = run({"family", "--binary-clique", "7", "--B", "{1,2,4}", "--verify"});
    EXPECT_EQ(r.code, cli::ok) << r.out << r.err;
    EXPECT_NE(r.out.find("closure: closed"), std::string::npos);
}

TEST(Cli, OtherVerbs)
{
    const auto comp = run({"--json", "complement", "--graph", data("paw.json")});
    EXPECT_EQ(comp.code, cli::ok);
    EXPECT_EQ(graph_from_json(Json::parse(comp.out)).edge_count(), 2U);

    EXPECT_EQ(run({"hopf-check", "--element", "m_tilde:2,1", "--algebra", "LambdaTilde"}).code, cli::ok);
    EXPECT_EQ(run({"hopf-check", "--graph", data("paw.json")}).code, cli::ok);
    EXPECT_EQ(run({"antipode", "--graph", data("paw.json")}).code, cli::ok);
    EXPECT_EQ(run({"oracle-check", "--graph", data("paw.json"), "--degree", "5"}).code, cli::ok);
    EXPECT_EQ(run({"ksf", "--graph", data("paw.json"), "--basis", "mb"}).code, cli::ok);

    Series f(Basis::e);
    f.add({2, 1}, Rational(1));
    const auto path = write_temp("series.json", to_json(f).dump());
    const auto conv = run({"--json", "convert", "--series", path, "--to", "p"});
    EXPECT_EQ(conv.code, cli::ok) << conv.err;
    EXPECT_EQ(series_from_json(Json::parse(conv.out)), convert(f, Basis::p));
}

TEST(Cli, UsageErrorsAndHelp)
{
    EXPECT_EQ(run({"--help"}).code, cli::ok);
    EXPECT_EQ(run({}).code, cli::usage_error);
    EXPECT_EQ(run({"frobnicate"}).code, cli::usage_error);
    EXPECT_EQ(run({"csf"}).code, cli::usage_error);
    EXPECT_EQ(run({"csf", "--graph", data("paw.json"), "--basis", "zz"}).code, cli::usage_error);
    const auto missing = run({"csf", "--graph", "/nonexistent.json"});
    EXPECT_EQ(missing.code, cli::usage_error);
    EXPECT_NE(missing.err.find("nonexistent"), std::string::npos);
}

TEST(Cli, DeterministicOutput)
{
    const std::vector<std::string> args{"--json", "solve-map", "--graph", data("triangle_211.json")};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, ToolBinary)
{
    const std::string cmd = std::string("\"") + CHROMHOPF_TOOL + "\" csf --graph \"" + data("paw.json") + "\" > /dev/null";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
}
