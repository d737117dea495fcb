#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/report.hpp"
#include "cli/symbol_parser.hpp"
#include "fixtures.hpp"
#include "json.hpp"

using namespace shiftreal;
using namespace shiftreal::cli;
using fixtures::cplx;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir()
    {
        path_ = std::filesystem::temp_directory_path() /
                ("shiftreal_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

std::string slurp(const std::string& path)
{
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) out.push_back(l);
    return out;
}

const std::vector<std::string> kSmallGrid = {"--n", "8192", "--dt", "0.0078125"};

std::vector<std::string> with_small_grid(std::vector<std::string> args)
{
    args.insert(args.end(), kSmallGrid.begin(), kSmallGrid.end());
    return args;
}

}  // namespace

TEST(ParseComplex, Forms)
{
    EXPECT_EQ(parse_complex("1.5"), cplx(1.5, 0.0));
    EXPECT_EQ(parse_complex("2i"), cplx(0.0, 2.0));
    EXPECT_EQ(parse_complex("-i"), cplx(0.0, -1.0));
    EXPECT_EQ(parse_complex("i"), cplx(0.0, 1.0));
    EXPECT_EQ(parse_complex("0.5-3i"), cplx(0.5, -3.0));
    EXPECT_EQ(parse_complex("1e-3+2e-1i"), cplx(1e-3, 0.2));
    EXPECT_THROW(parse_complex("abc"), ParseError);
    EXPECT_THROW(parse_complex(""), ParseError);
}

TEST(ParseSymbol, Catalog)
{
    const TransferSymbol r = parse_symbol("rational:1/1,1");
    EXPECT_LT(std::abs(evaluate(r, 1.0) - 0.5), 1e-15);
    const TransferSymbol d = parse_symbol("delay:1");
    EXPECT_LT(std::abs(evaluate(d, 1.0) - std::exp(-1.0)), 1e-15);
    const TransferSymbol b = parse_symbol("blaschke:1,0.5+2i");
    EXPECT_LT(std::abs(evaluate(b, cplx(0.5, 2.0))), 1e-15);
    const TransferSymbol p = parse_symbol("product:(delay:0.5;blaschke:1)");
    ASSERT_TRUE(p.get_if<Product>());
    EXPECT_EQ(p.get_if<Product>()->factors.size(), 2u);
    const TransferSymbol nested = parse_symbol("product:(product:(delay:1;delay:1);rational:1/1,1)");
    EXPECT_LT(std::abs(evaluate(nested, 1.0) - std::exp(-2.0) / 2.0), 1e-15);
}

TEST(ParseSymbol, Rejects)
{
    for (const char* bad : {"bogus", "rational:1", "rational:1,2,3/1,1", "blaschke:-1", "delay:-2", "delay:x",
                            "product:(delay:1", "product:()", "matinner:/nonexistent/file.json"})
        EXPECT_THROW(parse_symbol(bad), ParseError) << bad;
}

TEST(ParseSymbol, MatrixInnerFile)
{
    TempDir dir;
    const std::string path = dir.file("m.json");
    std::ofstream(path) << R"({"a0": [[0, 1], [-1, 0]], "b": [1, [0, 0]]})";
    const TransferSymbol g = parse_symbol("matinner:" + path);
    const cplx s(0.3, 1.7);
    EXPECT_LT(std::abs(evaluate(g, s) - fixtures::matinner2_closed(s)), 1e-12);

    const std::string bad = dir.file("bad.json");
    std::ofstream(bad) << R"({"a0": [[0, 1], [1, 0]], "b": [1, 0]})";
    EXPECT_THROW(parse_symbol("matinner:" + bad), ParseError);
}

TEST(Report, JsonShape)
{
    SuiteReport r;
    r.suite = "demo";
    r.symbol = "delay:1";
    r.seed = 4;
    r.add("a", "anchor text", 0.5, 1.0);
    r.add("b", "anchor text", std::nan(""), 1.0);
    r.add("c", "anchor text", 3.0, 2.0, Compare::at_least);
    r.fact("k", "v");
    const nlohmann::ordered_json j = nlohmann::ordered_json::parse(to_json(r));
    EXPECT_EQ(j["status"], "fail");
    EXPECT_EQ(j["checks"][0]["status"], "pass");
    EXPECT_TRUE(j["checks"][1]["value"].is_null());
    EXPECT_EQ(j["checks"][1]["status"], "fail");
    EXPECT_EQ(j["checks"][2]["comparison"], ">=");
    EXPECT_EQ(j["checks"][2]["status"], "pass");
    EXPECT_EQ(j["results"]["k"], "v");
    EXPECT_FALSE(j.contains("wall_seconds"));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"suite", "symbol", "grid", "seed", "status", "checks", "results"}));
}

TEST(Report, CsvQuotesAndPrecision)
{
    SuiteReport r;
    r.add("x", "a, \"b\"", 0.1, 1.0);
    const std::vector<std::string> l = lines(to_csv(r));
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], "id,anchor,value,tolerance,comparison,status");
    EXPECT_EQ(l[1], "x,\"a, \"\"b\"\"\",0.10000000000000001,1,<=,pass");
}

TEST(Commands, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"verify"}).code, 2);
    const RunResult bogus = run({"verify", "--symbol", "bogus"});
    EXPECT_EQ(bogus.code, 2);
    EXPECT_FALSE(bogus.err.empty());
    EXPECT_EQ(run({"verify", "--symbol", "delay:1", "--n", "1000"}).code, 2);
    EXPECT_EQ(run({"verify", "--symbol", "delay:1", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"model-space", "--symbol", "rational:1/1,1"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"stability", "--symbol", "delay:1", "--alpha", "-1"}).code, 2);
}

TEST(Commands, VerifySmallGridPassesAndIsDeterministic)
{
    const std::vector<std::string> args = with_small_grid({"verify", "--symbol", "blaschke:1", "--seed", "3"});
    const RunResult a = run(args);
    ASSERT_EQ(a.code, 0) << a.out << a.err;
    const RunResult b = run(args);
    EXPECT_EQ(a.out, b.out);
    const json j = json::parse(a.out);
    EXPECT_EQ(j["suite"], "verify");
    EXPECT_EQ(j["seed"], 3);
    EXPECT_EQ(j["grid"]["n"], 8192);
    for (const auto& c : j["checks"]) {
        EXPECT_FALSE(c["anchor"].get<std::string>().empty());
        EXPECT_NE(c["status"], "fail") << c["id"];
    }
    const RunResult timed = run(with_small_grid({"verify", "--symbol", "blaschke:1", "--seed", "3", "--timing"}));
    EXPECT_TRUE(json::parse(timed.out).contains("wall_seconds"));
}

TEST(Commands, HankelSvdCsv)
{
    TempDir dir;
    const std::string out = dir.file("sv.csv");
    const RunResult r = run({"hankel-svd", "--symbol", "rational:-2/1,1", "--dim", "64", "--out", out, "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::vector<std::string> l = lines(slurp(out));
    ASSERT_EQ(l.size(), 65u);
    EXPECT_EQ(l[0], "index,value");
    std::vector<double> v;
    for (std::size_t i = 1; i < l.size(); ++i) v.push_back(std::stod(l[i].substr(l[i].find(',') + 1)));
    EXPECT_NEAR(v[0], 1.0, 1e-3);
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LE(v[i], v[i - 1]);
}

TEST(Commands, StabilityFacts)
{
    const RunResult r = run({"stability", "--symbol", "blaschke:1", "--alpha", "0.5", "--rho", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["results"]["exp_stable"], "yes");
    EXPECT_EQ(j["results"]["group"], "yes");
    const RunResult d = run({"stability", "--symbol", "delay:1"});
    EXPECT_EQ(json::parse(d.out)["results"]["group"], "no");
}

TEST(Commands, SimulateRoundTrip)
{
    TempDir dir;
    const std::string in = dir.file("u.csv"), out = dir.file("y.csv");
    {
        std::ofstream f(in);
        f.precision(17);
        f << "t,re,im\n";
        for (int k = 0; k < 128; ++k) f << k * 0.0078125 << ",1,0\n";
    }
    const RunResult r =
        run(with_small_grid({"simulate", "--symbol", "rational:1/1,1", "--input", in, "--out", out, "--format", "csv"}));
    ASSERT_EQ(r.code, 0) << r.err;
    const std::vector<std::string> l = lines(slurp(out));
    ASSERT_EQ(l.size(), 4097u);
    EXPECT_EQ(l[0], "t,re,im");
    // y(t) = (e - 1) e^{-t} after the unit box; row 257 is t = 2.
    std::stringstream row(l[257]);
    std::string t, re;
    std::getline(row, t, ',');
    std::getline(row, re, ',');
    EXPECT_DOUBLE_EQ(std::stod(t), 2.0);
    EXPECT_NEAR(std::stod(re), (std::exp(1.0) - 1.0) * std::exp(-2.0), 1e-6);
}

TEST(Commands, SimulateRejectsOffGridInput)
{
    TempDir dir;
    const std::string in = dir.file("u.csv");
    std::ofstream(in) << "t,re,im\n0,1,0\n0.5,1,0\n";
    EXPECT_EQ(run(with_small_grid({"simulate", "--symbol", "delay:1", "--input", in})).code, 2);
    EXPECT_EQ(run(with_small_grid({"simulate", "--symbol", "delay:1", "--input", dir.file("missing.csv")})).code, 2);
    EXPECT_EQ(run(with_small_grid({"simulate", "--symbol", "delay:1"})).code, 2);
}

TEST(Commands, WeightedDemo)
{
    const RunResult r = run({"weighted-demo", "--n-max", "5", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::vector<std::string> l = lines(r.out);
    ASSERT_EQ(l.size(), 7u);
    EXPECT_EQ(run({"weighted-demo", "--n-max", "40"}).code, 2);
}

TEST(Commands, ModelSpaceDelay)
{
    const RunResult r = run(with_small_grid({"model-space", "--symbol", "delay:1"}));
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(json::parse(r.out)["suite"], "model-space");
}
