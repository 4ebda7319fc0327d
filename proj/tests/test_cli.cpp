#include "difflarge/workbench.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace testsupport;

namespace {

struct Run {
    int code;
    Json out;
    std::string text;
};

Run run(std::vector<std::string> args) {
    std::ostringstream os;
    int code = run_command(args, os);
    Run r{code, Json(), os.str()};
    try {
        r.out = Json::parse(os.str());
    } catch (const Json::exception&) {
    }
    return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / ("dlwb_" + name);
    std::ofstream(p) << content;
    return p.string();
}

} // namespace

TEST(Cli, SolveSeriesExponential) {
    auto r = run({"solve-series", "--f", "x' - x", "--g", "1", "--witness", "1,1", "--prec", "8"});
    ASSERT_EQ(r.code, 0) << r.text;
    Json expect = {"1", "1", "1/2", "1/6", "1/24", "1/120", "1/720", "1/5040"};
    EXPECT_EQ(r.out["series"]["coeffs"], expect);
    EXPECT_EQ(r.out["series"]["lowest"], 0);
    EXPECT_EQ(r.out["series"]["prec"], 8);
}

TEST(Cli, ReduceAndCheck) {
    auto r = run({"reduce", "--g", "x''", "--f", "x'^2 - x"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out["remainder"], "x'");
    EXPECT_EQ(r.out["r"], 1);
    EXPECT_EQ(r.out["verified"], true);

    auto c = run({"check", "--f", "x'^2 - x", "--g", "x", "--witness", "0,0"});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.out["valid"], false);
    EXPECT_EQ(c.out["violations"], Json({"separant_vanishes"}));
}

TEST(Cli, ErrorsAreJson) {
    auto s = run({"parse", "--f", "x^('"});
    EXPECT_EQ(s.code, 1);
    EXPECT_EQ(s.out["error"], "SyntaxError");
    auto u = run({"parse", "--f", "y + 1"});
    EXPECT_EQ(u.out["error"], "UnknownIdentifier");
    auto usage = run({"frobnicate"});
    EXPECT_EQ(usage.code, 2);
    EXPECT_EQ(usage.out["error"], "UsageError");
    auto pre = run({"solve-series", "--f", "x'^2 - x", "--g", "x", "--witness", "0,0"});
    EXPECT_EQ(pre.code, 1);
    EXPECT_EQ(pre.out["error"], "PreconditionFailed");
    auto sel = run({"factor-select", "--f", "(x' - x)^2", "--witness", "1,1"});
    EXPECT_EQ(sel.out["error"], "PreconditionFailed");
}

TEST(Cli, BaseConfig) {
    auto cfg = temp_file("base.json", R"({"generators":["u"],"derivations":{"u":"1"},"prec":5})");
    auto r = run({"--base", cfg, "solve-series", "--f", "x'", "--g", "1", "--witness", "u,0"});
    ASSERT_EQ(r.code, 0) << r.text;
    EXPECT_EQ(r.out["series"]["coeffs"], Json({"u", "-1", "0", "0", "0"}));

    auto bad = temp_file("bad.json", R"({"generators":["x"],"derivations":{"x":"1"}})");
    EXPECT_EQ(run({"--base", bad, "parse", "--f", "x"}).out["error"], "InvalidArgument");
    auto undeclared = temp_file("undeclared.json", R"({"generators":["u"],"derivations":{"u":"w"}})");
    EXPECT_EQ(run({"--base", undeclared, "parse", "--f", "x"}).code, 1);
}

TEST(Cli, OtherSubcommands) {
    EXPECT_EQ(run({"parse", "--f", "x*x' + 3*x''^2"}).out["printed"], "3*x''^2 + x'*x");
    auto l = run({"leader", "--f", "x*x'^2 - 1"});
    EXPECT_EQ(l.out["separant"], "2*x'*x");
    EXPECT_EQ(l.out["initial"], "x");
    EXPECT_EQ(run({"saturate", "--f", "x'^2 - x", "--g", "2*x'' - 1"}).out["member"], true);
    EXPECT_EQ(run({"saturate", "--f", "x'^2 - x", "--g", "x"}).out["member"], false);
    EXPECT_EQ(run({"factor-select", "--f", "(x' - x)*(x' + x)", "--witness", "1,1"}).out["h"], "-x' + x");
    EXPECT_EQ(run({"section", "--f", "x'^2 - x"}).out["section_identity"], true);
    auto e = run({"solve-extension", "--f", "x*x' - 1", "--g", "x", "--witness", "1,1"});
    EXPECT_EQ(e.out["success"], true);
    auto red = run({"solve-extension", "--f", "(x' - x)*(x' + x)", "--g", "1", "--witness", "1,1"});
    EXPECT_EQ(red.out["error"], "RequiresIrreducible");
    EXPECT_EQ(run({"hensel", "--mu", "t", "--prec", "5"}).out["root"]["coeffs"],
              Json({"-1", "-1", "-2", "-5", "-14"}));
}

TEST(Cli, DistinctReportsShortfall) {
    auto ok = run({"distinct", "--f", "x'^2 - x", "--g", "x", "--count", "5", "--prec", "4"});
    ASSERT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out["solutions"].size(), 5u);
    EXPECT_EQ(ok.out["solutions"][4]["witness"], Json({"25", "5"}));
    auto few = run({"distinct", "--f", "x' - x", "--g", "1", "--count", "50", "--search-bound", "2"});
    EXPECT_EQ(few.code, 1);
    EXPECT_EQ(few.out["error"], "FewerFound");
}

TEST(Cli, CorpusEdgeCases) {
    auto empty = run({"corpus", temp_file("empty.jsonl", "")});
    EXPECT_EQ(empty.code, 0);
    EXPECT_TRUE(empty.out["records"].empty());

    auto mixed = temp_file("mixed.jsonl",
                           "{\"f\":\"x' - x\",\"g\":\"1\",\"witness\":[\"1\",\"1\"],\"kind\":\"strict\",\"prec\":4}\n"
                           "not json\n"
                           "{\"f\":\"(x' - x)*(x' + x)\",\"g\":\"1\",\"witness\":[\"1\",\"1\"],\"kind\":\"strict\"}\n");
    auto r = run({"corpus", mixed});
    EXPECT_EQ(r.code, 1);
    ASSERT_EQ(r.out["records"].size(), 3u);
    EXPECT_EQ(r.out["records"][0]["status"], "pass");
    EXPECT_EQ(r.out["records"][1]["status"], "malformed");
    EXPECT_EQ(r.out["records"][2]["status"], "skipped: hypothesis");

    auto threaded = run({"corpus", mixed, "--jobs", "3"});
    EXPECT_EQ(threaded.text, r.text);
}
