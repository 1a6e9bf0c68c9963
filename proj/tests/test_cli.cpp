#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "hardyball/io.hpp"

using hardyball::io::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(HARDYBALL_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("hardyball_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& contents) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

const char* kThree = R"({"d": 2, "points": [[[0, 0], [0, 0]], [[0.3, 0.1], [0, -0.2]], [[-0.1, 0], [0.4, 0.2]]]})";

}  // namespace

TEST_F(CliTest, GramOfOrigin) {
    const auto p = write("o.json", R"({"d": 1, "points": [[[0, 0]]]})");
    const CliRun r = run("gram --points " + p + " --t 1");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["matrix"], json::parse("[[[1.0, 0.0]]]"));
}

TEST_F(CliTest, GramOfThreePointsIsPsd) {
    const CliRun r = run("gram --points " + write("p.json", kThree) + " --t 2");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["matrix"].size(), 3u);
    EXPECT_GE(j["min_eigenvalue"].get<double>(), 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_EQ(j["matrix"][i][k][0], j["matrix"][k][i][0]);
            EXPECT_EQ(j["matrix"][i][k][1].get<double>(), -j["matrix"][k][i][1].get<double>());
        }
}

TEST_F(CliTest, MalformedInputs) {
    EXPECT_EQ(run("gram --points " + write("bad.json", "{\"d\": 1, ") + " --t 1").code, 2);
    EXPECT_EQ(run("gram --points " + path("missing.json") + " --t 1").code, 2);
    EXPECT_EQ(run("gram --points " + write("out.json", R"({"d": 1, "points": [[[1.0, 0]]]})") + " --t 1").code, 2);
    EXPECT_EQ(run("gram --points " + write("o.json", R"({"d": 1, "points": [[[0, 0]]]})") + " --t -1").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
    EXPECT_EQ(run("gram").code, 2);
}

TEST_F(CliTest, IsometryIdentity) {
    const auto p = write("p.json", kThree);
    const CliRun r = run("isometry --A " + p + " --B " + p + " --t 1.5");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["verdict"], "isometric");
    for (const auto& f : j["witness"]["factors"])
        EXPECT_EQ(f, json::parse("[1.0, 0.0]"));
}

TEST_F(CliTest, IsometrySizeMismatchAndSearch) {
    const auto p = write("p.json", kThree);
    const auto q = write("q.json", R"({"d": 2, "points": [[[0, 0], [0, 0]]]})");
    EXPECT_EQ(run("isometry --A " + p + " --B " + q + " --t 1").code, 1);
    const auto s = write("s.json", R"({"d": 2, "points": [[[-0.1, 0], [0.4, 0.2]], [[0, 0], [0, 0]], [[0.3, 0.1], [0, -0.2]]]})");
    EXPECT_EQ(run("isometry --A " + p + " --B " + s + " --t 1").code, 1);
    const CliRun r = run("isometry --A " + p + " --B " + s + " --t 1 --search");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["witness"]["assignment"], json::parse("[1, 2, 0]"));
    EXPECT_EQ(run("isometry --A " + p + " --B " + s + " --t 1 --assignment 1,2,0").code, 0);
    EXPECT_EQ(run("isometry --A " + p + " --B " + s + " --t 1 --assignment 1,1,0").code, 2);
}

TEST_F(CliTest, CapExceeded) {
    std::string pts = R"({"d": 1, "points": [)";
    for (int i = 0; i < 10; ++i)
        pts += (i ? "," : "") + std::string("[[") + std::to_string(0.05 * i) + ", 0]]";
    pts += "]}";
    const auto p = write("big.json", pts);
    EXPECT_EQ(run("isometry --A " + p + " --B " + p + " --t 1 --search").code, 2);
    EXPECT_EQ(run("isometry --A " + p + " --B " + p + " --t 1").code, 0);
    EXPECT_EQ(run("congruence --A " + p + " --B " + p).code, 2);
    EXPECT_EQ(run("congruence --A " + p + " --B " + p + " --cap 10").code, 0);
}

TEST_F(CliTest, CongruenceIdentical) {
    const auto p = write("p.json", kThree);
    const CliRun r = run("congruence --A " + p + " --B " + p);
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["verdict"], "congruent");
    EXPECT_LT(j["residuals"]["max_action_error"].get<double>(), 1e-8);
}

TEST_F(CliTest, CounterexamplePipeline) {
    const auto a = path("A.json"), b = path("B.json");
    const CliRun r = run("counterexample --t 3 --d 1 --out-A " + a + " --out-B " + b);
    ASSERT_EQ(r.code, 0);
    const json summary = json::parse(r.out);
    EXPECT_EQ(summary["verdict"], "isometric_not_congruent");
    EXPECT_EQ(summary["details"]["isometric"], true);
    EXPECT_EQ(summary["details"]["congruent"], false);
    const auto da = hardyball::io::PointSetDocument::from_json(hardyball::io::read_json_file(a));
    EXPECT_EQ(da.points.size(), 3u);

    EXPECT_EQ(run("isometry --A " + a + " --B " + b + " --t 3").code, 0);
    EXPECT_EQ(run("congruence --A " + a + " --B " + b + " --assignment 0,1,2").code, 1);
    // The two sets are congruent as sets, under the pairing that swaps the nonzero points.
    EXPECT_EQ(run("congruence --A " + a + " --B " + b).code, 0);

    EXPECT_EQ(run("counterexample --t 4 --d 2 --out-A " + a + " --out-B " + b).code, 0);
}

TEST_F(CliTest, CounterexampleRefusesSmallExponent) {
    EXPECT_EQ(run("counterexample --t 2 --d 1 --out-A " + path("A.json") + " --out-B " + path("B.json")).code, 2);
    EXPECT_FALSE(fs::exists(path("A.json")));
}

TEST_F(CliTest, Hardy) {
    CliRun r = run("hardy --w const:1 --u const:2");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["verdict"], "isometric");
    EXPECT_EQ(j["details"]["c"], 0.5);

    r = run("hardy --w const:1 --u power:1");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json::parse(r.out)["verdict"], "inequivalent");

    r = run("hardy --w binom:1 --u const:1");
    ASSERT_EQ(r.code, 0);
    j = json::parse(r.out);
    EXPECT_EQ(j["verdict"], "isometric");
    EXPECT_EQ(j["details"]["c"], 1.0);

    EXPECT_EQ(run("hardy --w const:-1 --u const:1").code, 2);
    EXPECT_EQ(run("hardy --w nonsense --u const:1").code, 2);

    const auto f = write("w.json", "[1, -0.5, 0.25]");
    EXPECT_EQ(run("hardy --w file:" + f + " --u const:1").code, 2);
}

TEST_F(CliTest, HardyHorizon) {
    const CliRun r = run("hardy --w const:1 --u const:3 --horizon 16");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["witness"]["alpha"].size(), 17u);
}

TEST_F(CliTest, Selftest) {
    const CliRun r = run("selftest --cases 20");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["verdict"], "pass");
    EXPECT_EQ(run("selftest --cases 0").code, 0);
}

TEST_F(CliTest, OutputIsDeterministic) {
    const auto p = write("p.json", kThree);
    EXPECT_EQ(run("selftest --seed 99 --cases 10").out, run("selftest --seed 99 --cases 10").out);
    EXPECT_EQ(run("congruence --A " + p + " --B " + p).out, run("congruence --A " + p + " --B " + p).out);
    const auto a1 = path("A1.json"), a2 = path("A2.json");
    const CliRun c1 = run("counterexample --t 5 --d 2 --out-A " + a1 + " --out-B " + path("B1.json"));
    const CliRun c2 = run("counterexample --t 5 --d 2 --out-A " + a2 + " --out-B " + path("B2.json"));
    EXPECT_EQ(hardyball::io::read_json_file(a1), hardyball::io::read_json_file(a2));
    json d1 = json::parse(c1.out)["details"], d2 = json::parse(c2.out)["details"];
    d1.erase("files");
    d2.erase("files");
    EXPECT_EQ(d1, d2);
}

TEST_F(CliTest, Help) { EXPECT_EQ(run("--help").code, 0); }
