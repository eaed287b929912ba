#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "anosov/errors.hpp"
#include "anosov/report.hpp"
#include "anosov_cli/commands.hpp"
#include "anosov_cli/config.hpp"

using namespace anosov;
using namespace anosov::cli;

namespace {

const char* kFeasible = R"(# cat map at four halvings
lambda = 0.381966011250105
n = 1
m = -1
p = 1
r1 = 0.025
r2 = 0.00625
words = 200
)";

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("anosov_test_" + name);
    std::ofstream(path) << content;
    return path;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    const auto out = std::filesystem::temp_directory_path() / "anosov_test_cli_stdout";
    const std::string cmd = std::string(ANOSOV_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out);
        std::stringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, ParsesKeysAndComments) {
    const auto c = parse_config(kFeasible);
    EXPECT_DOUBLE_EQ(c.params.r1, 0.025);
    EXPECT_EQ(c.params.m, -1);
    EXPECT_EQ(c.words, 200u);
    EXPECT_EQ(c.grid, RunConfig{}.grid);
    EXPECT_NO_THROW(validate_config(c));
}

TEST(Config, PolicyAndMeshKeys) {
    const auto c = parse_config("policy = literal\nmesh_out = /tmp/mesh.csv\n");
    EXPECT_EQ(c.policy, ConePolicy::Literal);
    EXPECT_EQ(c.mesh_out, "/tmp/mesh.csv");
}

TEST(Config, RejectsMalformedInput) {
    EXPECT_THROW(parse_config("lambda 0.5\n"), ConfigError);
    EXPECT_THROW(parse_config("colour = blue\n"), ConfigError);
    EXPECT_THROW(parse_config("n = two\n"), ConfigError);
    EXPECT_THROW(parse_config("lambda = 0.5x\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/anosov.cfg"), ConfigError);
}

TEST(Config, ValidationRejectsBadValues) {
    EXPECT_THROW(validate_config(parse_config("lambda = 1.5\n")), ConfigError);
    EXPECT_THROW(validate_config(parse_config("max_factors = 4\n")), ConfigError);
    EXPECT_THROW(validate_config(parse_config("grid = 2\n")), ConfigError);
    EXPECT_THROW(validate_config(parse_config("n = 2\nm = 2\n")), ConfigError);
}

TEST(Config, HelpListsEveryKey) {
    const auto help = config_help();
    for (const auto& [key, value] : describe(RunConfig{})) EXPECT_NE(help.find(key + " = "), std::string::npos) << key;
}

TEST(Commands, VerifyPassesAtFeasibleParameters) {
    const auto r = cmd_verify(parse_config(kFeasible), Format::Json);
    EXPECT_EQ(r.exit_code, kExitPass);
    const auto j = Json::parse(r.report);
    EXPECT_TRUE(j.at("passed").get<bool>());
    EXPECT_EQ(j.at("checks").size(), 12u);
}

TEST(Commands, VerifyFailsWithLiteralConesAtLargeRatio) {
    auto c = parse_config("policy = literal\nr1 = 0.4\nr2 = 0.36\nwords = 200\n");
    const auto r = cmd_verify(c, Format::Json);
    EXPECT_EQ(r.exit_code, kExitFail);
    const auto j = Json::parse(r.report);
    bool violated = false;
    for (const auto& chk : j.at("checks")) {
        if (chk.at("check").get<std::string>().rfind("cone_invariance", 0) == 0) {
            violated = violated || chk.at("violations").get<int>() > 0;
        }
    }
    EXPECT_TRUE(violated);
}

TEST(Commands, CombinatoricsRows) {
    auto c = RunConfig{};
    EXPECT_EQ(Json::parse(cmd_combinatorics(c, Format::Json).report).at("rows").size(), 8u);
    c.n_max = 1;
    c.m_max = 1;
    const auto j = Json::parse(cmd_combinatorics(c, Format::Json).report);
    for (const auto& row : j.at("rows")) EXPECT_EQ(row.at("shift").get<int>(), 0);
    c.n_max = 5;
    c.m_max = 3;
    const auto csv = cmd_combinatorics(c, Format::Csv).report;
    const auto lines = std::count(csv.begin(), csv.end(), '\n');
    EXPECT_EQ(static_cast<std::size_t>(lines), combinatorics_table(5, 3).size() + 1);
}

TEST(Commands, TraceRejectsEntryAboveR2) {
    auto c = RunConfig{};
    c.trace_r = 0.5;
    EXPECT_THROW(cmd_trace(c, Format::Csv), ConfigError);
    c.trace_r = 0.05;
    const auto r = cmd_trace(c, Format::Csv);
    EXPECT_EQ(r.exit_code, kExitPass);
    EXPECT_EQ(r.report.rfind("t,x,y,z,region", 0), 0u);
}

TEST(Commands, ReportsAreDeterministic) {
    const auto c = parse_config(kFeasible);
    EXPECT_EQ(cmd_verify(c, Format::Json).report, cmd_verify(c, Format::Json).report);
    auto d = c;
    d.seed = 99;
    EXPECT_NE(cmd_verify(c, Format::Json).report, cmd_verify(d, Format::Json).report);
}

TEST(Binary, ExitCodes) {
    const auto good = temp_file("good.cfg", kFeasible);
    const auto bad = temp_file("bad.cfg", "lambda = 0.5\nflavour = strange\n");
    const auto infeasible = temp_file("infeasible.cfg", "policy = literal\nr1 = 0.4\nr2 = 0.36\nwords = 100\n");
    EXPECT_EQ(run_cli("verify --config " + good.string()), 0);
    EXPECT_EQ(run_cli("verify --config " + bad.string()), 2);
    EXPECT_EQ(run_cli("verify --config " + infeasible.string()), 1);
    EXPECT_EQ(run_cli("verify --format xml"), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli("combinatorics"), 0);
}

TEST(Binary, OutFileMatchesStdout) {
    const auto good = temp_file("good2.cfg", kFeasible);
    const auto out = std::filesystem::temp_directory_path() / "anosov_test_report.json";
    std::string printed;
    ASSERT_EQ(run_cli("verify --config " + good.string() + " --seed 5", &printed), 0);
    ASSERT_EQ(run_cli("verify --config " + good.string() + " --seed 5 --out " + out.string()), 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), printed);
}
