// Copyright 2026 The QBN Compiler Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "commands.hpp"

namespace qbn::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::string &cmd, const Options &o) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(cmd, o, out, err);
    return {code, out.str(), err.str()};
}

Options on(const std::string &fixture) {
    Options o;
    o.input = fixture_path(fixture);
    return o;
}

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / "qbn_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write_temp(const std::string &name, const std::string &text) {
    const auto p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

bool contains(const std::string &hay, const std::string &needle) {
    return hay.find(needle) != std::string::npos;
}

TEST(CliValidate, Fixture) {
    const auto r = invoke("validate", on("oil4"));
    EXPECT_EQ(r.code, kOk);
    EXPECT_TRUE(contains(r.out, "valid (4 nodes)"));
}

TEST(CliValidate, MalformedFile) {
    Options o;
    o.input = write_temp("bad.json", "{\"nodes\": [");
    const auto r = invoke("validate", o);
    EXPECT_EQ(r.code, kRejected);
    EXPECT_TRUE(contains(r.err, "syntax error")) << r.err;
}

TEST(CliValidate, CyclicNetwork) {
    Options o;
    o.input = write_temp("cycle.json", R"({"nodes": [
      {"name": "A", "states": ["0", "1"], "parents": ["B"],
       "cpt": [{"given": ["0"], "p": [0.5, 0.5]}, {"given": ["1"], "p": [0.5, 0.5]}]},
      {"name": "B", "states": ["0", "1"], "parents": ["A"],
       "cpt": [{"given": ["0"], "p": [0.5, 0.5]}, {"given": ["1"], "p": [0.5, 0.5]}]}]})");
    const auto r = invoke("validate", o);
    EXPECT_EQ(r.code, kRejected);
    EXPECT_TRUE(contains(r.err, "cycle")) << r.err;
}

TEST(CliValidate, MissingFileIsUsageError) {
    Options o;
    o.input = "/nonexistent.json";
    EXPECT_EQ(invoke("validate", o).code, kUsage);
}

TEST(CliCompile, QubitCounts) {
    auto o = on("oil4");
    EXPECT_TRUE(contains(invoke("compile", o).out, "5 qubits"));
    o = on("bankruptcy9");
    o.level = "mcry";
    const auto r = invoke("compile", o);
    EXPECT_EQ(r.code, kOk);
    EXPECT_TRUE(contains(r.out, "16 qubits"));
}

TEST(CliCompile, ExportWritesQasm) {
    auto o = on("oil4");
    o.out = scratch("oil4.qasm").string();
    ASSERT_EQ(invoke("compile", o).code, kOk);
    std::ifstream f(o.out);
    std::string first;
    std::getline(f, first);
    EXPECT_EQ(first, "OPENQASM 2.0;");
}

TEST(CliCompile, McryExportRefused) {
    auto o = on("oil4");
    o.level = "mcry";
    o.out = scratch("refused.qasm").string();
    const auto r = invoke("compile", o);
    EXPECT_EQ(r.code, kUsage);
    EXPECT_TRUE(contains(r.err, "MCRY must be lowered"));
}

TEST(CliCompile, StructuredOutput) {
    auto o = on("oil4");
    o.format = "structured";
    const auto j = nlohmann::json::parse(invoke("compile", o).out);
    EXPECT_EQ(j.at("qubits").at("total"), 5);
}

TEST(CliCompile, BadLevel) {
    auto o = on("oil4");
    o.level = "fast";
    EXPECT_EQ(invoke("compile", o).code, kUsage);
}

TEST(CliSimulate, TableHasIntervalColumns) {
    auto o = on("oil4");
    o.seed = 1;
    const auto r = invoke("simulate", o);
    EXPECT_EQ(r.code, kOk);
    EXPECT_TRUE(contains(r.out, "Mean"));
    EXPECT_TRUE(contains(r.out, "SD"));
    EXPECT_TRUE(contains(r.out, "95% CI"));
    EXPECT_TRUE(contains(r.out, "SP=0"));
}

TEST(CliSimulate, SingleRunRejected) {
    auto o = on("oil4");
    o.runs = 1;
    EXPECT_EQ(invoke("simulate", o).code, kUsage);
}

TEST(CliSimulate, ExactMatchesOracle) {
    auto o = on("bankruptcy_b_ch");
    o.exact = true;
    o.format = "structured";
    const auto j = nlohmann::json::parse(invoke("simulate", o).out);
    const auto bn = load_fixture("bankruptcy_b_ch").network;
    const auto oracle = exact_marginals(bn);
    for (std::size_t i = 0; i < bn.size(); ++i) {
        for (std::size_t s = 0; s < oracle[i].size(); ++s) {
            EXPECT_NEAR(j.at("nodes")[i].at("states")[s].at("p").get<double>(), oracle[i][s],
                        1e-9);
        }
    }
}

TEST(CliSimulate, ReportFilesAreByteIdentical) {
    auto o = on("oil4");
    o.seed = 17;
    o.out = scratch("a.json").string();
    ASSERT_EQ(invoke("simulate", o).code, kOk);
    o.out = scratch("b.json").string();
    ASSERT_EQ(invoke("simulate", o).code, kOk);
    EXPECT_EQ(read_text_file(scratch("a.json").string()),
              read_text_file(scratch("b.json").string()));
}

TEST(CliSimulate, SeedFromEnvironment) {
    auto o = on("bn3");
    o.format = "structured";
    ::setenv("QBN_SEED", "31", 1);
    const auto from_env = invoke("simulate", o).out;
    ::unsetenv("QBN_SEED");
    o.seed = 31;
    EXPECT_EQ(from_env, invoke("simulate", o).out);
    ::setenv("QBN_SEED", "abc", 1);
    o.seed.reset();
    EXPECT_EQ(invoke("simulate", o).code, kUsage);
    ::unsetenv("QBN_SEED");
}

TEST(CliReport, OilDefaultsPass) {
    const auto r = invoke("report", on("oil4"));
    EXPECT_EQ(r.code, kOk) << r.out;
    EXPECT_TRUE(contains(r.out, "Oracle"));
}

TEST(CliReport, ThreeNodeDefaultsPass) {
    const auto r = invoke("report", on("bn3"));
    EXPECT_EQ(r.code, kOk) << r.out;
}

TEST(CliReport, CorruptedCptFailsAgainstOriginal) {
    auto specs = load_fixture("oil4").network.nodes();
    specs[0].cpt.rows[0] = {0.6, 0.4};
    Options o;
    o.input = write_temp("corrupt.json", emit_network(BayesianNetwork(specs)));
    o.reference = fixture_path("oil4");
    const auto r = invoke("report", o);
    EXPECT_EQ(r.code, kRejected);
    EXPECT_TRUE(contains(r.out, "FAIL"));
}

TEST(CliReport, ReferenceMustMatch) {
    auto o = on("oil4");
    o.reference = fixture_path("bn3");
    EXPECT_EQ(invoke("report", o).code, kUsage);
}

TEST(CliOracle, PrintsMarginals) {
    const auto r = invoke("oracle", on("oil4"));
    EXPECT_EQ(r.code, kOk);
    EXPECT_TRUE(contains(r.out, "SP=0             0.4985000000"));
}

TEST(Cli, UnknownSubcommand) {
    EXPECT_EQ(invoke("frobnicate", on("oil4")).code, kUsage);
}

} // namespace
} // namespace qbn::cli
