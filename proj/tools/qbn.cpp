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
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Compile discrete Bayesian networks into quantum circuits and check them"};
    app.require_subcommand(1);
    qbn::cli::Options o;
    std::uint64_t seed = 0;

    auto add_input = [&](CLI::App *cmd) {
        cmd->add_option("input", o.input, "BN document (JSON)")->required();
        cmd->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"text", "structured"}));
        cmd->add_option("--out", o.out, "Output file");
    };
    auto add_level = [&](CLI::App *cmd) {
        cmd->add_option("--level", o.level, "Lowering level")
            ->check(CLI::IsMember({"mcry", "elementary", "full"}));
    };
    auto add_sampling = [&](CLI::App *cmd) {
        cmd->add_option("--shots", o.shots, "Shots per run")->check(CLI::PositiveNumber);
        cmd->add_option("--runs", o.runs, "Independent runs");
        cmd->add_option("--seed", seed, "Base seed (falls back to $QBN_SEED, then 0)");
        cmd->add_option("--alpha", o.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    };

    auto *validate = app.add_subcommand("validate", "Check a BN document");
    add_input(validate);
    auto *compile = app.add_subcommand("compile", "Compile to a circuit; --out writes OpenQASM 2.0");
    add_input(compile);
    add_level(compile);
    auto *simulate = app.add_subcommand("simulate", "Sample the compiled circuit");
    add_input(simulate);
    add_level(simulate);
    add_sampling(simulate);
    simulate->add_flag("--exact", o.exact, "Statevector marginals, no sampling");
    auto *oracle = app.add_subcommand("oracle", "Exact marginals by enumeration");
    add_input(oracle);
    auto *report = app.add_subcommand("report", "Oracle vs sampled intervals, exit 1 on a miss");
    add_input(report);
    add_level(report);
    add_sampling(report);
    report->add_option("--reference", o.reference, "Network whose oracle marginals are expected");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : qbn::cli::kUsage;
    }
    for (auto *cmd : {simulate, report}) {
        if (cmd->parsed() && cmd->count("--seed") > 0) {
            o.seed = seed;
        }
    }
    const auto name = app.get_subcommands().front()->get_name();
    return qbn::cli::run(name, o, std::cout, std::cerr);
}
