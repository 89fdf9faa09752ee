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
/**
 * @file commands.hpp
 * Subcommands of the `qbn` tool. Each command writes to the given streams
 * and returns the process exit status, so the tool can be driven in-process.
 */
#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qbn/qbn.hpp"

namespace qbn::cli {

enum ExitCode : int { kOk = 0, kRejected = 1, kUsage = 2, kInternal = 3 };

inline constexpr std::uint64_t kDefaultSeed = 0;

struct Options {
    std::string input;
    std::string level = "elementary";
    std::uint64_t shots = 8192;
    std::size_t runs = 10;
    std::optional<std::uint64_t> seed;
    double alpha = 0.05;
    bool exact = false;
    std::string out;
    std::string format = "text";
    std::string reference;
};

/// Raised for inconsistent or malformed invocations (exit status 2).
class UsageError : public Error {
  public:
    using Error::Error;
};

namespace detail {

inline std::uint64_t resolve_seed(const Options &o) {
    if (o.seed) {
        return *o.seed;
    }
    if (const char *env = std::getenv("QBN_SEED"); env != nullptr && *env != '\0') {
        char *end = nullptr;
        errno = 0;
        const auto v = std::strtoull(env, &end, 10);
        if (errno != 0 || *end != '\0' || *env == '-') {
            throw UsageError("QBN_SEED must be a non-negative integer, got '" + std::string(env) +
                             "'");
        }
        return v;
    }
    return kDefaultSeed;
}

inline LoweringLevel resolve_level(const Options &o) {
    auto level = parse_level(o.level);
    if (!level) {
        throw UsageError("unknown lowering level '" + o.level + "' (mcry|elementary|full)");
    }
    return *level;
}

inline bool structured(const Options &o) {
    if (o.format == "structured") {
        return true;
    }
    if (o.format != "text") {
        throw UsageError("unknown format '" + o.format + "' (text|structured)");
    }
    return false;
}

inline void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw Error("cannot write '" + path + "'");
    }
}

inline void check_sampling(const Options &o) {
    if (o.shots == 0) {
        throw UsageError("--shots must be at least 1");
    }
    if (o.runs < 2) {
        throw UsageError("--runs must be at least 2 (a confidence interval needs r >= 2)");
    }
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) {
        throw UsageError("--alpha must lie in (0, 1)");
    }
}

inline std::string label(const NodeSpec &n, std::size_t s) { return n.id.name + "=" + n.states[s]; }

inline void print_report_table(const RunReport &r, const BayesianNetwork &bn, std::ostream &out) {
    char line[160];
    char ci[32];
    std::snprintf(ci, sizeof ci, "%g%% CI", (1.0 - r.alpha) * 100);
    std::snprintf(line, sizeof line, "%-16s %8s %8s   %-20s\n", "Value", "Mean", "SD", ci);
    out << line;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const auto &node = bn.node(r.nodes[i].node);
        for (std::size_t s = 0; s < r.nodes[i].states.size(); ++s) {
            const auto &e = r.nodes[i].states[s];
            std::snprintf(line, sizeof line, "%-16s %8.4f %8.4f   [%.4f, %.4f]\n",
                          label(node, s).c_str(), e.mean, e.sd, e.ci_low, e.ci_high);
            out << line;
        }
    }
}

inline nlohmann::ordered_json exact_to_json(const std::vector<NodeMarginal> &ms,
                                            const BayesianNetwork &bn) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto &m : ms) {
        const auto &spec = bn.node(m.node);
        nlohmann::ordered_json states = nlohmann::ordered_json::array();
        for (std::size_t s = 0; s < m.probs.size(); ++s) {
            states.push_back({{"state", spec.states[s]}, {"p", m.probs[s]}});
        }
        nodes.push_back({{"name", m.node.name}, {"states", states}, {"padding", m.padding_mass}});
    }
    return {{"exact", true}, {"nodes", nodes}};
}

} // namespace detail

inline int cmd_validate(const Options &o, std::ostream &out, std::ostream &err) {
    const auto text = read_text_file(o.input);
    BayesianNetwork bn;
    try {
        bn = network_from_json(parse_json_text(text));
    } catch (const SchemaError &e) {
        err << o.input << ": " << e.what() << "\n";
        return kRejected;
    } catch (const SyntaxError &e) {
        err << o.input << ": " << e.what() << "\n";
        return kRejected;
    }
    const auto violations = validate(bn);
    if (detail::structured(o)) {
        nlohmann::ordered_json issues = nlohmann::ordered_json::array();
        for (const auto &v : violations) {
            issues.push_back({{"node", v.node}, {"message", v.message}});
        }
        out << nlohmann::ordered_json{{"valid", violations.empty()}, {"issues", issues}}.dump(2)
            << "\n";
    } else if (violations.empty()) {
        out << o.input << ": valid (" << bn.size() << " nodes)\n";
    }
    for (const auto &v : violations) {
        err << o.input << ": " << v.message << "\n";
    }
    return violations.empty() ? kOk : kRejected;
}

inline int cmd_compile(const Options &o, std::ostream &out, std::ostream & /*err*/) {
    const auto bn = load_network(o.input);
    CompileOptions copts;
    copts.level = detail::resolve_level(o);
    const auto circuit = compile(bn, copts);
    const auto b = budget(bn);
    const auto census = gate_census(circuit);
    std::string qasm;
    if (!o.out.empty()) {
        if (census[GateKind::MCRY] > 0) {
            throw UsageError("cannot export: MCRY must be lowered before export "
                             "(use --level elementary or full)");
        }
        qasm = export_qasm(circuit);
    }
    if (detail::structured(o)) {
        nlohmann::ordered_json gates;
        for (auto k : kAllGateKinds) {
            if (census[k] > 0) {
                gates[std::string(gate_name(k))] = census[k];
            }
        }
        nlohmann::ordered_json doc = {
            {"level", std::string(level_name(copts.level))},
            {"qubits",
             {{"total", b.total}, {"node", b.node_qubits}, {"ancilla", b.ancilla_qubits}}},
            {"gates", gates},
            {"gate_count", census.total()}};
        out << doc.dump(2) << "\n";
    } else {
        out << "level: " << level_name(copts.level) << "\n";
        out << b.total << " qubits (" << b.node_qubits << " node, " << b.ancilla_qubits
            << " ancilla)\n";
        out << "gates:";
        for (auto k : kAllGateKinds) {
            if (census[k] > 0) {
                out << " " << gate_name(k) << "=" << census[k];
            }
        }
        out << " total=" << census.total() << "\n";
    }
    if (!o.out.empty()) {
        detail::write_file(o.out, qasm);
    }
    return kOk;
}

inline int cmd_simulate(const Options &o, std::ostream &out, std::ostream & /*err*/) {
    const auto bn = load_network(o.input);
    CompileOptions copts;
    copts.level = detail::resolve_level(o);
    const bool json = detail::structured(o);
    const auto circuit = compile(bn, copts);
    if (o.exact) {
        const auto ms = exact_circuit_marginals(circuit, bn);
        const auto doc = detail::exact_to_json(ms, bn);
        if (json) {
            out << doc.dump(2) << "\n";
        } else {
            for (const auto &m : ms) {
                const auto &spec = bn.node(m.node);
                for (std::size_t s = 0; s < m.probs.size(); ++s) {
                    char line[96];
                    std::snprintf(line, sizeof line, "%-16s %.10f\n",
                                  detail::label(spec, s).c_str(), m.probs[s]);
                    out << line;
                }
            }
        }
        if (!o.out.empty()) {
            detail::write_file(o.out, doc.dump(2) + "\n");
        }
        return kOk;
    }
    detail::check_sampling(o);
    const auto report =
        run_experiment(circuit, bn, o.runs, o.shots, o.alpha, detail::resolve_seed(o));
    const auto doc = report_to_json(report);
    if (json) {
        out << doc.dump(2) << "\n";
    } else {
        out << "runs=" << report.runs << " shots=" << report.shots << " alpha=" << report.alpha
            << " seed=" << report.seed << " generator=" << report.generator << "\n";
        detail::print_report_table(report, bn, out);
    }
    if (!o.out.empty()) {
        detail::write_file(o.out, doc.dump(2) + "\n");
    }
    return kOk;
}

inline int cmd_report(const Options &o, std::ostream &out, std::ostream & /*err*/) {
    const auto bn = load_network(o.input);
    const auto reference = o.reference.empty() ? bn : load_network(o.reference);
    for (const auto &spec : bn.nodes()) {
        const auto idx = reference.find(spec.id);
        if (!idx || reference.node(*idx).states != spec.states) {
            throw UsageError("reference network does not match node '" + spec.id.name + "'");
        }
    }
    CompileOptions copts;
    copts.level = detail::resolve_level(o);
    const bool json = detail::structured(o);
    detail::check_sampling(o);
    const auto circuit = compile(bn, copts);
    const auto report =
        run_experiment(circuit, bn, o.runs, o.shots, o.alpha, detail::resolve_seed(o));

    bool all = true;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::string table;
    char line[192];
    std::snprintf(line, sizeof line, "%-16s %8s %8s %8s   %-20s %s\n", "Value", "Oracle", "Mean",
                  "SD", "CI", "Covered");
    table += line;
    for (const auto &ne : report.nodes) {
        const auto oracle = exact_marginal(reference, ne.node);
        const auto &spec = bn.node(ne.node);
        for (std::size_t s = 0; s < ne.states.size(); ++s) {
            const auto &e = ne.states[s];
            const bool ok = e.covers(oracle[s]);
            all = all && ok;
            rows.push_back({{"node", ne.node.name},
                            {"state", e.state},
                            {"oracle", oracle[s]},
                            {"mean", e.mean},
                            {"sd", e.sd},
                            {"ci", {e.ci_low, e.ci_high}},
                            {"covered", ok}});
            std::snprintf(line, sizeof line, "%-16s %8.4f %8.4f %8.4f   [%.4f, %.4f]     %s\n",
                          detail::label(spec, s).c_str(), oracle[s], e.mean, e.sd, e.ci_low,
                          e.ci_high, ok ? "yes" : "NO");
            table += line;
        }
    }
    nlohmann::ordered_json doc = report_to_json(report);
    doc["comparison"] = rows;
    doc["pass"] = all;
    if (json) {
        out << doc.dump(2) << "\n";
    } else {
        out << table << (all ? "PASS" : "FAIL") << ": " << (all ? "every" : "not every")
            << " oracle marginal lies in its interval\n";
    }
    if (!o.out.empty()) {
        detail::write_file(o.out, doc.dump(2) + "\n");
    }
    return all ? kOk : kRejected;
}

/// Runs `name` and maps failures onto exit statuses.
inline int run(const std::string &name, const Options &o, std::ostream &out, std::ostream &err) {
    try {
        if (name == "validate") {
            return cmd_validate(o, out, err);
        }
        if (name == "compile") {
            return cmd_compile(o, out, err);
        }
        if (name == "simulate") {
            return cmd_simulate(o, out, err);
        }
        if (name == "report") {
            return cmd_report(o, out, err);
        }
        if (name == "oracle") {
            const auto bn = load_network(o.input);
            const auto ms = exact_marginals(bn);
            if (detail::structured(o)) {
                nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
                for (std::size_t i = 0; i < bn.size(); ++i) {
                    nodes.push_back({{"name", bn.node(i).id.name},
                                     {"states", bn.node(i).states},
                                     {"p", ms[i]}});
                }
                out << nlohmann::ordered_json{{"nodes", nodes}}.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < bn.size(); ++i) {
                    for (std::size_t s = 0; s < ms[i].size(); ++s) {
                        char line[96];
                        std::snprintf(line, sizeof line, "%-16s %.10f\n",
                                      detail::label(bn.node(i), s).c_str(), ms[i][s]);
                        out << line;
                    }
                }
            }
            return kOk;
        }
        throw UsageError("unknown subcommand '" + name + "'");
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SyntaxError &e) {
        err << "error: " << e.what() << "\n";
        return kRejected;
    } catch (const SchemaError &e) {
        err << "error: " << e.what() << "\n";
        return kRejected;
    } catch (const CapacityError &e) {
        err << "error: " << e.what() << "\n";
        return kRejected;
    } catch (const StructuralError &e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

} // namespace qbn::cli
