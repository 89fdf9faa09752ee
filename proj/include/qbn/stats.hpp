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
 * @file stats.hpp
 * Repeated sampling runs and Student-t confidence intervals on the
 * estimated node marginals.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "qbn/circuit.hpp"
#include "qbn/error.hpp"
#include "qbn/network.hpp"
#include "qbn/simulator.hpp"

namespace qbn {

/// Two-sided critical value t_{alpha/2, dof}.
inline double t_critical(double alpha, std::size_t dof) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error("alpha must lie in (0, 1)");
    }
    if (dof == 0) {
        throw Error("t_critical: degrees of freedom must be positive");
    }
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(boost::math::complement(dist, alpha / 2));
}

struct SampleSummary {
    double mean = 0.0;
    double sd = 0.0; ///< sample standard deviation (r - 1 denominator)
};

inline SampleSummary summarize(std::span<const double> xs) {
    if (xs.size() < 2) {
        throw Error("summarize: at least 2 samples are required");
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

struct StateEstimate {
    std::string state;
    double mean = 0.0;
    double sd = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;

    [[nodiscard]] bool covers(double p) const {
        constexpr double slack = 1e-12;
        return p >= ci_low - slack && p <= ci_high + slack;
    }
};

struct NodeEstimate {
    NodeId node;
    std::vector<StateEstimate> states;
};

struct RunReport {
    std::string generator = kGeneratorName;
    std::uint64_t seed = 0;
    std::size_t runs = 0;
    std::uint64_t shots = 0;
    double alpha = 0.05;
    double t_value = 0.0;
    std::vector<NodeEstimate> nodes;
};

/**
 * `runs` independent sampling runs of `shots` shots each; run i uses seed
 * `seed + i`. Every node state gets mean, sd and the interval
 * mean +/- t_{alpha/2, runs-1} sd / sqrt(runs).
 */
inline RunReport run_experiment(const Circuit &circuit, const BayesianNetwork &bn,
                                std::size_t runs, std::uint64_t shots, double alpha,
                                std::uint64_t seed) {
    if (runs < 2) {
        throw Error("run_experiment: at least 2 runs are needed for a confidence interval");
    }
    const auto t = t_critical(alpha, runs - 1);
    const auto sv = statevector(circuit);
    const auto dist = outcome_distribution(circuit, sv);
    const auto mapping = measurement_map(circuit, bn);

    // per_run[node][state][run]
    std::vector<std::vector<std::vector<double>>> per_run(bn.size());
    for (std::size_t i = 0; i < bn.size(); ++i) {
        per_run[i].assign(bn.node(i).num_states(), std::vector<double>(runs));
    }
    for (std::size_t r = 0; r < runs; ++r) {
        const auto counts = sample_outcomes(dist, circuit.num_clbits(), shots, seed + r);
        const auto m = marginals(counts, mapping);
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t s = 0; s < m[i].probs.size(); ++s) {
                per_run[i][s][r] = m[i].probs[s];
            }
        }
    }

    RunReport report;
    report.seed = seed;
    report.runs = runs;
    report.shots = shots;
    report.alpha = alpha;
    report.t_value = t;
    const double root_r = std::sqrt(static_cast<double>(runs));
    for (std::size_t i = 0; i < bn.size(); ++i) {
        NodeEstimate ne{bn.node(i).id, {}};
        for (std::size_t s = 0; s < per_run[i].size(); ++s) {
            const auto sum = summarize(per_run[i][s]);
            const double half = t * sum.sd / root_r;
            ne.states.push_back(
                {bn.node(i).states[s], sum.mean, sum.sd, sum.mean - half, sum.mean + half});
        }
        report.nodes.push_back(std::move(ne));
    }
    return report;
}

inline nlohmann::ordered_json report_to_json(const RunReport &r) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto &n : r.nodes) {
        nlohmann::ordered_json states = nlohmann::ordered_json::array();
        for (const auto &s : n.states) {
            nlohmann::ordered_json e;
            e["state"] = s.state;
            e["mean"] = s.mean;
            e["sd"] = s.sd;
            e["ci"] = {s.ci_low, s.ci_high};
            states.push_back(e);
        }
        nlohmann::ordered_json node;
        node["name"] = n.node.name;
        node["states"] = states;
        nodes.push_back(node);
    }
    nlohmann::ordered_json doc;
    doc["generator"] = r.generator;
    doc["seed"] = r.seed;
    doc["runs"] = r.runs;
    doc["shots"] = r.shots;
    doc["alpha"] = r.alpha;
    doc["t"] = r.t_value;
    doc["nodes"] = nodes;
    return doc;
}

} // namespace qbn
