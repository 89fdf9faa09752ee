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
 * @file oracle.hpp
 * Exact classical inference by full joint enumeration. This is the ground
 * truth every compiled circuit is checked against.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qbn/error.hpp"
#include "qbn/network.hpp"

namespace qbn {

/// Refuse enumerations larger than this many assignments.
inline constexpr std::uint64_t kMaxJointAssignments = std::uint64_t{1} << 24;

/**
 * Joint distribution over every node. Assignments are state-index tuples
 * with one entry per node in topological order, flattened mixed-radix with
 * the last node varying fastest.
 */
class JointDistribution {
  public:
    JointDistribution(std::vector<NodeId> order, std::vector<std::size_t> cards,
                      std::vector<double> probs)
        : order_(std::move(order)), cards_(std::move(cards)), probs_(std::move(probs)) {}

    [[nodiscard]] const std::vector<NodeId> &order() const noexcept { return order_; }
    [[nodiscard]] const std::vector<std::size_t> &cardinalities() const noexcept { return cards_; }
    [[nodiscard]] const std::vector<double> &probabilities() const noexcept { return probs_; }
    [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }

    [[nodiscard]] std::vector<std::size_t> assignment(std::size_t flat) const {
        return configuration_at(flat, cards_);
    }

    [[nodiscard]] double probability(std::span<const std::size_t> assignment) const {
        return probs_.at(configuration_index(assignment, cards_));
    }

  private:
    std::vector<NodeId> order_;
    std::vector<std::size_t> cards_;
    std::vector<double> probs_;
};

inline JointDistribution joint_distribution(const BayesianNetwork &bn) {
    require_valid(bn);
    const auto topo = topological_indices(bn);
    const std::size_t n = topo.size();

    std::vector<std::size_t> position(n);
    std::vector<std::size_t> cards(n);
    std::vector<NodeId> order(n);
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        position[topo[k]] = k;
        cards[k] = bn.node(topo[k]).num_states();
        order[k] = bn.node(topo[k]).id;
        total *= cards[k];
        if (total > kMaxJointAssignments) {
            throw CapacityError("joint distribution exceeds the enumeration guard of 2^24 "
                                "assignments");
        }
    }

    std::vector<std::vector<std::size_t>> parent_pos(n);
    std::vector<std::vector<std::size_t>> parent_cards(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (auto p : bn.parent_indices(topo[k])) {
            parent_pos[k].push_back(position[p]);
            parent_cards[k].push_back(bn.node(p).num_states());
        }
    }

    std::vector<double> probs(static_cast<std::size_t>(total));
    std::vector<std::size_t> config;
    for (std::size_t flat = 0; flat < probs.size(); ++flat) {
        const auto a = configuration_at(flat, cards);
        double p = 1.0;
        for (std::size_t k = 0; k < n && p != 0.0; ++k) {
            config.clear();
            for (auto pp : parent_pos[k]) {
                config.push_back(a[pp]);
            }
            const auto row = configuration_index(config, parent_cards[k]);
            p *= bn.node(topo[k]).cpt.rows[row][a[k]];
        }
        probs[flat] = p;
    }
    return {std::move(order), std::move(cards), std::move(probs)};
}

/// Marginal of one node, summed out of a precomputed joint.
inline std::vector<double> marginal_of(const JointDistribution &joint, const NodeId &node) {
    const auto &order = joint.order();
    auto it = std::find(order.begin(), order.end(), node);
    if (it == order.end()) {
        throw Error("unknown node '" + node.name + "'");
    }
    const auto k = static_cast<std::size_t>(it - order.begin());
    std::vector<double> out(joint.cardinalities()[k], 0.0);
    for (std::size_t flat = 0; flat < joint.size(); ++flat) {
        out[joint.assignment(flat)[k]] += joint.probabilities()[flat];
    }
    return out;
}

inline std::vector<double> exact_marginal(const BayesianNetwork &bn, const NodeId &node) {
    if (!bn.find(node)) {
        throw Error("unknown node '" + node.name + "'");
    }
    return marginal_of(joint_distribution(bn), node);
}

/// Marginals of every node, in document order.
inline std::vector<std::vector<double>> exact_marginals(const BayesianNetwork &bn) {
    const auto joint = joint_distribution(bn);
    std::vector<std::vector<double>> out;
    for (const auto &spec : bn.nodes()) {
        out.push_back(marginal_of(joint, spec.id));
    }
    return out;
}

} // namespace qbn
