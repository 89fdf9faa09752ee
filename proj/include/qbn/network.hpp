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
 * @file network.hpp
 * Discrete Bayesian network model: nodes, conditional probability tables,
 * structural validation and deterministic topological ordering.
 *
 * Conventions used throughout the library:
 *  - state index 0 is the first label listed for a node;
 *  - a parent configuration is a tuple of parent state indices ordered as
 *    the node's parent list, flattened row-major (last parent varies
 *    fastest) into a row index of the node's table.
 */
#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qbn/error.hpp"

namespace qbn {

/// Absolute tolerance on CPT row sums.
inline constexpr double kRowSumTolerance = 1e-9;

/// Name of a network node.
struct NodeId {
    std::string name;

    NodeId() = default;
    NodeId(std::string n) : name(std::move(n)) {}
    NodeId(const char *n) : name(n) {}

    [[nodiscard]] const std::string &str() const noexcept { return name; }
    auto operator<=>(const NodeId &) const = default;
};

/// One probability row per parent configuration, row-major over parents.
struct ConditionalTable {
    std::vector<std::vector<double>> rows;

    bool operator==(const ConditionalTable &) const = default;
};

struct NodeSpec {
    NodeId id;
    std::vector<std::string> states;
    std::vector<NodeId> parents;
    ConditionalTable cpt;

    [[nodiscard]] std::size_t num_states() const noexcept { return states.size(); }
    [[nodiscard]] bool is_root() const noexcept { return parents.empty(); }
    bool operator==(const NodeSpec &) const = default;
};

/// Number of rows implied by parent cardinalities (1 for a root).
inline std::size_t configuration_count(std::span<const std::size_t> cards) {
    std::size_t n = 1;
    for (auto c : cards) {
        n *= c;
    }
    return n;
}

/// Row index of a parent configuration (last parent fastest).
inline std::size_t configuration_index(std::span<const std::size_t> config,
                                       std::span<const std::size_t> cards) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < cards.size(); ++k) {
        idx = idx * cards[k] + config[k];
    }
    return idx;
}

/// Inverse of configuration_index.
inline std::vector<std::size_t>
configuration_at(std::size_t row, std::span<const std::size_t> cards) {
    std::vector<std::size_t> config(cards.size());
    for (std::size_t k = cards.size(); k-- > 0;) {
        config[k] = row % cards[k];
        row /= cards[k];
    }
    return config;
}

/**
 * A discrete Bayesian network. Construction never throws for content
 * problems so that validate() can report all of them at once; callers that
 * need a usable network go through parse_network or check validate() first.
 */
class BayesianNetwork {
  public:
    BayesianNetwork() = default;
    explicit BayesianNetwork(std::vector<NodeSpec> nodes) : nodes_(std::move(nodes)) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            index_.try_emplace(nodes_[i].id.name, i);
        }
    }

    [[nodiscard]] const std::vector<NodeSpec> &nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

    [[nodiscard]] std::optional<std::size_t> find(const NodeId &id) const {
        auto it = index_.find(id.name);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] std::size_t index_of(const NodeId &id) const {
        auto idx = find(id);
        if (!idx) {
            throw Error("unknown node '" + id.name + "'");
        }
        return *idx;
    }

    [[nodiscard]] const NodeSpec &node(const NodeId &id) const { return nodes_[index_of(id)]; }
    [[nodiscard]] const NodeSpec &node(std::size_t i) const { return nodes_.at(i); }

    /// Parent node indices of node i, in parent-list order. Unknown parents
    /// are skipped (validate reports them).
    [[nodiscard]] std::vector<std::size_t> parent_indices(std::size_t i) const {
        std::vector<std::size_t> out;
        for (const auto &p : nodes_.at(i).parents) {
            if (auto idx = find(p)) {
                out.push_back(*idx);
            }
        }
        return out;
    }

    /// State counts of node i's parents, in parent-list order.
    [[nodiscard]] std::vector<std::size_t> parent_cardinalities(std::size_t i) const {
        std::vector<std::size_t> out;
        for (auto p : parent_indices(i)) {
            out.push_back(nodes_[p].num_states());
        }
        return out;
    }

    bool operator==(const BayesianNetwork &o) const { return nodes_ == o.nodes_; }

  private:
    std::vector<NodeSpec> nodes_;
    std::unordered_map<std::string, std::size_t> index_;
};

enum class ViolationKind {
    EmptyName,
    DuplicateName,
    TooFewStates,
    DuplicateState,
    UnknownParent,
    DuplicateParent,
    SelfParent,
    Cycle,
    RowCount,
    RowDimension,
    ProbabilityRange,
    RowSum,
};

struct Violation {
    ViolationKind kind;
    std::string node;
    std::string message;
};

namespace detail {

// Kahn's algorithm; ready nodes are taken smallest document index first.
// Returns the order found; it is shorter than size() iff there is a cycle.
inline std::vector<std::size_t> kahn_order(const BayesianNetwork &bn) {
    const std::size_t n = bn.size();
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::set<std::size_t> seen;
        for (auto p : bn.parent_indices(i)) {
            if (!seen.insert(p).second) {
                continue;
            }
            children[p].push_back(i);
            ++indegree[i];
        }
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] == 0) {
            ready.push(i);
        }
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        auto i = ready.top();
        ready.pop();
        order.push_back(i);
        for (auto c : children[i]) {
            if (--indegree[c] == 0) {
                ready.push(c);
            }
        }
    }
    return order;
}

} // namespace detail

/// Every violated invariant of `bn`; an empty result means the network is
/// valid.
inline std::vector<Violation> validate(const BayesianNetwork &bn) {
    std::vector<Violation> out;
    auto report = [&out](ViolationKind k, const std::string &node, std::string msg) {
        out.push_back({k, node, std::move(msg)});
    };

    std::set<std::string> names;
    for (const auto &spec : bn.nodes()) {
        const auto &name = spec.id.name;
        if (name.empty()) {
            report(ViolationKind::EmptyName, name, "node name is empty");
        }
        if (!names.insert(name).second) {
            report(ViolationKind::DuplicateName, name, "duplicate node name '" + name + "'");
        }
        if (spec.states.size() < 2) {
            report(ViolationKind::TooFewStates, name,
                   "node '" + name + "' has " + std::to_string(spec.states.size()) +
                       " states; at least 2 are required");
        }
        std::set<std::string> labels;
        for (const auto &s : spec.states) {
            if (!labels.insert(s).second) {
                report(ViolationKind::DuplicateState, name,
                       "node '" + name + "' repeats state label '" + s + "'");
            }
        }
        std::set<std::string> parents;
        bool parents_ok = true;
        for (const auto &p : spec.parents) {
            if (p.name == name) {
                report(ViolationKind::SelfParent, name, "node '" + name + "' lists itself as a parent");
                parents_ok = false;
            } else if (!bn.find(p)) {
                report(ViolationKind::UnknownParent, name,
                       "node '" + name + "' references unknown parent '" + p.name + "'");
                parents_ok = false;
            }
            if (!parents.insert(p.name).second) {
                report(ViolationKind::DuplicateParent, name,
                       "node '" + name + "' lists parent '" + p.name + "' twice");
                parents_ok = false;
            }
        }

        const auto &rows = spec.cpt.rows;
        if (parents_ok) {
            std::vector<std::size_t> cards;
            for (const auto &p : spec.parents) {
                cards.push_back(bn.node(p).num_states());
            }
            const auto expected = configuration_count(cards);
            if (rows.size() != expected) {
                report(ViolationKind::RowCount, name,
                       "node '" + name + "' has " + std::to_string(rows.size()) +
                           " CPT rows; expected " + std::to_string(expected));
            }
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto &row = rows[r];
            const auto where = "node '" + name + "' row " + std::to_string(r);
            if (row.size() != spec.states.size()) {
                report(ViolationKind::RowDimension, name,
                       where + " has " + std::to_string(row.size()) + " entries; expected " +
                           std::to_string(spec.states.size()));
            }
            double sum = 0.0;
            bool in_range = true;
            for (double p : row) {
                if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
                    in_range = false;
                }
                sum += p;
            }
            if (!in_range) {
                report(ViolationKind::ProbabilityRange, name,
                       where + " has an entry outside [0, 1]");
            } else if (std::abs(sum - 1.0) > kRowSumTolerance) {
                report(ViolationKind::RowSum, name,
                       where + " sums to " + std::to_string(sum) + ", not 1");
            }
        }
    }

    if (detail::kahn_order(bn).size() != bn.size()) {
        report(ViolationKind::Cycle, "", "parent relation contains a cycle");
    }
    return out;
}

inline bool is_valid(const BayesianNetwork &bn) { return validate(bn).empty(); }

/// Node indices in topological order, ties broken by document order.
inline std::vector<std::size_t> topological_indices(const BayesianNetwork &bn) {
    auto order = detail::kahn_order(bn);
    if (order.size() != bn.size()) {
        throw ValidationError("cycle detected in parent relation",
                              {"parent relation contains a cycle"});
    }
    return order;
}

/// Parents-first node order, ties broken by document order.
inline std::vector<NodeId> topological_order(const BayesianNetwork &bn) {
    std::vector<NodeId> out;
    for (auto i : topological_indices(bn)) {
        out.push_back(bn.node(i).id);
    }
    return out;
}

/// Throws ValidationError listing every violation, if any.
inline void require_valid(const BayesianNetwork &bn) {
    auto violations = validate(bn);
    if (violations.empty()) {
        return;
    }
    std::vector<std::string> msgs;
    std::string what = "invalid Bayesian network:";
    for (const auto &v : violations) {
        msgs.push_back(v.message);
        what += "\n  " + v.message;
    }
    throw ValidationError(what, std::move(msgs));
}

} // namespace qbn
