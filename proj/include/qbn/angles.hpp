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
 * @file angles.hpp
 * Conversion of (conditional) probability vectors into Y-rotation angles.
 *
 * A two-outcome split (p0, p1) is realized by RY(theta) on |0> with
 * theta = 2 atan2(sqrt(p1), sqrt(p0)), so that sin^2(theta / 2) = p1 / (p0 + p1).
 * A distribution over n > 2 states uses ceil(log2 n) qubits: state j maps to
 * the binary expansion of j with the first register qubit as the most
 * significant bit, and the distribution is factored into a binary tree of
 * conditional splits, one rotation per tree node.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qbn/error.hpp"
#include "qbn/network.hpp"

namespace qbn {

/// Number of qubits needed to hold `n_states` basis states.
inline std::size_t qubit_width(std::size_t n_states) {
    if (n_states < 2) {
        throw Error("a variable needs at least 2 states, got " + std::to_string(n_states));
    }
    std::size_t m = 0;
    while ((std::size_t{1} << m) < n_states) {
        ++m;
    }
    return m;
}

/// Angle of the RY rotation whose |1> probability is p1 / (p0 + p1).
inline double rotation_angle(double p0, double p1) {
    if (!(p0 >= 0.0) || !(p1 >= 0.0)) {
        throw Error("rotation_angle: probabilities must be non-negative");
    }
    if (p0 == 0.0 && p1 == 0.0) {
        throw Error("rotation_angle: degenerate branch (both probabilities are zero)");
    }
    return 2.0 * std::atan2(std::sqrt(p1), std::sqrt(p0));
}

struct ConfiguredAngle {
    std::vector<std::size_t> config; ///< parent state indices
    double angle;
};

/// One angle per CPT row of a two-state node, in row order.
inline std::vector<ConfiguredAngle> conditional_angles(const BayesianNetwork &bn,
                                                       const NodeSpec &node) {
    if (node.num_states() != 2) {
        throw Error("conditional_angles: node '" + node.id.name + "' does not have 2 states");
    }
    const auto cards = bn.parent_cardinalities(bn.index_of(node.id));
    std::vector<ConfiguredAngle> out;
    for (std::size_t r = 0; r < node.cpt.rows.size(); ++r) {
        const auto &row = node.cpt.rows[r];
        out.push_back({configuration_at(r, cards), rotation_angle(row.at(0), row.at(1))});
    }
    return out;
}

/**
 * Binary tree of conditional Y-rotation angles on a register of depth()
 * qubits. Level d holds 2^d angles; the angle at (d, path) rotates register
 * qubit d given that qubits 0..d-1 hold the bits of `path` (qubit 0 is the
 * most significant bit of path).
 */
class AngleTree {
  public:
    AngleTree(std::size_t num_states, std::vector<std::vector<double>> levels)
        : num_states_(num_states), levels_(std::move(levels)) {}

    [[nodiscard]] std::size_t depth() const noexcept { return levels_.size(); }
    [[nodiscard]] std::size_t num_states() const noexcept { return num_states_; }
    [[nodiscard]] double angle(std::size_t level, std::size_t path) const {
        return levels_.at(level).at(path);
    }
    [[nodiscard]] const std::vector<std::vector<double>> &levels() const noexcept {
        return levels_;
    }

  private:
    std::size_t num_states_;
    std::vector<std::vector<double>> levels_;
};

/**
 * Factor `probs` into an AngleTree. The vector is zero-padded to 2^m entries;
 * each tree node splits the mass of its subtree between the 0- and 1-halves.
 * Subtrees with no mass get angle 0.
 */
inline AngleTree decompose_distribution(std::span<const double> probs) {
    const auto m = qubit_width(probs.size());
    double total = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw Error("decompose_distribution: probabilities must be finite and non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kRowSumTolerance) {
        throw Error("decompose_distribution: probabilities sum to " + std::to_string(total) +
                    ", not 1");
    }

    // mass[d][prefix]: total probability of basis states whose top d bits
    // equal prefix. mass[m] is the padded vector itself.
    std::vector<std::vector<double>> mass(m + 1);
    mass[m].assign(std::size_t{1} << m, 0.0);
    std::copy(probs.begin(), probs.end(), mass[m].begin());
    for (std::size_t d = m; d-- > 0;) {
        mass[d].resize(std::size_t{1} << d);
        for (std::size_t prefix = 0; prefix < mass[d].size(); ++prefix) {
            mass[d][prefix] = mass[d + 1][2 * prefix] + mass[d + 1][2 * prefix + 1];
        }
    }

    std::vector<std::vector<double>> levels(m);
    for (std::size_t d = 0; d < m; ++d) {
        levels[d].resize(std::size_t{1} << d);
        for (std::size_t path = 0; path < levels[d].size(); ++path) {
            const double p0 = mass[d + 1][2 * path];
            const double p1 = mass[d + 1][2 * path + 1];
            levels[d][path] = (p0 == 0.0 && p1 == 0.0) ? 0.0 : rotation_angle(p0, p1);
        }
    }
    return {probs.size(), std::move(levels)};
}

} // namespace qbn
