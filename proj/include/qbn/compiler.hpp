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
 * @file compiler.hpp
 * Compositional compilation of a Bayesian network into a circuit, and the
 * lowering passes MCRY -> {CCX, CRY}, CRY -> {RY, CX}, CCX -> {U3, RZ, CX}.
 *
 * Nodes are encoded one at a time in topological order. A root node gets the
 * rotations of its AngleTree directly. A child node gets, for every row of
 * its table, an X on each parent-register qubit whose bit is 0 in that
 * configuration, the row's AngleTree rotations controlled on all parent
 * qubits, and the matching closing X gates.
 *
 * Qubit assignment: ancillas take the lowest indices; node registers follow
 * in topological order from the highest index down, so parents sit above
 * their children and a register's most significant qubit has the highest
 * index.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qbn/angles.hpp"
#include "qbn/circuit.hpp"
#include "qbn/error.hpp"
#include "qbn/network.hpp"

namespace qbn {

enum class LoweringLevel {
    Mcry,       ///< keep CRY / MCRY
    Elementary, ///< X, RY, CX, CCX
    Full,       ///< X, RY, RZ, U3, CX
};

inline std::string_view level_name(LoweringLevel l) {
    switch (l) {
    case LoweringLevel::Mcry:
        return "mcry";
    case LoweringLevel::Elementary:
        return "elementary";
    case LoweringLevel::Full:
        return "full";
    }
    return "?";
}

inline std::optional<LoweringLevel> parse_level(std::string_view s) {
    if (s == "mcry") {
        return LoweringLevel::Mcry;
    }
    if (s == "elementary") {
        return LoweringLevel::Elementary;
    }
    if (s == "full") {
        return LoweringLevel::Full;
    }
    return std::nullopt;
}

inline constexpr std::size_t kDefaultMaxQubits = 30;

struct CompileOptions {
    LoweringLevel level = LoweringLevel::Elementary;
    bool attach_measurements = true;
    std::size_t max_qubits = kDefaultMaxQubits;
};

/// Qubit registers of every node (document order, most significant first)
/// and the shared ancilla pool.
struct QubitLayout {
    QubitBudget budget;
    std::vector<std::vector<std::size_t>> registers;
    std::vector<std::size_t> ancillas;
};

inline QubitLayout assign_qubits(const BayesianNetwork &bn) {
    QubitLayout layout;
    layout.budget = budget(bn);
    layout.registers.resize(bn.size());
    for (std::size_t a = 0; a < layout.budget.ancilla_qubits; ++a) {
        layout.ancillas.push_back(a);
    }
    std::size_t next = layout.budget.total;
    for (auto i : topological_indices(bn)) {
        const auto width = qubit_width(bn.node(i).num_states());
        for (std::size_t b = 0; b < width; ++b) {
            layout.registers[i].push_back(--next);
        }
    }
    return layout;
}

namespace detail {

// Bits of `value` over `width` qubits, most significant first.
inline std::vector<bool> register_bits(std::size_t value, std::size_t width) {
    std::vector<bool> bits(width);
    for (std::size_t b = 0; b < width; ++b) {
        bits[b] = ((value >> (width - 1 - b)) & 1U) != 0;
    }
    return bits;
}

// Emits `tree` onto `reg`, every rotation additionally controlled by
// `outer_controls` (which the caller has already X-conjugated as needed).
inline void emit_tree(const AngleTree &tree, const std::vector<std::size_t> &reg,
                      const std::vector<std::size_t> &outer_controls, std::vector<Gate> &out) {
    for (std::size_t d = 0; d < tree.depth(); ++d) {
        for (std::size_t path = 0; path < (std::size_t{1} << d); ++path) {
            const auto bits = register_bits(path, d);
            auto controls = outer_controls;
            for (std::size_t k = 0; k < d; ++k) {
                controls.push_back(reg[k]);
            }
            for (std::size_t k = 0; k < d; ++k) {
                if (!bits[k]) {
                    out.push_back(gates::x(reg[k]));
                }
            }
            out.push_back(gates::controlled_ry(std::move(controls), reg[d], tree.angle(d, path)));
            for (std::size_t k = d; k-- > 0;) {
                if (!bits[k]) {
                    out.push_back(gates::x(reg[k]));
                }
            }
        }
    }
}

} // namespace detail

/**
 * Gates realizing the table of node `i` (root or child), before lowering.
 * Parents must already be encoded on their registers in `layout`.
 */
inline std::vector<Gate> encode_child_block(const BayesianNetwork &bn, std::size_t i,
                                            const QubitLayout &layout) {
    const auto &spec = bn.node(i);
    const auto &reg = layout.registers.at(i);
    const auto parents = bn.parent_indices(i);
    const auto cards = bn.parent_cardinalities(i);

    std::vector<std::size_t> parent_qubits;
    for (auto p : parents) {
        const auto &preg = layout.registers.at(p);
        parent_qubits.insert(parent_qubits.end(), preg.begin(), preg.end());
    }

    std::vector<Gate> out;
    for (std::size_t row = 0; row < spec.cpt.rows.size(); ++row) {
        const auto config = configuration_at(row, cards);
        std::vector<std::size_t> flips;
        for (std::size_t k = 0; k < parents.size(); ++k) {
            const auto &preg = layout.registers.at(parents[k]);
            const auto bits = detail::register_bits(config[k], preg.size());
            for (std::size_t b = 0; b < preg.size(); ++b) {
                if (!bits[b]) {
                    flips.push_back(preg[b]);
                }
            }
        }
        for (auto q : flips) {
            out.push_back(gates::x(q));
        }
        detail::emit_tree(decompose_distribution(spec.cpt.rows[row]), reg, parent_qubits, out);
        for (auto it = flips.rbegin(); it != flips.rend(); ++it) {
            out.push_back(gates::x(*it));
        }
    }
    return out;
}

/// RY(theta/2) t; CX c,t; RY(-theta/2) t; CX c,t.
inline std::vector<Gate> lower_cry(const Gate &g) {
    if (g.kind != GateKind::CRY) {
        throw Error("lower_cry: expected a CRY gate");
    }
    const auto c = g.controls.at(0);
    const auto t = g.target;
    const double theta = g.params.at(0);
    return {gates::ry(t, theta / 2), gates::cx(c, t), gates::ry(t, -theta / 2), gates::cx(c, t)};
}

/**
 * Ancilla ladder for an n-control MCRY: n - 1 CCX gates compute the AND of
 * the controls into ancillas[n - 2], a CRY fires from it, and the ladder is
 * undone in reverse, leaving the ancillas in |0>. A single-control MCRY
 * becomes a plain CRY.
 */
inline std::vector<Gate> lower_mcry(const Gate &g, std::span<const std::size_t> ancillas) {
    if (g.kind != GateKind::MCRY && g.kind != GateKind::CRY) {
        throw Error("lower_mcry: expected an MCRY gate");
    }
    const auto &c = g.controls;
    const auto n = c.size();
    if (n == 0) {
        throw StructuralError("lower_mcry: MCRY needs at least 1 control");
    }
    if (n == 1) {
        return {gates::cry(c[0], g.target, g.params.at(0))};
    }
    if (ancillas.size() < n - 1) {
        throw CapacityError("lower_mcry: " + std::to_string(n) + " controls need " +
                            std::to_string(n - 1) + " ancillas, got " +
                            std::to_string(ancillas.size()));
    }
    for (std::size_t k = 0; k < n - 1; ++k) {
        const auto a = ancillas[k];
        if (a == g.target || std::find(c.begin(), c.end(), a) != c.end()) {
            throw StructuralError("lower_mcry: ancilla q[" + std::to_string(a) +
                                  "] overlaps the gate's qubits");
        }
    }

    std::vector<Gate> ladder;
    ladder.push_back(gates::ccx(c[0], c[1], ancillas[0]));
    for (std::size_t k = 2; k < n; ++k) {
        ladder.push_back(gates::ccx(c[k], ancillas[k - 2], ancillas[k - 1]));
    }
    std::vector<Gate> out = ladder;
    out.push_back(gates::cry(ancillas[n - 2], g.target, g.params.at(0)));
    out.insert(out.end(), ladder.rbegin(), ladder.rend());
    return out;
}

/**
 * Toffoli as 6 CX and 9 single-qubit gates (H = U3(pi/2, 0, pi), T = RZ(pi/4)).
 * RZ here is the phase gate diag(1, e^{i lambda}), so the product equals CCX
 * exactly, without a global phase.
 */
inline std::vector<Gate> lower_ccx(const Gate &g) {
    if (g.kind != GateKind::CCX) {
        throw Error("lower_ccx: expected a CCX gate");
    }
    using std::numbers::pi;
    const auto a = g.controls.at(0);
    const auto b = g.controls.at(1);
    const auto t = g.target;
    auto h = [](std::size_t q) { return gates::u3(q, pi / 2, 0.0, pi); };
    auto tg = [](std::size_t q) { return gates::rz(q, pi / 4); };
    auto tdg = [](std::size_t q) { return gates::rz(q, -pi / 4); };
    return {h(t),          gates::cx(b, t), tdg(t), gates::cx(a, t), tg(t),
            gates::cx(b, t), tdg(t),        gates::cx(a, t), tg(b),  tg(t),
            h(t),          gates::cx(a, b), tg(a),  tdg(b),       gates::cx(a, b)};
}

/// Rewrites `gs` down to `level`.
inline std::vector<Gate> lower(const std::vector<Gate> &gs, LoweringLevel level,
                               std::span<const std::size_t> ancillas) {
    if (level == LoweringLevel::Mcry) {
        return gs;
    }
    std::vector<Gate> out;
    auto emit_ccx = [&](const Gate &g) {
        if (level == LoweringLevel::Full) {
            auto seq = lower_ccx(g);
            out.insert(out.end(), seq.begin(), seq.end());
        } else {
            out.push_back(g);
        }
    };
    auto emit_cry = [&](const Gate &g) {
        auto seq = lower_cry(g);
        out.insert(out.end(), seq.begin(), seq.end());
    };
    for (const auto &g : gs) {
        switch (g.kind) {
        case GateKind::MCRY:
            for (const auto &h : lower_mcry(g, ancillas)) {
                if (h.kind == GateKind::CCX) {
                    emit_ccx(h);
                } else {
                    emit_cry(h);
                }
            }
            break;
        case GateKind::CRY:
            emit_cry(g);
            break;
        case GateKind::CCX:
            emit_ccx(g);
            break;
        default:
            out.push_back(g);
        }
    }
    return out;
}

/// Compiles a valid network into a circuit at the requested lowering level.
inline Circuit compile(const BayesianNetwork &bn, const CompileOptions &opts = {}) {
    require_valid(bn);
    const auto layout = assign_qubits(bn);
    if (layout.budget.total > opts.max_qubits) {
        throw CapacityError("network needs " + std::to_string(layout.budget.total) +
                            " qubits; the limit is " + std::to_string(opts.max_qubits));
    }

    std::vector<QubitLabel> labels(layout.budget.total);
    for (std::size_t i = 0; i < bn.size(); ++i) {
        const auto &reg = layout.registers[i];
        for (std::size_t b = 0; b < reg.size(); ++b) {
            labels[reg[b]] = {QubitLabel::Role::Node, bn.node(i).id, b};
        }
    }

    Circuit circuit(layout.budget.total, opts.attach_measurements ? layout.budget.node_qubits : 0,
                    std::move(labels));
    for (auto i : topological_indices(bn)) {
        circuit.append(lower(encode_child_block(bn, i, layout), opts.level, layout.ancillas));
    }
    if (opts.attach_measurements) {
        // Node qubits occupy [ancillas, total); c[k] holds q[ancillas + k].
        const auto offset = layout.budget.ancilla_qubits;
        for (std::size_t q = offset; q < layout.budget.total; ++q) {
            circuit.append(gates::measure(q, q - offset));
        }
    }
    return circuit;
}

} // namespace qbn
