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
 * @file circuit.hpp
 * Gate-level intermediate representation.
 *
 * Basis states are written |q_{n-1} ... q_0>: qubit 0 is the least
 * significant bit of an amplitude index. Multi-controlled RY (MCRY) is kept
 * as a first-class gate so circuits can be inspected before lowering.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qbn/angles.hpp"
#include "qbn/error.hpp"
#include "qbn/network.hpp"

namespace qbn {

enum class GateKind { X, RY, RZ, U3, CX, CCX, CRY, MCRY, MEASURE };

inline constexpr std::size_t kGateKindCount = 9;

inline constexpr std::array<GateKind, kGateKindCount> kAllGateKinds = {
    GateKind::X,  GateKind::RY,  GateKind::RZ,   GateKind::U3,     GateKind::CX,
    GateKind::CCX, GateKind::CRY, GateKind::MCRY, GateKind::MEASURE};

inline constexpr std::string_view gate_name(GateKind k) {
    switch (k) {
    case GateKind::X:
        return "x";
    case GateKind::RY:
        return "ry";
    case GateKind::RZ:
        return "rz";
    case GateKind::U3:
        return "u3";
    case GateKind::CX:
        return "cx";
    case GateKind::CCX:
        return "ccx";
    case GateKind::CRY:
        return "cry";
    case GateKind::MCRY:
        return "mcry";
    case GateKind::MEASURE:
        return "measure";
    }
    return "?";
}

struct Gate {
    GateKind kind;
    std::vector<double> params;        ///< radians
    std::vector<std::size_t> controls;
    std::size_t target = 0;
    std::size_t clbit = 0;             ///< MEASURE only

    bool operator==(const Gate &) const = default;
};

namespace gates {

inline Gate x(std::size_t t) { return {GateKind::X, {}, {}, t}; }
inline Gate ry(std::size_t t, double theta) { return {GateKind::RY, {theta}, {}, t}; }
inline Gate rz(std::size_t t, double lambda) { return {GateKind::RZ, {lambda}, {}, t}; }
inline Gate u3(std::size_t t, double theta, double phi, double lambda) {
    return {GateKind::U3, {theta, phi, lambda}, {}, t};
}
inline Gate cx(std::size_t c, std::size_t t) { return {GateKind::CX, {}, {c}, t}; }
inline Gate ccx(std::size_t c0, std::size_t c1, std::size_t t) {
    return {GateKind::CCX, {}, {c0, c1}, t};
}
inline Gate cry(std::size_t c, std::size_t t, double theta) {
    return {GateKind::CRY, {theta}, {c}, t};
}
inline Gate mcry(std::vector<std::size_t> controls, std::size_t t, double theta) {
    return {GateKind::MCRY, {theta}, std::move(controls), t};
}
inline Gate measure(std::size_t q, std::size_t c) { return {GateKind::MEASURE, {}, {}, q, c}; }

/// RY(theta) with `controls`: plain RY, CRY or MCRY depending on the count.
inline Gate controlled_ry(std::vector<std::size_t> controls, std::size_t t, double theta) {
    if (controls.empty()) {
        return ry(t, theta);
    }
    if (controls.size() == 1) {
        return cry(controls.front(), t, theta);
    }
    return mcry(std::move(controls), t, theta);
}

} // namespace gates

/// Role of a qubit: one bit of a node register, or an ancilla.
struct QubitLabel {
    enum class Role { Node, Ancilla };
    Role role = Role::Ancilla;
    NodeId node;          ///< Node role only
    std::size_t bit = 0;  ///< position in the node register, 0 = most significant

    bool operator==(const QubitLabel &) const = default;
};

namespace detail {

inline std::size_t expected_params(GateKind k) {
    switch (k) {
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CRY:
    case GateKind::MCRY:
        return 1;
    case GateKind::U3:
        return 3;
    default:
        return 0;
    }
}

} // namespace detail

/**
 * Ordered gate list over a fixed qubit register and classical register.
 * append() enforces the gate invariants; a circuit therefore never holds a
 * malformed gate.
 */
class Circuit {
  public:
    Circuit() = default;
    Circuit(std::size_t num_qubits, std::size_t num_clbits,
            std::vector<QubitLabel> labels = {})
        : num_qubits_(num_qubits), num_clbits_(num_clbits), labels_(std::move(labels)) {
        if (labels_.empty()) {
            labels_.resize(num_qubits_);
        }
        if (labels_.size() != num_qubits_) {
            throw StructuralError("qubit label count does not match the register size");
        }
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t num_clbits() const noexcept { return num_clbits_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept { return gates_; }
    [[nodiscard]] const std::vector<QubitLabel> &labels() const noexcept { return labels_; }
    [[nodiscard]] const QubitLabel &label(std::size_t q) const { return labels_.at(q); }

    /// Why `g` would be rejected by this circuit, or nullopt if it is fine.
    [[nodiscard]] std::optional<std::string> check(const Gate &g) const {
        const auto name = std::string(gate_name(g.kind));
        switch (g.kind) {
        case GateKind::X:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::U3:
        case GateKind::MEASURE:
            if (!g.controls.empty()) {
                return name + " takes no controls";
            }
            break;
        case GateKind::CX:
        case GateKind::CRY:
            if (g.controls.size() != 1) {
                return name + " takes exactly 1 control";
            }
            break;
        case GateKind::CCX:
            if (g.controls.size() != 2) {
                return name + " takes exactly 2 controls";
            }
            break;
        case GateKind::MCRY:
            if (g.controls.empty()) {
                return name + " needs at least 1 control";
            }
            break;
        }
        if (g.params.size() != detail::expected_params(g.kind)) {
            return name + " expects " + std::to_string(detail::expected_params(g.kind)) +
                   " parameters";
        }
        if (g.target >= num_qubits_) {
            return name + " target q[" + std::to_string(g.target) + "] is out of range";
        }
        for (std::size_t i = 0; i < g.controls.size(); ++i) {
            if (g.controls[i] >= num_qubits_) {
                return name + " control q[" + std::to_string(g.controls[i]) + "] is out of range";
            }
            if (g.controls[i] == g.target ||
                std::find(g.controls.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                          g.controls.end(), g.controls[i]) != g.controls.end()) {
                return name + " uses q[" + std::to_string(g.controls[i]) + "] twice";
            }
        }
        if (g.kind == GateKind::MEASURE) {
            if (g.clbit >= num_clbits_) {
                return "measure clbit c[" + std::to_string(g.clbit) + "] is out of range";
            }
            if (labels_[g.target].role != QubitLabel::Role::Node) {
                return "measure targets ancilla q[" + std::to_string(g.target) + "]";
            }
        }
        return std::nullopt;
    }

    Circuit &append(Gate g) {
        if (auto err = check(g)) {
            throw StructuralError(*err);
        }
        gates_.push_back(std::move(g));
        return *this;
    }

    Circuit &append(const std::vector<Gate> &gs) {
        for (const auto &g : gs) {
            append(g);
        }
        return *this;
    }

    [[nodiscard]] bool has_measurements() const {
        return std::any_of(gates_.begin(), gates_.end(),
                           [](const Gate &g) { return g.kind == GateKind::MEASURE; });
    }

    /// Node-register qubits of `node`, most significant first.
    [[nodiscard]] std::vector<std::size_t> register_of(const NodeId &node) const {
        std::vector<std::pair<std::size_t, std::size_t>> bits;
        for (std::size_t q = 0; q < num_qubits_; ++q) {
            if (labels_[q].role == QubitLabel::Role::Node && labels_[q].node == node) {
                bits.emplace_back(labels_[q].bit, q);
            }
        }
        std::sort(bits.begin(), bits.end());
        std::vector<std::size_t> out;
        for (auto [bit, q] : bits) {
            out.push_back(q);
        }
        return out;
    }

    [[nodiscard]] std::vector<std::size_t> ancillas() const {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < num_qubits_; ++q) {
            if (labels_[q].role == QubitLabel::Role::Ancilla) {
                out.push_back(q);
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<std::size_t> node_qubits() const {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < num_qubits_; ++q) {
            if (labels_[q].role == QubitLabel::Role::Node) {
                out.push_back(q);
            }
        }
        return out;
    }

  private:
    std::size_t num_qubits_ = 0;
    std::size_t num_clbits_ = 0;
    std::vector<QubitLabel> labels_;
    std::vector<Gate> gates_;
};

/// Per-kind gate counts.
class GateCensus {
  public:
    std::size_t &operator[](GateKind k) { return counts_[static_cast<std::size_t>(k)]; }
    std::size_t operator[](GateKind k) const { return counts_[static_cast<std::size_t>(k)]; }

    [[nodiscard]] std::size_t total() const {
        std::size_t n = 0;
        for (auto c : counts_) {
            n += c;
        }
        return n;
    }
    bool operator==(const GateCensus &) const = default;

  private:
    std::array<std::size_t, kGateKindCount> counts_{};
};

inline GateCensus gate_census(std::span<const Gate> gs) {
    GateCensus census;
    for (const auto &g : gs) {
        ++census[g.kind];
    }
    return census;
}

inline GateCensus gate_census(const Circuit &c) { return gate_census(c.gates()); }

struct QubitBudget {
    std::size_t node_qubits = 0;
    std::size_t ancilla_qubits = 0;
    std::size_t total = 0;
};

/// Qubits needed by the parent registers of node i.
inline std::size_t parent_register_width(const BayesianNetwork &bn, std::size_t i) {
    std::size_t w = 0;
    for (auto c : bn.parent_cardinalities(i)) {
        w += qubit_width(c);
    }
    return w;
}

/**
 * Qubit budget of a network. The deepest rotation of node i carries
 * (parent width + own width - 1) controls, and an n-control ladder needs
 * n - 1 ancillas, so ancillas = max_i(parent width + own width - 2), floored
 * at 0. Ancillas are shared between all nodes.
 */
inline QubitBudget budget(const BayesianNetwork &bn) {
    QubitBudget b;
    std::size_t max_controls = 0;
    for (std::size_t i = 0; i < bn.size(); ++i) {
        const auto own = qubit_width(bn.node(i).num_states());
        b.node_qubits += own;
        max_controls = std::max(max_controls, parent_register_width(bn, i) + own - 1);
    }
    b.ancilla_qubits = max_controls >= 2 ? max_controls - 1 : 0;
    b.total = b.node_qubits + b.ancilla_qubits;
    return b;
}

} // namespace qbn
