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
#include <gtest/gtest.h>

#include "qbn/qbn.hpp"

namespace qbn {
namespace {

Circuit three_qubits() {
    return Circuit(3, 1,
                   {QubitLabel{QubitLabel::Role::Ancilla, {}, 0},
                    QubitLabel{QubitLabel::Role::Node, NodeId{"A"}, 0},
                    QubitLabel{QubitLabel::Role::Node, NodeId{"B"}, 0}});
}

TEST(Circuit, AcceptsWellFormedGates) {
    auto c = three_qubits();
    c.append(gates::x(0)).append(gates::ry(1, 0.3)).append(gates::cx(1, 2));
    c.append(gates::ccx(0, 1, 2)).append(gates::mcry({0, 1}, 2, 0.1));
    c.append(gates::measure(2, 0));
    EXPECT_EQ(c.gates().size(), 6U);
    EXPECT_TRUE(c.has_measurements());
}

TEST(Circuit, RejectsMalformedGates) {
    auto c = three_qubits();
    EXPECT_THROW(c.append(gates::x(3)), StructuralError);
    EXPECT_THROW(c.append(gates::cx(1, 1)), StructuralError);
    EXPECT_THROW(c.append(gates::ccx(1, 1, 2)), StructuralError);
    EXPECT_THROW(c.append(Gate{GateKind::CX, {}, {0, 1}, 2}), StructuralError);
    EXPECT_THROW(c.append(Gate{GateKind::RY, {}, {}, 0}), StructuralError);
    EXPECT_THROW(c.append(Gate{GateKind::MCRY, {0.1}, {}, 0}), StructuralError);
    EXPECT_THROW(c.append(gates::measure(0, 0)), StructuralError); // ancilla
    EXPECT_THROW(c.append(gates::measure(1, 1)), StructuralError); // clbit range
    EXPECT_TRUE(c.gates().empty());
    EXPECT_NE(c.check(gates::cx(1, 1))->find("twice"), std::string::npos);
}

TEST(Circuit, LabelCountMustMatch) {
    EXPECT_THROW(Circuit(2, 0, {QubitLabel{}}), StructuralError);
}

TEST(Circuit, RegistersAndAncillas) {
    const auto c = three_qubits();
    EXPECT_EQ(c.register_of(NodeId{"B"}), (std::vector<std::size_t>{2}));
    EXPECT_EQ(c.ancillas(), (std::vector<std::size_t>{0}));
    EXPECT_EQ(c.node_qubits(), (std::vector<std::size_t>{1, 2}));
}

TEST(Circuit, ControlledRyPicksKind) {
    EXPECT_EQ(gates::controlled_ry({}, 0, 1.0).kind, GateKind::RY);
    EXPECT_EQ(gates::controlled_ry({1}, 0, 1.0).kind, GateKind::CRY);
    EXPECT_EQ(gates::controlled_ry({1, 2}, 0, 1.0).kind, GateKind::MCRY);
}

TEST(Census, CountsPerKind) {
    auto c = three_qubits();
    c.append(gates::x(0)).append(gates::x(1)).append(gates::cx(1, 2));
    const auto census = gate_census(c);
    EXPECT_EQ(census[GateKind::X], 2U);
    EXPECT_EQ(census[GateKind::CX], 1U);
    EXPECT_EQ(census[GateKind::CCX], 0U);
    EXPECT_EQ(census.total(), 3U);
}

TEST(Budget, FixtureTotals) {
    EXPECT_EQ(budget(load_fixture("bn3").network).total, 4U);
    EXPECT_EQ(budget(load_fixture("oil4").network).total, 5U);
    EXPECT_EQ(budget(load_fixture("liquidity10").network).total, 12U);
    const auto b = budget(load_fixture("bankruptcy9").network);
    EXPECT_EQ(b.node_qubits, 15U);
    EXPECT_EQ(b.ancilla_qubits, 1U);
    EXPECT_EQ(b.total, 16U);
    EXPECT_EQ(budget(load_fixture("bankruptcy_b_ch").network).total, 4U);
}

TEST(Budget, BinaryNetworkUsesMaxParentsMinusOne) {
    std::vector<NodeSpec> specs = {{NodeId{"A"}, {"0", "1"}, {}, {{{0.5, 0.5}}}},
                                   {NodeId{"B"}, {"0", "1"}, {"A"}, {{{0.5, 0.5}, {0.5, 0.5}}}}};
    EXPECT_EQ(budget(BayesianNetwork(specs)).ancilla_qubits, 0U);
    specs.push_back({NodeId{"C"}, {"0", "1"}, {}, {{{0.5, 0.5}}}});
    specs.push_back({NodeId{"D"}, {"0", "1"}, {"A", "B", "C"},
                     {std::vector<std::vector<double>>(8, {0.5, 0.5})}});
    EXPECT_EQ(budget(BayesianNetwork(specs)).ancilla_qubits, 2U);
}

} // namespace
} // namespace qbn
