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
 * @file qasm.hpp
 * OpenQASM 2.0 export. Angles are printed with 12 significant digits.
 */
#pragma once

#include <cstdio>
#include <string>

#include "qbn/circuit.hpp"
#include "qbn/error.hpp"

namespace qbn {

inline std::string format_angle(double v) {
    if (v == 0.0) {
        v = 0.0; // no "-0"
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// OpenQASM 2.0 text of `c`. MCRY gates must be lowered first.
inline std::string export_qasm(const Circuit &c) {
    auto q = [](std::size_t i) { return "q[" + std::to_string(i) + "]"; };
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(c.num_qubits()) + "];\n";
    if (c.num_clbits() > 0) {
        out += "creg c[" + std::to_string(c.num_clbits()) + "];\n";
    }
    for (const auto &g : c.gates()) {
        switch (g.kind) {
        case GateKind::X:
            out += "x " + q(g.target) + ";\n";
            break;
        case GateKind::RY:
            out += "ry(" + format_angle(g.params[0]) + ") " + q(g.target) + ";\n";
            break;
        case GateKind::RZ:
            // phase gate diag(1, e^{i lambda})
            out += "u1(" + format_angle(g.params[0]) + ") " + q(g.target) + ";\n";
            break;
        case GateKind::U3:
            out += "u3(" + format_angle(g.params[0]) + "," + format_angle(g.params[1]) + "," +
                   format_angle(g.params[2]) + ") " + q(g.target) + ";\n";
            break;
        case GateKind::CX:
            out += "cx " + q(g.controls[0]) + "," + q(g.target) + ";\n";
            break;
        case GateKind::CCX:
            out += "ccx " + q(g.controls[0]) + "," + q(g.controls[1]) + "," + q(g.target) + ";\n";
            break;
        case GateKind::CRY:
            out += "cry(" + format_angle(g.params[0]) + ") " + q(g.controls[0]) + "," +
                   q(g.target) + ";\n";
            break;
        case GateKind::MCRY:
            throw Error("export_qasm: MCRY must be lowered before export");
        case GateKind::MEASURE:
            out += "measure " + q(g.target) + " -> c[" + std::to_string(g.clbit) + "];\n";
            break;
        }
    }
    return out;
}

} // namespace qbn
