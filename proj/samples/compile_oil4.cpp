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

// Compiles the oil-price network, prints the OpenQASM text, then compares
// the exact circuit marginals with a 10 x 8192-shot sampling experiment.

#include <cstdio>
#include <iostream>

#include "qbn/qbn.hpp"

int main() {
    const auto fx = qbn::load_fixture("oil4");
    const auto circuit = qbn::compile(fx.network);
    std::cout << qbn::export_qasm(circuit) << "\n";

    const auto exact = qbn::exact_circuit_marginals(circuit, fx.network);
    const auto report = qbn::run_experiment(circuit, fx.network, 10, 8192, 0.05, 7);
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const auto &e = report.nodes[i].states[0];
        std::printf("%-3s=0  exact %.4f  sampled %.4f  [%.4f, %.4f]\n",
                    exact[i].node.name.c_str(), exact[i].probs[0], e.mean, e.ci_low, e.ci_high);
    }
}
