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
 * @file simulator.hpp
 * Dense statevector execution and seeded shot sampling.
 *
 * Measurement is modelled by sampling the Born distribution of the final
 * state over the measured qubits; one statevector pass serves any number of
 * shots. The generator is std::mt19937_64, whose output sequence is fixed by
 * the C++ standard, and doubles are formed from its top 53 bits so counts
 * are reproducible across platforms.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qbn/circuit.hpp"
#include "qbn/error.hpp"
#include "qbn/network.hpp"

namespace qbn {

using complex_t = std::complex<double>;
using Matrix2 = std::array<complex_t, 4>; // row-major

inline constexpr std::size_t kMaxSimulatedQubits = 30;
inline constexpr const char *kGeneratorName = "mt19937_64";

/// The 2x2 operator a gate applies to its target when all controls are |1>.
inline Matrix2 target_matrix(const Gate &g) {
    auto ry = [](double theta) -> Matrix2 {
        const double c = std::cos(theta / 2);
        const double s = std::sin(theta / 2);
        return {c, -s, s, c};
    };
    switch (g.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::RY:
    case GateKind::CRY:
    case GateKind::MCRY:
        return ry(g.params.at(0));
    case GateKind::RZ:
        return {1.0, 0.0, 0.0, std::polar(1.0, g.params.at(0))};
    case GateKind::U3: {
        const double theta = g.params.at(0);
        const double phi = g.params.at(1);
        const double lambda = g.params.at(2);
        const double c = std::cos(theta / 2);
        const double s = std::sin(theta / 2);
        return {c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
    }
    case GateKind::MEASURE:
        break;
    }
    return {1.0, 0.0, 0.0, 1.0};
}

class StateVector {
  public:
    explicit StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits > kMaxSimulatedQubits) {
            throw CapacityError("statevector: " + std::to_string(num_qubits) +
                                " qubits exceed the limit of " +
                                std::to_string(kMaxSimulatedQubits));
        }
        amps_.assign(std::size_t{1} << num_qubits, complex_t{0.0, 0.0});
        amps_[0] = 1.0;
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<complex_t> &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::vector<complex_t> &amplitudes() noexcept { return amps_; }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    /// Applies one gate in place. MEASURE is a no-op here.
    void apply(const Gate &g) {
        if (g.kind == GateKind::MEASURE) {
            return;
        }
        if (g.target >= num_qubits_) {
            throw StructuralError("statevector: target out of range");
        }
        std::size_t cmask = 0;
        for (auto c : g.controls) {
            if (c >= num_qubits_) {
                throw StructuralError("statevector: control out of range");
            }
            cmask |= std::size_t{1} << c;
        }
        const auto m = target_matrix(g);
        const std::size_t tbit = std::size_t{1} << g.target;
        const std::size_t dim = amps_.size();
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & tbit) != 0 || (i & cmask) != cmask) {
                continue;
            }
            const std::size_t j = i | tbit;
            const complex_t a0 = amps_[i];
            const complex_t a1 = amps_[j];
            amps_[i] = m[0] * a0 + m[1] * a1;
            amps_[j] = m[2] * a0 + m[3] * a1;
        }
    }

  private:
    std::size_t num_qubits_;
    std::vector<complex_t> amps_;
};

/// Final state of `circuit` from |0...0>, ignoring measurements.
inline StateVector statevector(const Circuit &circuit) {
    StateVector sv(circuit.num_qubits());
    for (const auto &g : circuit.gates()) {
        sv.apply(g);
    }
    return sv;
}

/**
 * Probability distribution over a subset of qubits. Index bit k of `p`
 * corresponds to qubits[k]; qubits are kept in ascending order so that
 * bitstring() prints the highest qubit leftmost.
 */
struct Distribution {
    std::vector<std::size_t> qubits;
    std::vector<double> p;

    [[nodiscard]] std::string bitstring(std::size_t index) const {
        std::string s(qubits.size(), '0');
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            if ((index >> k) & 1U) {
                s[qubits.size() - 1 - k] = '1';
            }
        }
        return s;
    }

    [[nodiscard]] std::map<std::string, double> by_bitstring() const {
        std::map<std::string, double> out;
        for (std::size_t i = 0; i < p.size(); ++i) {
            out[bitstring(i)] = p[i];
        }
        return out;
    }
};

/// Born probabilities of the `keep` qubits, summing out every other qubit.
inline Distribution probabilities(const StateVector &sv, std::vector<std::size_t> keep) {
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
        throw Error("probabilities: duplicate qubit index");
    }
    if (!keep.empty() && keep.back() >= sv.num_qubits()) {
        throw Error("probabilities: qubit index out of range");
    }
    Distribution d{keep, std::vector<double>(std::size_t{1} << keep.size(), 0.0)};
    const auto &amps = sv.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < keep.size(); ++k) {
            idx |= ((i >> keep[k]) & 1U) << k;
        }
        d.p[idx] += std::norm(amps[i]);
    }
    return d;
}

/// Measured-outcome histogram. Bitstrings cover the whole classical
/// register with c[width - 1] leftmost.
struct ShotCounts {
    std::size_t width = 0;
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total_shots = 0;

    [[nodiscard]] double frequency(const std::string &bits) const {
        auto it = counts.find(bits);
        return it == counts.end() ? 0.0
                                  : static_cast<double>(it->second) /
                                        static_cast<double>(total_shots);
    }
};

namespace detail {

inline std::string clbit_string(std::size_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t k = 0; k < width; ++k) {
        if ((value >> k) & 1U) {
            s[width - 1 - k] = '1';
        }
    }
    return s;
}

inline double unit_interval(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Born distribution of the classical register implied by the circuit's
/// MEASURE gates (index bit k = c[k]).
inline std::vector<double> outcome_distribution(const Circuit &circuit, const StateVector &sv) {
    std::vector<std::pair<std::size_t, std::size_t>> measured; // (qubit, clbit)
    for (const auto &g : circuit.gates()) {
        if (g.kind == GateKind::MEASURE) {
            measured.emplace_back(g.target, g.clbit);
        }
    }
    if (measured.empty()) {
        throw Error("sample: circuit has no MEASURE gates");
    }
    if (circuit.num_clbits() >= 8 * sizeof(std::size_t)) {
        throw CapacityError("sample: classical register too wide");
    }
    std::vector<double> dist(std::size_t{1} << circuit.num_clbits(), 0.0);
    const auto &amps = sv.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t value = 0;
        for (auto [q, c] : measured) {
            if ((i >> q) & 1U) {
                value |= std::size_t{1} << c;
            }
        }
        dist[value] += std::norm(amps[i]);
    }
    return dist;
}

/// Draws `shots` outcomes from `dist` with a generator seeded by `seed`.
inline ShotCounts sample_outcomes(std::span<const double> dist, std::size_t width,
                                  std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw Error("sample: shots must be at least 1");
    }
    std::vector<double> cumulative(dist.size());
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist[i];
        cumulative[i] = acc;
        if (dist[i] > 0.0) {
            last_nonzero = i;
        }
    }
    std::vector<std::uint64_t> hist(dist.size(), 0);
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = detail::unit_interval(rng) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        auto idx = static_cast<std::size_t>(it - cumulative.begin());
        ++hist[std::min(idx, last_nonzero)];
    }
    ShotCounts out;
    out.width = width;
    out.total_shots = shots;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        if (hist[i] > 0) {
            out.counts[detail::clbit_string(i, width)] = hist[i];
        }
    }
    return out;
}

inline ShotCounts sample(const Circuit &circuit, std::uint64_t shots, std::uint64_t seed) {
    const auto sv = statevector(circuit);
    const auto dist = outcome_distribution(circuit, sv);
    return sample_outcomes(dist, circuit.num_clbits(), shots, seed);
}

/// Classical bits holding a node's register, most significant first.
struct RegisterMap {
    NodeId node;
    std::vector<std::size_t> clbits;
    std::size_t num_states = 0;
};

struct NodeMarginal {
    NodeId node;
    std::vector<double> probs;
    double padding_mass = 0.0; ///< mass on register values >= num_states
};

/// Register maps for every node of `bn` (document order) from the circuit's
/// labels and MEASURE gates.
inline std::vector<RegisterMap> measurement_map(const Circuit &circuit,
                                                const BayesianNetwork &bn) {
    std::map<std::size_t, std::size_t> clbit_of;
    for (const auto &g : circuit.gates()) {
        if (g.kind == GateKind::MEASURE) {
            clbit_of[g.target] = g.clbit;
        }
    }
    std::vector<RegisterMap> out;
    for (const auto &spec : bn.nodes()) {
        RegisterMap m{spec.id, {}, spec.num_states()};
        const auto reg = circuit.register_of(spec.id);
        if (reg.empty()) {
            throw Error("measurement_map: node '" + spec.id.name + "' has no register");
        }
        for (auto q : reg) {
            auto it = clbit_of.find(q);
            if (it == clbit_of.end()) {
                throw Error("measurement_map: q[" + std::to_string(q) + "] of node '" +
                            spec.id.name + "' is not measured");
            }
            m.clbits.push_back(it->second);
        }
        out.push_back(std::move(m));
    }
    return out;
}

/// Per-node marginals from a distribution over classical-register values.
inline std::vector<NodeMarginal> marginals_from_outcomes(std::span<const double> dist,
                                                         std::size_t width,
                                                         std::span<const RegisterMap> mapping) {
    std::vector<NodeMarginal> out;
    for (const auto &m : mapping) {
        for (auto c : m.clbits) {
            if (c >= width) {
                throw Error("marginals: node '" + m.node.name + "' maps to c[" +
                            std::to_string(c) + "] outside a " + std::to_string(width) +
                            "-bit register");
            }
        }
        if (m.num_states > (std::size_t{1} << m.clbits.size())) {
            throw Error("marginals: node '" + m.node.name + "' has more states than its register");
        }
        NodeMarginal nm{m.node, std::vector<double>(m.num_states, 0.0), 0.0};
        for (std::size_t v = 0; v < dist.size(); ++v) {
            if (dist[v] == 0.0) {
                continue;
            }
            std::size_t state = 0;
            for (auto c : m.clbits) {
                state = (state << 1) | ((v >> c) & 1U);
            }
            if (state < m.num_states) {
                nm.probs[state] += dist[v];
            } else {
                nm.padding_mass += dist[v];
            }
        }
        out.push_back(std::move(nm));
    }
    return out;
}

/// Per-node marginals P(node = state) = (matching shots) / total_shots.
inline std::vector<NodeMarginal> marginals(const ShotCounts &counts,
                                           std::span<const RegisterMap> mapping) {
    if (counts.width >= 8 * sizeof(std::size_t)) {
        throw CapacityError("marginals: classical register too wide");
    }
    std::vector<double> dist(std::size_t{1} << counts.width, 0.0);
    for (const auto &[bits, n] : counts.counts) {
        if (bits.size() != counts.width) {
            throw Error("marginals: bitstring width does not match the register");
        }
        std::size_t v = 0;
        for (char ch : bits) {
            v = (v << 1) | (ch == '1' ? 1U : 0U);
        }
        dist[v] += static_cast<double>(n) / static_cast<double>(counts.total_shots);
    }
    return marginals_from_outcomes(dist, counts.width, mapping);
}

/// Noise-free node marginals straight from the final statevector.
inline std::vector<NodeMarginal> exact_circuit_marginals(const Circuit &circuit,
                                                         const BayesianNetwork &bn) {
    const auto sv = statevector(circuit);
    const auto dist = outcome_distribution(circuit, sv);
    const auto mapping = measurement_map(circuit, bn);
    return marginals_from_outcomes(dist, circuit.num_clbits(), mapping);
}

} // namespace qbn
