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
 * @file fixtures.hpp
 * Checked-in example networks with their reference marginals.
 */
#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qbn/document.hpp"
#include "qbn/error.hpp"
#include "qbn/network.hpp"

#ifndef QBN_FIXTURE_DIR
#define QBN_FIXTURE_DIR "fixtures"
#endif

namespace qbn {

inline constexpr std::array<std::string_view, 5> kFixtureIds = {
    "bn3", "oil4", "liquidity10", "bankruptcy9", "bankruptcy_b_ch"};

enum class TranscriptionStatus { Complete, FigureDependent };

struct ExpectedValue {
    std::string state;
    double p = 0.0;
    std::string source; ///< "printed", "derived", ...
};

struct ExpectedMarginal {
    NodeId node;
    std::vector<ExpectedValue> values;
};

struct Fixture {
    std::string id;
    std::string title;
    std::string provenance;
    TranscriptionStatus status = TranscriptionStatus::Complete;
    double tolerance = 0.002;
    BayesianNetwork network;
    std::vector<ExpectedMarginal> expected;

    [[nodiscard]] bool complete() const { return status == TranscriptionStatus::Complete; }
};

inline std::string fixture_path(std::string_view id, const std::string &dir = QBN_FIXTURE_DIR) {
    return dir + "/" + std::string(id) + ".json";
}

inline Fixture fixture_from_json(const nlohmann::ordered_json &doc) {
    Fixture f;
    f.network = network_from_json(doc);
    require_valid(f.network);
    if (!doc.contains("fixture")) {
        throw SchemaError("fixture: missing \"fixture\" header");
    }
    const auto &h = doc.at("fixture");
    try {
        f.id = h.at("id").get<std::string>();
        f.title = h.value("title", "");
        f.provenance = h.value("provenance", "");
        f.tolerance = h.value("tolerance", 0.002);
        const auto status = h.at("transcription_status").get<std::string>();
        if (status == "complete") {
            f.status = TranscriptionStatus::Complete;
        } else if (status == "figure-dependent") {
            f.status = TranscriptionStatus::FigureDependent;
        } else {
            throw SchemaError("fixture: unknown transcription_status '" + status + "'");
        }
        for (const auto &[name, values] : h.at("expected_marginals").items()) {
            const auto &spec = f.network.node(NodeId{name});
            ExpectedMarginal em{spec.id, {}};
            for (const auto &v : values) {
                ExpectedValue ev{v.at("state").get<std::string>(), v.at("p").get<double>(),
                                 v.value("source", "")};
                if (std::find(spec.states.begin(), spec.states.end(), ev.state) ==
                    spec.states.end()) {
                    throw SchemaError("fixture: '" + ev.state + "' is not a state of '" + name +
                                      "'");
                }
                em.values.push_back(std::move(ev));
            }
            f.expected.push_back(std::move(em));
        }
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("fixture header: ") + e.what());
    }
    return f;
}

/// Loads and validates fixture `id` from `dir`.
inline Fixture load_fixture(std::string_view id, const std::string &dir = QBN_FIXTURE_DIR) {
    const auto path = fixture_path(id, dir);
    return fixture_from_json(parse_json_text(read_text_file(path)));
}

} // namespace qbn
