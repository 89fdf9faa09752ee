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
 * @file document.hpp
 * Reading and writing the JSON network document:
 *
 *   {"nodes": [{"name": "C", "states": ["0", "1"], "parents": ["A", "B"],
 *               "cpt": [{"given": ["0", "0"], "p": [0.15, 0.85]}, ...]}]}
 *
 * CPT rows are keyed by parent state labels, so their order in the file is
 * free. Fixture files may add a top-level "fixture" object and a per-row
 * "source" string; both are ignored here.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qbn/error.hpp"
#include "qbn/network.hpp"

namespace qbn {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline std::string line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void require_keys(const ordered_json &obj, const std::string &where,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto &item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw SchemaError(where + ": unexpected key '" + item.key() + "'");
        }
    }
}

inline std::vector<std::string> string_list(const ordered_json &obj, const char *key,
                                            const std::string &where) {
    if (!obj.contains(key)) {
        throw SchemaError(where + ": missing \"" + key + "\"");
    }
    const auto &arr = obj.at(key);
    if (!arr.is_array()) {
        throw SchemaError(where + ": \"" + key + "\" must be a list");
    }
    std::vector<std::string> out;
    for (const auto &v : arr) {
        if (!v.is_string()) {
            throw SchemaError(where + ": \"" + key + "\" entries must be strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

inline std::string join(const std::vector<std::string> &parts) {
    std::string s = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        s += (i ? ", " : "") + parts[i];
    }
    return s + "]";
}

} // namespace detail

/// Parses JSON text into a (not yet validated) network. Throws SyntaxError or
/// SchemaError.
inline BayesianNetwork network_from_json(const ordered_json &doc) {
    if (!doc.is_object()) {
        throw SchemaError("document root must be an object");
    }
    detail::require_keys(doc, "document", {"nodes", "fixture"});
    if (!doc.contains("nodes") || !doc.at("nodes").is_array()) {
        throw SchemaError("document: missing \"nodes\" list");
    }

    struct RawNode {
        std::string name;
        std::vector<std::string> states;
        std::vector<std::string> parents;
        std::vector<std::pair<std::vector<std::string>, std::vector<double>>> rows;
    };
    std::vector<RawNode> raw;
    for (const auto &n : doc.at("nodes")) {
        const auto where = "node #" + std::to_string(raw.size());
        if (!n.is_object()) {
            throw SchemaError(where + ": must be an object");
        }
        detail::require_keys(n, where, {"name", "states", "parents", "cpt"});
        RawNode r;
        if (!n.contains("name") || !n.at("name").is_string()) {
            throw SchemaError(where + ": missing string \"name\"");
        }
        r.name = n.at("name").get<std::string>();
        const auto nwhere = "node '" + r.name + "'";
        r.states = detail::string_list(n, "states", nwhere);
        if (n.contains("parents")) {
            r.parents = detail::string_list(n, "parents", nwhere);
        }
        if (!n.contains("cpt") || !n.at("cpt").is_array()) {
            throw SchemaError(nwhere + ": missing \"cpt\" list");
        }
        for (const auto &row : n.at("cpt")) {
            if (!row.is_object()) {
                throw SchemaError(nwhere + ": CPT rows must be objects");
            }
            detail::require_keys(row, nwhere + " CPT row", {"given", "p", "source"});
            auto given = row.contains("given") ? detail::string_list(row, "given", nwhere)
                                               : std::vector<std::string>{};
            if (!row.contains("p") || !row.at("p").is_array()) {
                throw SchemaError(nwhere + ": CPT row missing \"p\" list");
            }
            std::vector<double> p;
            for (const auto &v : row.at("p")) {
                if (!v.is_number()) {
                    throw SchemaError(nwhere + ": probabilities must be numbers");
                }
                p.push_back(v.get<double>());
            }
            r.rows.emplace_back(std::move(given), std::move(p));
        }
        raw.push_back(std::move(r));
    }

    std::map<std::string, const RawNode *> by_name;
    for (const auto &r : raw) {
        by_name.try_emplace(r.name, &r);
    }

    std::vector<NodeSpec> specs;
    for (const auto &r : raw) {
        NodeSpec spec;
        spec.id = NodeId{r.name};
        spec.states = r.states;
        for (const auto &p : r.parents) {
            spec.parents.emplace_back(p);
        }
        const auto nwhere = "node '" + r.name + "'";

        // Rows can only be keyed when every parent resolves exactly once;
        // otherwise keep file order and let validate() report the parents.
        bool resolvable = true;
        std::vector<std::size_t> cards;
        for (std::size_t k = 0; k < r.parents.size(); ++k) {
            auto it = by_name.find(r.parents[k]);
            bool dup = std::count(r.parents.begin(), r.parents.end(), r.parents[k]) > 1;
            if (it == by_name.end() || dup || r.parents[k] == r.name) {
                resolvable = false;
                break;
            }
            cards.push_back(it->second->states.size());
        }
        if (!resolvable) {
            for (const auto &row : r.rows) {
                spec.cpt.rows.push_back(row.second);
            }
            specs.push_back(std::move(spec));
            continue;
        }

        const auto count = configuration_count(cards);
        std::vector<std::vector<double>> rows(count);
        std::vector<bool> filled(count, false);
        for (const auto &[given, p] : r.rows) {
            if (given.size() != r.parents.size()) {
                throw SchemaError(nwhere + ": CPT row " + detail::join(given) + " names " +
                                  std::to_string(given.size()) + " parent states; expected " +
                                  std::to_string(r.parents.size()));
            }
            std::vector<std::size_t> config;
            for (std::size_t k = 0; k < given.size(); ++k) {
                const auto &labels = by_name.at(r.parents[k])->states;
                auto it = std::find(labels.begin(), labels.end(), given[k]);
                if (it == labels.end()) {
                    throw SchemaError(nwhere + ": '" + given[k] + "' is not a state of parent '" +
                                      r.parents[k] + "'");
                }
                config.push_back(static_cast<std::size_t>(it - labels.begin()));
            }
            auto idx = configuration_index(config, cards);
            if (filled[idx]) {
                throw SchemaError(nwhere + ": duplicate CPT row for " + detail::join(given));
            }
            filled[idx] = true;
            rows[idx] = p;
        }
        for (std::size_t idx = 0; idx < count; ++idx) {
            if (!filled[idx]) {
                auto config = configuration_at(idx, cards);
                std::vector<std::string> labels;
                for (std::size_t k = 0; k < config.size(); ++k) {
                    labels.push_back(by_name.at(r.parents[k])->states[config[k]]);
                }
                throw SchemaError(nwhere + ": missing CPT row for " + detail::join(labels));
            }
        }
        spec.cpt.rows = std::move(rows);
        specs.push_back(std::move(spec));
    }
    return BayesianNetwork(std::move(specs));
}

inline ordered_json parse_json_text(std::string_view text) {
    try {
        return ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        const auto offset = e.byte > 0 ? e.byte - 1 : 0;
        throw SyntaxError("syntax error at " + detail::line_column(text, offset) + ": " + e.what(),
                          offset);
    }
}

/// Parses and validates a BN document. Node order is preserved.
inline BayesianNetwork parse_network(std::string_view text) {
    auto bn = network_from_json(parse_json_text(text));
    require_valid(bn);
    return bn;
}

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline BayesianNetwork load_network(const std::string &path) {
    return parse_network(read_text_file(path));
}

inline ordered_json network_to_json(const BayesianNetwork &bn) {
    ordered_json nodes = ordered_json::array();
    for (std::size_t i = 0; i < bn.size(); ++i) {
        const auto &spec = bn.node(i);
        ordered_json n;
        n["name"] = spec.id.name;
        n["states"] = spec.states;
        ordered_json parents = ordered_json::array();
        for (const auto &p : spec.parents) {
            parents.push_back(p.name);
        }
        n["parents"] = parents;
        const auto pidx = bn.parent_indices(i);
        const auto cards = bn.parent_cardinalities(i);
        ordered_json cpt = ordered_json::array();
        for (std::size_t r = 0; r < spec.cpt.rows.size(); ++r) {
            ordered_json row;
            ordered_json given = ordered_json::array();
            auto config = configuration_at(r, cards);
            for (std::size_t k = 0; k < config.size(); ++k) {
                given.push_back(bn.node(pidx[k]).states[config[k]]);
            }
            row["given"] = given;
            row["p"] = spec.cpt.rows[r];
            cpt.push_back(row);
        }
        n["cpt"] = cpt;
        nodes.push_back(n);
    }
    ordered_json doc;
    doc["nodes"] = nodes;
    return doc;
}

/// Serializes a valid network; parse_network(emit_network(bn)) == bn.
inline std::string emit_network(const BayesianNetwork &bn) {
    return network_to_json(bn).dump(2) + "\n";
}

} // namespace qbn
