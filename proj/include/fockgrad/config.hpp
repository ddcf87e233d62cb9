// Copyright 2026 The fockgrad Authors.

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
 * @file
 * JSON forms of states, observables and value grids used by experiment
 * configs. All parse errors surface as ConfigError.
 *
 * Observables:
 *
 *     {"type": "number", "mode": 0}
 *     {"type": "number_polynomial",
 *      "terms": [{"powers": [1, 1, 0], "coefficient": 2.0}]}
 *     {"type": "normal_ordered_pair", "q": [1, 0], "r": [0, 1],
 *      "coefficient": {"re": 1.0, "im": 0.0}}
 *     {"type": "fock_diagonal", "default": 0.0,
 *      "entries": [{"state": [1, 0], "value": 2.5}]}
 *     {"type": "random_diagonal", "lo": -5, "hi": 5, "seed": 7}
 *     {"type": "projector", "pattern": [null, 1, 1, null]}
 *     {"type": "projector",
 *      "state": [{"state": [1, 0], "re": 1.0, "im": 0.0}]}
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fockgrad/observable.hpp"

namespace fockgrad {

[[nodiscard]] FockState fock_state_from_json(const nlohmann::json &j);

/**
 * @param modes, photons sector the observable is used on; random_diagonal
 *        draws one eigenvalue per basis state of that sector.
 * @param seed default for random_diagonal when the document has none.
 */
[[nodiscard]] Observable observable_from_json(const nlohmann::json &j,
                                              std::size_t modes, int photons,
                                              std::uint64_t seed);

/// Either an explicit list or {"min": a, "max": b, "points": k}.
[[nodiscard]] std::vector<double> grid_from_json(const nlohmann::json &j);

/// Either an explicit list or {"min": a, "max": b} (inclusive, step 1).
[[nodiscard]] std::vector<long long> int_range_from_json(const nlohmann::json &j);

/// Looks up @p key, rethrowing any JSON error as ConfigError.
template <typename T>
[[nodiscard]] T config_value(const nlohmann::json &doc, const std::string &key,
                             const T &fallback);

template <typename T>
[[nodiscard]] T config_require(const nlohmann::json &doc, const std::string &key);

} // namespace fockgrad

#include "fockgrad/error.hpp"

namespace fockgrad {

template <typename T>
T config_value(const nlohmann::json &doc, const std::string &key,
               const T &fallback) {
    try {
        return doc.contains(key) ? doc.at(key).get<T>() : fallback;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

template <typename T>
T config_require(const nlohmann::json &doc, const std::string &key) {
    if (!doc.contains(key)) {
        throw ConfigError("config is missing required key '" + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

} // namespace fockgrad
