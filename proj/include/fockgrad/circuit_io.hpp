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
 * JSON form of ParamCircuit, schema "fockgrad.circuit/1".
 *
 * @code{.json}
 * {"schema": "fockgrad.circuit/1", "modes": 2, "scheme": "custom",
 *  "params": ["t", "p"],
 *  "gates": [{"type": "beamsplitter", "modes": [0, 1],
 *             "params": {"theta": "t", "phi": "p"}},
 *            {"type": "phaseshifter", "modes": [1],
 *             "params": {"phase": 0.25}},
 *            {"type": "fixed", "modes": [0, 1],
 *             "value": {"re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}}]}
 * @endcode
 *
 * A parameter given as a string names a trainable slot; a number freezes
 * it. A document with a non-custom "scheme" and no "gates" expands to
 * build_scheme(scheme, modes).
 */
#pragma once

#include <nlohmann/json.hpp>

#include "fockgrad/circuit.hpp"

namespace fockgrad {

inline constexpr const char *kCircuitSchema = "fockgrad.circuit/1";

[[nodiscard]] nlohmann::json circuit_to_json(const ParamCircuit &c);

/// @throws ConfigError on malformed documents.
[[nodiscard]] ParamCircuit circuit_from_json(const nlohmann::json &doc);

} // namespace fockgrad
