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
 * Experiment commands behind the fockgrad CLI.
 *
 * Each command takes a JSON config and a run seed and returns named
 * tables, a JSON summary, and the config with every default filled in.
 * Commands are deterministic per (config, seed). See docs/config.md for
 * the per-command schemas.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fockgrad/report.hpp"

namespace fockgrad {

struct CommandResult {
    std::map<std::string, Table> tables;
    nlohmann::json summary;
    nlohmann::json config; // effective config, defaults included
};

/// |c_w| of <O>(phi) for a phase slot, per circuit and observable.
[[nodiscard]] CommandResult cmd_spectrum(const nlohmann::json &config,
                                         std::uint64_t seed);

/// Per-slot GPSR variants against the Richardson oracle.
[[nodiscard]] CommandResult cmd_gradcheck(const nlohmann::json &config,
                                          std::uint64_t seed);

/// Empirical estimator MSE against the shot budget, with log-log slopes.
[[nodiscard]] CommandResult cmd_mse_scaling(const nlohmann::json &config,
                                            std::uint64_t seed);

/// Sigma_red / Sigma_tot per scheme, size and occupancy.
[[nodiscard]] CommandResult cmd_savings(const nlohmann::json &config,
                                        std::uint64_t seed);

/// Heralded Bell-state fidelity derivatives around the optimum.
[[nodiscard]] CommandResult cmd_bell(const nlohmann::json &config,
                                     std::uint64_t seed);

/// Classifier training with GPSR or finite-difference circuit gradients.
[[nodiscard]] CommandResult cmd_qml(const nlohmann::json &config,
                                    std::uint64_t seed);

[[nodiscard]] const std::vector<std::string> &command_names();

/// Dispatch by CLI name; throws ConfigError for unknown commands.
[[nodiscard]] CommandResult run_command(const std::string &name,
                                        const nlohmann::json &config,
                                        std::uint64_t seed);

} // namespace fockgrad
