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
 * Result tables, CSV output and run manifests.
 */
#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace fockgrad {

using Cell = std::variant<std::string, double, long long>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    /// Index of a header column; throws std::out_of_range.
    [[nodiscard]] std::size_t column(const std::string &name) const;
    [[nodiscard]] double number(std::size_t row, const std::string &name) const;
};

/// Shortest round-trip decimal form with a '.' separator.
[[nodiscard]] std::string format_number(double x);

/// RFC 4180: CRLF line ends, fields quoted when they hold , " CR or LF.
[[nodiscard]] std::string to_csv(const Table &table);

/// Writes via a temporary sibling and a rename.
void write_file_atomic(const std::filesystem::path &path,
                       const std::string &contents);

/// Library, dependency and compiler versions.
[[nodiscard]] nlohmann::json version_info();

[[nodiscard]] nlohmann::json run_manifest(const std::string &command,
                                          const nlohmann::json &config,
                                          std::uint64_t seed,
                                          double wall_seconds);

} // namespace fockgrad
