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

#include "fockgrad/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <Eigen/Core>

#include "fockgrad/error.hpp"

#ifndef FOCKGRAD_VERSION
#define FOCKGRAD_VERSION "unknown"
#endif

namespace fockgrad {

void Table::add(std::vector<Cell> row) {
    FOCKGRAD_REQUIRE(row.size() == header.size(),
                     "row width does not match the table header");
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string &name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw std::out_of_range("no column named '" + name + "'");
}

double Table::number(std::size_t row, const std::string &name) const {
    const Cell &c = rows.at(row).at(column(name));
    if (const auto *d = std::get_if<double>(&c)) {
        return *d;
    }
    if (const auto *i = std::get_if<long long>(&c)) {
        return static_cast<double>(*i);
    }
    throw std::invalid_argument("column '" + name + "' is not numeric");
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

namespace {

std::string field(const Cell &c) {
    if (const auto *d = std::get_if<double>(&c)) {
        return format_number(*d);
    }
    if (const auto *i = std::get_if<long long>(&c)) {
        return std::to_string(*i);
    }
    const auto &s = std::get<std::string>(c);
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + '"';
}

void append_line(std::string &out, const std::vector<Cell> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += field(cells[i]);
    }
    out += "\r\n";
}

} // namespace

std::string to_csv(const Table &table) {
    std::string out;
    append_line(out, std::vector<Cell>(table.header.begin(), table.header.end()));
    for (const auto &row : table.rows) {
        append_line(out, row);
    }
    return out;
}

void write_file_atomic(const std::filesystem::path &path,
                       const std::string &contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        os << contents;
        if (!os.flush()) {
            throw Error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

nlohmann::json version_info() {
    nlohmann::json v;
    v["fockgrad"] = FOCKGRAD_VERSION;
    v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                 std::to_string(EIGEN_MINOR_VERSION);
    v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_PATCH);
#if defined(__clang__)
    v["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    v["compiler"] = std::string("gcc ") + __VERSION__;
#else
    v["compiler"] = "unknown";
#endif
#ifdef _OPENMP
    v["openmp"] = _OPENMP;
#else
    v["openmp"] = nullptr;
#endif
    return v;
}

nlohmann::json run_manifest(const std::string &command,
                            const nlohmann::json &config, std::uint64_t seed,
                            double wall_seconds) {
    return nlohmann::json{{"command", command},
                          {"config", config},
                          {"seed", seed},
                          {"versions", version_info()},
                          {"wall_time_seconds", wall_seconds}};
}

} // namespace fockgrad
