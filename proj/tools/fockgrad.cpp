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


#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fockgrad/error.hpp"
#include "fockgrad/experiments.hpp"
#include "fockgrad/report.hpp"

namespace {

nlohmann::json read_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw fockgrad::ConfigError("cannot open config '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error &e) {
        throw fockgrad::ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

int run(const std::string &command, const std::string &config_path, std::uint64_t seed,
        const std::filesystem::path &out_dir) {
    const nlohmann::json config = read_config(config_path);
    const auto start = std::chrono::steady_clock::now();
    const fockgrad::CommandResult result = fockgrad::run_command(command, config, seed);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;

    nlohmann::json manifest =
        fockgrad::run_manifest(command, result.config, seed, wall.count());
    manifest["summary"] = result.summary;
    manifest["outputs"] = nlohmann::json::array();
    for (const auto &[name, table] : result.tables) {
        const std::string file = name + ".csv";
        fockgrad::write_file_atomic(out_dir / file, fockgrad::to_csv(table));
        manifest["outputs"].push_back(file);
    }
    fockgrad::write_file_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << command << ": wrote " << result.tables.size() << " table(s) to "
              << out_dir.string() << " in " << wall.count() << " s\n"
              << result.summary.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Parameter-shift gradients for linear optical circuits"};
    app.require_subcommand(1);

    std::string command;
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    for (const auto &name : fockgrad::command_names()) {
        CLI::App *sub = app.add_subcommand(name, "Run the " + name + " experiment");
        sub->add_option("--config", config_path, "JSON config file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "Run seed")->capture_default_str();
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return run(command, config_path, seed, out_dir);
    } catch (const fockgrad::ConfigError &e) {
        std::cerr << "fockgrad: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "fockgrad: " << e.what() << "\n";
        return 1;
    }
}
