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

#include "fockgrad/config.hpp"

#include "fockgrad/error.hpp"

namespace fockgrad {

using nlohmann::json;

namespace {

Complex complex_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    return {j.value("re", 0.0), j.value("im", 0.0)};
}

void check_width(const std::vector<int> &v, std::size_t modes,
                 const char *what) {
    if (v.size() != modes) {
        throw ConfigError(std::string(what) + " has " + std::to_string(v.size()) +
                          " entries, expected " + std::to_string(modes));
    }
}

Observable parse_observable(const json &j, std::size_t modes, int photons,
                            std::uint64_t seed) {
    const auto type = j.at("type").get<std::string>();
    if (type == "number") {
        const auto mode = j.at("mode").get<std::size_t>();
        if (mode >= modes) {
            throw ConfigError("number observable mode is out of range");
        }
        return NumberPolynomial::number(modes, mode);
    }
    if (type == "number_polynomial") {
        NumberPolynomial poly;
        for (const auto &t : j.at("terms")) {
            Monomial mono{t.at("powers").get<std::vector<int>>(),
                          t.value("coefficient", 1.0)};
            check_width(mono.powers, modes, "monomial powers");
            poly.terms.push_back(std::move(mono));
        }
        return poly;
    }
    if (type == "normal_ordered_pair") {
        NormalOrderedPair pair{j.at("q").get<std::vector<int>>(),
                               j.at("r").get<std::vector<int>>(),
                               complex_from_json(j.value("coefficient", json(1.0)))};
        check_width(pair.q, modes, "q");
        check_width(pair.r, modes, "r");
        return pair;
    }
    if (type == "fock_diagonal") {
        FockDiagonal d;
        d.default_value = j.value("default", 0.0);
        for (const auto &e : j.value("entries", json::array())) {
            FockState s = fock_state_from_json(e.at("state"));
            if (s.modes() != modes) {
                throw ConfigError("fock_diagonal entry has the wrong mode count");
            }
            d.eigenvalues[std::move(s)] = e.at("value").get<double>();
        }
        return d;
    }
    if (type == "random_diagonal") {
        const auto basis = enumerate_basis(modes, photons);
        return random_diagonal(*basis, j.value("lo", -5.0), j.value("hi", 5.0),
                               j.value("seed", seed));
    }
    if (type == "projector") {
        if (j.contains("pattern")) {
            Projector::Pattern p;
            for (const auto &e : j.at("pattern")) {
                p.push_back(e.is_null() ? std::nullopt
                                        : std::optional<int>(e.get<int>()));
            }
            if (p.size() != modes) {
                throw ConfigError("projector pattern has the wrong mode count");
            }
            return Projector::pattern(std::move(p));
        }
        Projector::Terms terms;
        for (const auto &e : j.at("state")) {
            terms.emplace_back(fock_state_from_json(e.at("state")),
                               Complex(e.value("re", 0.0), e.value("im", 0.0)));
        }
        return Projector::state(std::move(terms));
    }
    throw ConfigError("unknown observable type '" + type + "'");
}

} // namespace

FockState fock_state_from_json(const json &j) {
    try {
        return FockState(j.get<std::vector<int>>());
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed Fock state: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("invalid Fock state: ") + e.what());
    }
}

Observable observable_from_json(const json &j, std::size_t modes, int photons,
                                std::uint64_t seed) {
    try {
        return parse_observable(j, modes, photons, seed);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed observable: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("invalid observable: ") + e.what());
    }
}

std::vector<double> grid_from_json(const json &j) {
    try {
        if (j.is_array()) {
            return j.get<std::vector<double>>();
        }
        const double lo = j.at("min").get<double>();
        const double hi = j.at("max").get<double>();
        const int k = j.at("points").get<int>();
        if (k < 1 || (k == 1 && lo != hi)) {
            throw ConfigError("grid needs at least two points for a range");
        }
        std::vector<double> out;
        for (int i = 0; i < k; ++i) {
            out.push_back(k == 1 ? lo : lo + (hi - lo) * i / (k - 1));
        }
        return out;
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed grid: ") + e.what());
    }
}

std::vector<long long> int_range_from_json(const json &j) {
    try {
        if (j.is_array()) {
            return j.get<std::vector<long long>>();
        }
        const auto lo = j.at("min").get<long long>();
        const auto hi = j.at("max").get<long long>();
        if (hi < lo) {
            throw ConfigError("integer range has max < min");
        }
        std::vector<long long> out;
        for (long long v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
        return out;
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed integer range: ") + e.what());
    }
}

} // namespace fockgrad
