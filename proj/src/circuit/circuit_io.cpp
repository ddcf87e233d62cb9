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

#include "fockgrad/circuit_io.hpp"

#include "fockgrad/error.hpp"

namespace fockgrad {

using nlohmann::json;

namespace {

json param_to_json(const Param &p, const ParamCircuit &c) {
    if (p.slot) {
        return c.param_names()[*p.slot];
    }
    return p.value;
}

Param param_from_json(const json &j, const ParamCircuit &c) {
    if (j.is_string()) {
        try {
            return Param::trainable(c.param_index(j.get<std::string>()));
        } catch (const std::out_of_range &) {
            throw ConfigError("gate references undeclared parameter '" +
                              j.get<std::string>() + "'");
        }
    }
    if (j.is_number()) {
        return Param::frozen(j.get<double>());
    }
    throw ConfigError("gate parameter must be a name or a number");
}

json matrix_to_json(const CMatrix &m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rr = json::array();
        json ii = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return json{{"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json &j, std::size_t k) {
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    const auto n = static_cast<Eigen::Index>(k);
    if (re.size() != k || im.size() != k) {
        throw ConfigError("fixed gate matrix has the wrong number of rows");
    }
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto &rr = re.at(static_cast<std::size_t>(r));
        const auto &ii = im.at(static_cast<std::size_t>(r));
        if (rr.size() != k || ii.size() != k) {
            throw ConfigError("fixed gate matrix has the wrong number of columns");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = Complex(rr.at(static_cast<std::size_t>(c)).get<double>(),
                              ii.at(static_cast<std::size_t>(c)).get<double>());
        }
    }
    return m;
}

} // namespace

json circuit_to_json(const ParamCircuit &c) {
    json gates = json::array();
    for (const Gate &gate : c.gates()) {
        json g;
        g["modes"] = gate_modes(gate);
        if (const auto *p = std::get_if<Phaseshifter>(&gate)) {
            g["type"] = "phaseshifter";
            g["params"] = json{{"phase", param_to_json(p->phase, c)}};
        } else if (const auto *b = std::get_if<Beamsplitter>(&gate)) {
            g["type"] = "beamsplitter";
            g["params"] = json{{"theta", param_to_json(b->theta, c)},
                               {"phi", param_to_json(b->phi, c)}};
        } else {
            const auto &f = std::get<FixedGate>(gate);
            g["type"] = "fixed";
            g["value"] = matrix_to_json(f.matrix);
        }
        gates.push_back(std::move(g));
    }
    return json{{"schema", kCircuitSchema},
                {"modes", c.modes()},
                {"scheme", to_string(c.scheme())},
                {"params", c.param_names()},
                {"gates", std::move(gates)}};
}

ParamCircuit circuit_from_json(const json &doc) {
    try {
        if (doc.contains("schema") &&
            doc.at("schema").get<std::string>() != kCircuitSchema) {
            throw ConfigError("unsupported circuit schema '" +
                              doc.at("schema").get<std::string>() + "'");
        }
        const auto modes = doc.at("modes").get<std::size_t>();
        const Scheme scheme =
            scheme_from_string(doc.value("scheme", std::string("custom")));
        if (!doc.contains("gates")) {
            if (scheme == Scheme::Custom) {
                throw ConfigError("custom circuit without a gate list");
            }
            return build_scheme(scheme, modes);
        }
        ParamCircuit c(modes, scheme);
        for (const auto &name : doc.value("params", json::array())) {
            c.add_parameter(name.get<std::string>());
        }
        for (const auto &g : doc.at("gates")) {
            const auto type = g.at("type").get<std::string>();
            const auto gm = g.at("modes").get<std::vector<std::size_t>>();
            if (type == "phaseshifter") {
                if (gm.size() != 1) {
                    throw ConfigError("phaseshifter needs exactly one mode");
                }
                c.phaseshifter(gm[0],
                               param_from_json(g.at("params").at("phase"), c));
            } else if (type == "beamsplitter") {
                if (gm.size() != 2) {
                    throw ConfigError("beamsplitter needs exactly two modes");
                }
                const auto &p = g.at("params");
                c.beamsplitter(gm[0], gm[1], param_from_json(p.at("theta"), c),
                               param_from_json(p.at("phi"), c));
            } else if (type == "fixed") {
                c.fixed(gm, matrix_from_json(g.at("value"), gm.size()));
            } else {
                throw ConfigError("unknown gate type '" + type + "'");
            }
        }
        c.validate();
        return c;
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed circuit document: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("invalid circuit: ") + e.what());
    }
}

} // namespace fockgrad
