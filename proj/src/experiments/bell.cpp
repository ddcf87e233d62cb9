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


#include "fockgrad/bell.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fockgrad/error.hpp"
#include "fockgrad/gradient.hpp"

namespace fockgrad {

namespace {

// One tunable splitter per row, applied in order, then a frozen phase on
// its second mode.
struct Splitter {
    std::size_t a;
    std::size_t b;
    double cos2;
    bool negative_sin;
    double phase_b;
};

constexpr std::array<Splitter, 5> kLayout{{
    {0, 3, 0.5, false, 0.0},
    {1, 4, 0.5, false, 0.0},
    {2, 5, 0.5, false, 0.0},
    {1, 2, 2.0 / 3.0, true, 0.0},
    {3, 4, 2.0 / 3.0, true, std::numbers::pi},
}};

} // namespace

BellSetup bell_setup() {
    BellSetup s;
    s.input = FockState{0, 1, 1, 1, 1, 0};
    for (std::size_t k = 0; k < kLayout.size(); ++k) {
        const Splitter &g = kLayout[k];
        const Param theta = s.circuit.add_parameter("theta" + std::to_string(k + 1));
        s.circuit.beamsplitter(g.a, g.b, theta, Param::frozen(0.0));
        if (g.phase_b != 0.0) {
            s.circuit.phaseshifter(g.b, Param::frozen(g.phase_b));
        }
        const double t = std::acos(std::sqrt(g.cos2));
        s.optimum.push_back(g.negative_sin ? -t : t);
    }
    s.circuit.validate();
    s.herald = Projector::pattern(
        {std::nullopt, std::nullopt, 1, 1, std::nullopt, std::nullopt});
    const Complex amp(1.0 / std::sqrt(2.0), 0.0);
    s.target = Projector::state({{FockState{1, 0, 1, 1, 1, 0}, amp},
                                 {FockState{0, 1, 1, 1, 0, 1}, amp}});
    return s;
}

Postselected bell_parts(const BellSetup &setup, std::span<const double> values) {
    return postselected_parts(setup.circuit, values, setup.input, setup.target,
                              setup.herald);
}

FidelityDerivative fidelity_derivative(const BellSetup &setup,
                                       std::span<const double> values,
                                       std::size_t slot, int frequencies) {
    FOCKGRAD_REQUIRE(slot < values.size(), "slot index out of range");
    const Postselected at = bell_parts(setup, values);
    if (at.herald_probability < kHeraldProbabilityFloor) {
        throw DegeneratePostselectionError(
            "herald probability vanishes at the evaluation point");
    }
    const ShiftRule rule = gpsr_rule(frequencies, 1, setup.circuit.kind_of(slot));
    std::vector<double> shifted(values.begin(), values.end());
    double dn = 0.0;
    double dd = 0.0;
    for (std::size_t mu = 0; mu < rule.size(); ++mu) {
        shifted[slot] = values[slot] + rule.shifts[mu] / rule.chain_factor;
        const Postselected p = bell_parts(setup, shifted);
        dn += rule.weights[mu] * p.numerator;
        dd += rule.weights[mu] * p.herald_probability;
    }
    dn *= rule.chain_factor;
    dd *= rule.chain_factor;
    const double d = at.herald_probability;
    return {at.numerator / d, d, (dn * d - at.numerator * dd) / (d * d)};
}

} // namespace fockgrad
