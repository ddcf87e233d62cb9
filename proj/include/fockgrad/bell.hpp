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
 * Heralded dual-rail Bell-state generation on six modes.
 *
 * Four photons enter modes 1-4, a herald of one photon in each of modes 2
 * and 3 is post-selected, and the qubits live on modes (0, 1) and (4, 5)
 * with |0>_L = |10> and |1>_L = |01>.
 */
#pragma once

#include <span>
#include <vector>

#include "fockgrad/expectation.hpp"

namespace fockgrad {

struct BellSetup {
    ParamCircuit circuit{6};
    FockState input;
    Projector herald;
    Observable target{Projector::pattern({})};
    std::vector<double> optimum;
};

[[nodiscard]] BellSetup bell_setup();

/// <Phi+| Pi rho Pi |Phi+> and <Pi> at @p values.
[[nodiscard]] Postselected bell_parts(const BellSetup &setup,
                                      std::span<const double> values);

struct FidelityDerivative {
    double fidelity = 0.0;
    double herald_probability = 0.0;
    double derivative = 0.0;
};

/**
 * @brief dF/d theta_slot by the quotient rule, with numerator and herald
 * probability each differentiated by a k = 1 shift rule with @p frequencies.
 * @throws DegeneratePostselectionError when the herald probability is
 *         below kHeraldProbabilityFloor.
 */
[[nodiscard]] FidelityDerivative
fidelity_derivative(const BellSetup &setup, std::span<const double> values,
                    std::size_t slot, int frequencies);

} // namespace fockgrad
