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
 * Exact expectation values of parametrized circuits.
 */
#pragma once

#include <span>
#include <vector>

#include "fockgrad/circuit.hpp"
#include "fockgrad/lift.hpp"
#include "fockgrad/observable.hpp"

namespace fockgrad {

/// Heralds with probability below this are treated as impossible.
inline constexpr double kHeraldProbabilityFloor = 1e-12;

/// U(values)|input> on the sector of @p input.
[[nodiscard]] StateVector output_state(const ParamCircuit &c,
                                       std::span<const double> values,
                                       const FockState &input,
                                       std::size_t cap = kDefaultBasisCap);

/// <input| U^dag O U |input>.
[[nodiscard]] double evaluate(const ParamCircuit &c,
                              std::span<const double> values,
                              const FockState &input, const Observable &obs);

/// Numerator <Pi T Pi> and denominator <Pi> of a heralded expectation.
struct Postselected {
    double numerator = 0.0;
    double herald_probability = 0.0;

    /// numerator / herald_probability; throws DegeneratePostselectionError
    /// below kHeraldProbabilityFloor.
    [[nodiscard]] double value() const;
};

[[nodiscard]] Postselected postselected_parts(const ParamCircuit &c,
                                              std::span<const double> values,
                                              const FockState &input,
                                              const Observable &target,
                                              const Projector &herald);

/// <T> on the heralded state Pi|psi> / ||Pi|psi>||.
[[nodiscard]] double postselected_expectation(const ParamCircuit &c,
                                              std::span<const double> values,
                                              const FockState &input,
                                              const Observable &target,
                                              const Projector &herald);

/**
 * @brief f(x) = <O> with one slot set to x and the others held fixed.
 *
 * The basis and the sector-restricted observable are built once.
 */
class ExpectationFn {
  public:
    ExpectationFn(ParamCircuit circuit, FockState input, const Observable &obs,
                  std::vector<double> values, std::size_t slot);

    [[nodiscard]] double operator()(double x) const;
    /// Full parameter vector, ignoring the stored slot.
    [[nodiscard]] double at(std::span<const double> values) const;
    /// Output probabilities in basis order with the slot at @p x.
    [[nodiscard]] Eigen::VectorXd probabilities(double x) const;

    [[nodiscard]] const ParamCircuit &circuit() const noexcept { return c_; }
    [[nodiscard]] const FockState &input() const noexcept { return input_; }
    [[nodiscard]] const BasisPtr &basis() const noexcept { return basis_; }
    [[nodiscard]] const SectorObservable &observable() const noexcept {
        return obs_;
    }
    [[nodiscard]] std::size_t slot() const noexcept { return slot_; }
    [[nodiscard]] double base_value() const { return values_[slot_]; }
    [[nodiscard]] const std::vector<double> &values() const noexcept {
        return values_;
    }
    [[nodiscard]] double chain_factor() const noexcept { return chain_; }

  private:
    [[nodiscard]] CVector state_at(double x) const;

    ParamCircuit c_;
    FockState input_;
    BasisPtr basis_;
    SectorObservable obs_;
    std::vector<double> values_;
    std::size_t slot_;
    double chain_;
};

} // namespace fockgrad
