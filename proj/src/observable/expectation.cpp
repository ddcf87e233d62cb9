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

#include "fockgrad/expectation.hpp"

#include <string>

#include "fockgrad/error.hpp"

namespace fockgrad {

StateVector output_state(const ParamCircuit &c, std::span<const double> values,
                         const FockState &input, std::size_t cap) {
    FOCKGRAD_REQUIRE(input.modes() == c.modes(),
                     "input state and circuit mode counts differ");
    const auto basis = enumerate_basis(input.modes(), input.photons(), cap);
    return apply_unitary(mode_unitary(c, values), input, basis);
}

double evaluate(const ParamCircuit &c, std::span<const double> values,
                const FockState &input, const Observable &obs) {
    return expectation(obs, output_state(c, values, input));
}

double Postselected::value() const {
    if (herald_probability < kHeraldProbabilityFloor) {
        throw DegeneratePostselectionError(
            "herald probability " + std::to_string(herald_probability) +
            " is below the degeneracy floor");
    }
    return numerator / herald_probability;
}

Postselected postselected_parts(const ParamCircuit &c,
                                std::span<const double> values,
                                const FockState &input,
                                const Observable &target,
                                const Projector &herald) {
    FOCKGRAD_REQUIRE(herald.is_pattern(), "the herald must be a Fock pattern");
    StateVector psi = output_state(c, values, input);
    const auto &basis = *psi.basis;
    for (std::size_t s = 0; s < basis.dimension(); ++s) {
        if (!herald.matches(basis[s])) {
            psi.amplitudes(static_cast<Eigen::Index>(s)) = 0.0;
        }
    }
    Postselected out;
    out.herald_probability = psi.norm_squared();
    out.numerator = expectation(target, psi);
    return out;
}

double postselected_expectation(const ParamCircuit &c,
                                std::span<const double> values,
                                const FockState &input,
                                const Observable &target,
                                const Projector &herald) {
    return postselected_parts(c, values, input, target, herald).value();
}

ExpectationFn::ExpectationFn(ParamCircuit circuit, FockState input,
                             const Observable &obs, std::vector<double> values,
                             std::size_t slot)
    : c_(std::move(circuit)), input_(std::move(input)),
      basis_(enumerate_basis(input_.modes(), input_.photons())),
      obs_(obs, basis_), values_(std::move(values)), slot_(slot),
      chain_(fockgrad::chain_factor(c_, slot)) {
    FOCKGRAD_REQUIRE(values_.size() == c_.num_params(),
                     "parameter vector length does not match the circuit");
    FOCKGRAD_REQUIRE(input_.modes() == c_.modes(),
                     "input state and circuit mode counts differ");
}

CVector ExpectationFn::state_at(double x) const {
    std::vector<double> v = values_;
    v[slot_] = x;
    return apply_unitary(mode_unitary(c_, v), input_, basis_).amplitudes;
}

double ExpectationFn::operator()(double x) const {
    return obs_.expectation(state_at(x));
}

double ExpectationFn::at(std::span<const double> values) const {
    return obs_.expectation(
        apply_unitary(mode_unitary(c_, values), input_, basis_).amplitudes);
}

Eigen::VectorXd ExpectationFn::probabilities(double x) const {
    return state_at(x).cwiseAbs2();
}

} // namespace fockgrad
