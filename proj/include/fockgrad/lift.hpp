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
 * Permanent-based Fock amplitudes and the lift U(m) -> U(d).
 *
 * The parallel kernels split work over output basis states with OpenMP.
 * Every kernel has a serial twin in fockgrad::reference with identical
 * arithmetic, so results do not depend on the thread count.
 */
#pragma once

#include <map>

#include "fockgrad/fock_state.hpp"
#include "fockgrad/linalg.hpp"

namespace fockgrad {

/// Amplitudes over a fixed-photon-number basis.
struct StateVector {
    BasisPtr basis;
    CVector amplitudes;

    [[nodiscard]] double norm_squared() const {
        return amplitudes.squaredNorm();
    }
    [[nodiscard]] Complex amplitude(const FockState &s) const;

    /// Basis vector |s> in the sector of @p s.
    static StateVector basis_state(const FockState &s,
                                   std::size_t cap = kDefaultBasisCap);
    static StateVector basis_state(BasisPtr basis, const FockState &s);
};

/// Dense d x d operator on a Fock sector.
struct FockOperator {
    BasisPtr basis;
    CMatrix matrix;
};

/**
 * @brief <out| U |in> = Per(U[out, in]) / sqrt(prod out_i! prod in_i!).
 *
 * Row i of the submatrix repeats out_i times and column j repeats in_j
 * times. Returns exactly 0 when the photon numbers differ.
 */
[[nodiscard]] Complex transition_amplitude(const ModeUnitary &u,
                                           const FockState &out,
                                           const FockState &in);

/// Full d x d lift; entry (s, t) is transition_amplitude(u, s, t).
[[nodiscard]] FockOperator lift_unitary(const ModeUnitary &u,
                                        const BasisPtr &basis);

/// One column of the lift: U|in> over @p basis.
[[nodiscard]] StateVector apply_unitary(const ModeUnitary &u,
                                        const FockState &in,
                                        const BasisPtr &basis);

/// U|psi> by linearity over the basis states of @p psi.
[[nodiscard]] StateVector apply_unitary(const ModeUnitary &u,
                                        const StateVector &psi);

/// Born probabilities of every output pattern; sums to 1.
[[nodiscard]] std::map<FockState, double>
output_distribution(const ModeUnitary &u, const FockState &in,
                    std::size_t cap = kDefaultBasisCap);

namespace reference {
[[nodiscard]] FockOperator lift_unitary(const ModeUnitary &u,
                                        const BasisPtr &basis);
[[nodiscard]] StateVector apply_unitary(const ModeUnitary &u,
                                        const FockState &in,
                                        const BasisPtr &basis);
} // namespace reference

} // namespace fockgrad
