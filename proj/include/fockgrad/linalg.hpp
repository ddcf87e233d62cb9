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

#pragma once

#include <complex>
#include <cstddef>
#include <random>

#include <Eigen/Dense>

namespace fockgrad {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Mode-level unitarity tolerance (Frobenius norm of U U^dagger - I).
inline constexpr double kModeUnitaryTol = 1e-10;
/// Fock-level unitarity tolerance after lifting.
inline constexpr double kLiftedUnitaryTol = 1e-9;

[[nodiscard]] double unitarity_defect(const CMatrix &u);

/**
 * @brief An m x m unitary acting on the creation-operator vector,
 * a_i^dagger -> sum_j a_j^dagger u_ji.
 */
class ModeUnitary {
  public:
    /// Checks unitarity against @p tol; throws std::invalid_argument.
    explicit ModeUnitary(CMatrix entries, double tol = kModeUnitaryTol);

    static ModeUnitary identity(std::size_t modes);

    [[nodiscard]] std::size_t modes() const noexcept {
        return static_cast<std::size_t>(u_.rows());
    }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return u_; }
    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
        return u_(static_cast<Eigen::Index>(row),
                  static_cast<Eigen::Index>(col));
    }
    [[nodiscard]] ModeUnitary adjoint() const;

    friend ModeUnitary operator*(const ModeUnitary &a, const ModeUnitary &b);

  private:
    struct Unchecked {};
    ModeUnitary(CMatrix entries, Unchecked) : u_(std::move(entries)) {}
    CMatrix u_;
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
[[nodiscard]] ModeUnitary haar_unitary(std::size_t modes, std::mt19937_64 &rng);

} // namespace fockgrad
