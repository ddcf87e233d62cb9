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

#include "fockgrad/linalg.hpp"

#include <string>

#include "fockgrad/error.hpp"

namespace fockgrad {

double unitarity_defect(const CMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).norm();
}

ModeUnitary::ModeUnitary(CMatrix entries, double tol) : u_(std::move(entries)) {
    FOCKGRAD_REQUIRE(u_.rows() == u_.cols() && u_.rows() > 0,
                     "mode unitary must be a non-empty square matrix");
    const double defect = unitarity_defect(u_);
    FOCKGRAD_REQUIRE(defect <= tol, "matrix is not unitary (defect " +
                                        std::to_string(defect) + ")");
}

ModeUnitary ModeUnitary::identity(std::size_t modes) {
    const auto m = static_cast<Eigen::Index>(modes);
    return ModeUnitary(CMatrix::Identity(m, m), Unchecked{});
}

ModeUnitary ModeUnitary::adjoint() const {
    return ModeUnitary(u_.adjoint(), Unchecked{});
}

ModeUnitary operator*(const ModeUnitary &a, const ModeUnitary &b) {
    FOCKGRAD_REQUIRE(a.modes() == b.modes(), "mode count mismatch");
    return ModeUnitary(a.u_ * b.u_, ModeUnitary::Unchecked{});
}

ModeUnitary haar_unitary(std::size_t modes, std::mt19937_64 &rng) {
    const auto m = static_cast<Eigen::Index>(modes);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix z(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) {
            z(i, j) = Complex(gauss(rng), gauss(rng)) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is exactly Haar.
    for (Eigen::Index j = 0; j < m; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return ModeUnitary(std::move(q));
}

} // namespace fockgrad
