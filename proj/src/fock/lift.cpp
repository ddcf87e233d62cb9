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

#include "fockgrad/lift.hpp"

#include <cmath>

#include "fockgrad/error.hpp"
#include "fockgrad/permanent.hpp"

namespace fockgrad {

namespace {

// Below this many output states the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelThreshold = 32;

/// Amplitudes <s|U|in> for a fixed input, with the input columns gathered once.
class ColumnKernel {
  public:
    ColumnKernel(const ModeUnitary &u, const FockState &in) {
        const auto cols = in.expanded_modes();
        const auto n = static_cast<Eigen::Index>(cols.size());
        cols_ = CMatrix(static_cast<Eigen::Index>(u.modes()), n);
        for (Eigen::Index c = 0; c < n; ++c) {
            cols_.col(c) = u.matrix().col(static_cast<Eigen::Index>(cols[c]));
        }
        in_factorials_ = in.factorial_product();
        photons_ = in.photons();
    }

    Complex operator()(const FockState &out, CMatrix &scratch) const {
        if (out.photons() != photons_) {
            return {0.0, 0.0};
        }
        const auto n = static_cast<Eigen::Index>(photons_);
        scratch.resize(n, n);
        Eigen::Index r = 0;
        for (std::size_t i = 0; i < out.modes(); ++i) {
            for (int rep = 0; rep < out[i]; ++rep) {
                scratch.row(r++) = cols_.row(static_cast<Eigen::Index>(i));
            }
        }
        return permanent(scratch) /
               std::sqrt(in_factorials_ * out.factorial_product());
    }

  private:
    CMatrix cols_;
    double in_factorials_ = 1.0;
    int photons_ = 0;
};

void check_sector(const ModeUnitary &u, const FockState &in,
                  const FockBasis &basis) {
    FOCKGRAD_REQUIRE(u.modes() == basis.modes(),
                     "unitary and basis mode counts differ");
    FOCKGRAD_REQUIRE(in.modes() == basis.modes(),
                     "input state and basis mode counts differ");
    FOCKGRAD_REQUIRE(in.photons() == basis.photons(),
                     "input state is outside the basis sector");
}

void fill_column(const ColumnKernel &kernel, const FockBasis &basis,
                 CVector &column, bool parallel) {
    const auto d = static_cast<std::ptrdiff_t>(basis.dimension());
#pragma omp parallel if (parallel && basis.dimension() >= kParallelThreshold)
    {
        CMatrix scratch;
#pragma omp for schedule(static)
        for (std::ptrdiff_t s = 0; s < d; ++s) {
            column(s) = kernel(basis[static_cast<std::size_t>(s)], scratch);
        }
    }
}

StateVector column_impl(const ModeUnitary &u, const FockState &in,
                        const BasisPtr &basis, bool parallel) {
    check_sector(u, in, *basis);
    StateVector out{basis, CVector(static_cast<Eigen::Index>(
                               basis->dimension()))};
    fill_column(ColumnKernel(u, in), *basis, out.amplitudes, parallel);
    return out;
}

FockOperator lift_impl(const ModeUnitary &u, const BasisPtr &basis,
                       bool parallel) {
    FOCKGRAD_REQUIRE(u.modes() == basis->modes(),
                     "unitary and basis mode counts differ");
    const auto d = static_cast<Eigen::Index>(basis->dimension());
    FockOperator op{basis, CMatrix(d, d)};
    for (Eigen::Index t = 0; t < d; ++t) {
        CVector column(d);
        fill_column(ColumnKernel(u, (*basis)[static_cast<std::size_t>(t)]),
                    *basis, column, parallel);
        op.matrix.col(t) = column;
    }
    return op;
}

} // namespace

Complex StateVector::amplitude(const FockState &s) const {
    if (auto i = basis->find(s)) {
        return amplitudes(static_cast<Eigen::Index>(*i));
    }
    return {0.0, 0.0};
}

StateVector StateVector::basis_state(const FockState &s, std::size_t cap) {
    return basis_state(enumerate_basis(s.modes(), s.photons(), cap), s);
}

StateVector StateVector::basis_state(BasisPtr basis, const FockState &s) {
    const auto i = basis->index(s);
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(basis->dimension()));
    amps(static_cast<Eigen::Index>(i)) = 1.0;
    return StateVector{std::move(basis), std::move(amps)};
}

Complex transition_amplitude(const ModeUnitary &u, const FockState &out,
                             const FockState &in) {
    FOCKGRAD_REQUIRE(out.modes() == u.modes() && in.modes() == u.modes(),
                     "state and unitary mode counts differ");
    if (out.photons() != in.photons()) {
        return {0.0, 0.0};
    }
    CMatrix scratch;
    return ColumnKernel(u, in)(out, scratch);
}

FockOperator lift_unitary(const ModeUnitary &u, const BasisPtr &basis) {
    return lift_impl(u, basis, true);
}

StateVector apply_unitary(const ModeUnitary &u, const FockState &in,
                          const BasisPtr &basis) {
    return column_impl(u, in, basis, true);
}

StateVector apply_unitary(const ModeUnitary &u, const StateVector &psi) {
    const auto d = static_cast<Eigen::Index>(psi.basis->dimension());
    StateVector out{psi.basis, CVector::Zero(d)};
    for (Eigen::Index t = 0; t < d; ++t) {
        const Complex a = psi.amplitudes(t);
        if (a == Complex{}) {
            continue;
        }
        out.amplitudes +=
            a * apply_unitary(u, (*psi.basis)[static_cast<std::size_t>(t)],
                              psi.basis)
                    .amplitudes;
    }
    return out;
}

std::map<FockState, double> output_distribution(const ModeUnitary &u,
                                                const FockState &in,
                                                std::size_t cap) {
    const auto basis = enumerate_basis(in.modes(), in.photons(), cap);
    const StateVector psi = apply_unitary(u, in, basis);
    std::map<FockState, double> probs;
    for (std::size_t s = 0; s < basis->dimension(); ++s) {
        probs.emplace((*basis)[s],
                      std::norm(psi.amplitudes(static_cast<Eigen::Index>(s))));
    }
    return probs;
}

namespace reference {

FockOperator lift_unitary(const ModeUnitary &u, const BasisPtr &basis) {
    return lift_impl(u, basis, false);
}

StateVector apply_unitary(const ModeUnitary &u, const FockState &in,
                          const BasisPtr &basis) {
    return column_impl(u, in, basis, false);
}

} // namespace reference
} // namespace fockgrad
