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
 * Observables on Fock sectors.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/SparseCore>

#include "fockgrad/fock_state.hpp"
#include "fockgrad/lift.hpp"
#include "fockgrad/linalg.hpp"

namespace fockgrad {

/// Explicit eigenvalue per Fock state; unlisted states have eigenvalue 0.
struct FockDiagonal {
    std::unordered_map<FockState, double, FockStateHash> eigenvalues;
    double default_value = 0.0;

    [[nodiscard]] double eigenvalue(const FockState &s) const;
};

/// One term c * prod_i n_i^{p_i}.
struct Monomial {
    std::vector<int> powers;
    double coefficient = 1.0;

    [[nodiscard]] int degree() const;
};

/// Real polynomial in the number operators; diagonal in the Fock basis.
struct NumberPolynomial {
    std::vector<Monomial> terms;

    [[nodiscard]] double eigenvalue(const FockState &s) const;
    [[nodiscard]] int degree() const;

    /// The single term n_mode on @p modes modes.
    static NumberPolynomial number(std::size_t modes, std::size_t mode);
};

/// f prod_i (a_i^dagger)^{q_i} a_i^{r_i} + h.c.
struct NormalOrderedPair {
    std::vector<int> q;
    std::vector<int> r;
    Complex coefficient{1.0, 0.0};
};

/**
 * @brief Projector onto a Fock pattern or onto a superposition.
 *
 * A pattern fixes occupations on some modes and leaves the rest free, so
 * {nullopt, nullopt, 1, 1, nullopt, nullopt} is |11><11| on modes 2, 3
 * with identity elsewhere. A state projector is |phi><phi| for the given
 * amplitudes, normalized on construction.
 */
struct Projector {
    using Pattern = std::vector<std::optional<int>>;
    using Terms = std::vector<std::pair<FockState, Complex>>;

    std::variant<Pattern, Terms> target;

    static Projector pattern(Pattern p);
    static Projector state(Terms terms);

    [[nodiscard]] bool is_pattern() const {
        return std::holds_alternative<Pattern>(target);
    }
    [[nodiscard]] bool matches(const FockState &s) const;
};

class Observable {
  public:
    using Variant =
        std::variant<FockDiagonal, NumberPolynomial, NormalOrderedPair,
                     Projector>;

    Observable(FockDiagonal o) : v_(std::move(o)) {}
    Observable(NumberPolynomial o) : v_(std::move(o)) {}
    Observable(NormalOrderedPair o) : v_(std::move(o)) {}
    Observable(Projector o) : v_(std::move(o)) {}

    [[nodiscard]] const Variant &variant() const noexcept { return v_; }

    /// True when the observable is a function of the photon counts alone.
    [[nodiscard]] bool is_diagonal() const;

    /// Eigenvalue on a Fock state; diagonal observables only.
    [[nodiscard]] double eigenvalue(const FockState &s) const;

  private:
    Variant v_;
};

/// Observable restricted to one photon-number sector.
class SectorObservable {
  public:
    SectorObservable(const Observable &obs, BasisPtr basis);

    [[nodiscard]] const BasisPtr &basis() const noexcept { return basis_; }
    [[nodiscard]] bool is_diagonal() const noexcept {
        return kind_ == Kind::Diagonal;
    }
    /// Per-basis-state eigenvalues; diagonal observables only.
    [[nodiscard]] const Eigen::VectorXd &eigenvalues() const;

    /// <psi|O|psi>; throws std::logic_error on an imaginary residue > 1e-10.
    [[nodiscard]] double expectation(const CVector &psi) const;

    /// Dense d x d matrix of the restricted operator.
    [[nodiscard]] CMatrix dense() const;

  private:
    enum class Kind { Diagonal, Sparse, Rank1 };
    BasisPtr basis_;
    Kind kind_ = Kind::Diagonal;
    Eigen::VectorXd diag_;
    Eigen::SparseMatrix<Complex> sparse_;
    CVector phi_;
};

/// <psi|O|psi> for a state on any sector.
[[nodiscard]] double expectation(const Observable &obs, const StateVector &psi);

/**
 * @brief Number of positive frequencies of <O>(theta) for n photons.
 *
 * n for diagonal and projector observables, min(degree, n) for number
 * polynomials, min(max(sum q, sum r), n) for normal-ordered pairs.
 */
[[nodiscard]] int frequency_bound(const Observable &obs, int photons);

/// i.i.d. uniform eigenvalues on [lo, hi) over @p basis.
[[nodiscard]] FockDiagonal random_diagonal(const FockBasis &basis, double lo,
                                           double hi, std::uint64_t seed);

/// Stirling number of the second kind S(p, i), from the explicit sum.
[[nodiscard]] std::int64_t stirling2(int p, int i);

/// Pairs (i, S(p, i)) for i = 1..p, so n^p = sum_i S(p, i) (a^dag)^i a^i.
[[nodiscard]] std::vector<std::pair<int, std::int64_t>> number_to_normal(int p);

} // namespace fockgrad
