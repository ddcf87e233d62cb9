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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "fockgrad/circuit.hpp"
#include "fockgrad/error.hpp"
#include "fockgrad/fock_state.hpp"
#include "fockgrad/lift.hpp"
#include "fockgrad/permanent.hpp"

#include "test_helpers.hpp"

using namespace fockgrad;
using Catch::Approx;

TEST_CASE("FockState::construction", "[fock]") {
    SECTION("photon count") {
        FockState s{2, 0, 1};
        CHECK(s.modes() == 3);
        CHECK(s.photons() == 3);
        CHECK(s.factorial_product() == 2.0);
        CHECK(s.expanded_modes() == std::vector<std::size_t>{0, 0, 2});
    }
    SECTION("negative occupation") {
        CHECK_THROWS_AS(FockState({1, -1}), std::invalid_argument);
    }
    SECTION("equality is elementwise") {
        CHECK(FockState{1, 0} == FockState{1, 0});
        CHECK(FockState{1, 0} != FockState{0, 1});
        CHECK(to_string(FockState{1, 0, 2}) == "|1,0,2>");
    }
}

TEST_CASE("FockBasis::enumerate_basis", "[fock]") {
    SECTION("two modes, one photon") {
        auto b = enumerate_basis(2, 1);
        REQUIRE(b->dimension() == 2);
        CHECK((*b)[0] == FockState{1, 0});
        CHECK((*b)[1] == FockState{0, 1});
    }
    SECTION("dimensions") {
        CHECK(enumerate_basis(4, 4)->dimension() == 35);
        CHECK(enumerate_basis(6, 4)->dimension() == 126);
        CHECK(enumerate_basis(3, 0)->dimension() == 1);
        CHECK(basis_dimension(16, 8) == 490314);
    }
    SECTION("lexicographically decreasing order") {
        auto b = enumerate_basis(3, 2);
        CHECK((*b)[0] == FockState{2, 0, 0});
        CHECK((*b)[1] == FockState{1, 1, 0});
        for (std::size_t i = 1; i < b->dimension(); ++i) {
            CHECK((*b)[i - 1] > (*b)[i]);
        }
    }
    SECTION("index is the inverse of the list") {
        for (auto [m, n] : {std::pair{3, 3}, std::pair{5, 2}, std::pair{4, 4}}) {
            auto b = enumerate_basis(static_cast<std::size_t>(m), n);
            for (std::size_t i = 0; i < b->dimension(); ++i) {
                CHECK(b->index((*b)[i]) == i);
                CHECK((*b)[i].photons() == n);
            }
        }
        CHECK_THROWS_AS(enumerate_basis(2, 1)->index(FockState{1, 1}),
                        std::out_of_range);
    }
    SECTION("resource cap") {
        CHECK_THROWS_AS(enumerate_basis(20, 10), ResourceLimitError);
        CHECK_THROWS_AS(enumerate_basis(4, 4, 10), ResourceLimitError);
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(enumerate_basis(0, 1), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_basis(2, -1), std::invalid_argument);
    }
}

TEST_CASE("ModeUnitary::construction", "[fock]") {
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(ModeUnitary(bad), std::invalid_argument);
    std::mt19937_64 rng(3);
    auto u = haar_unitary(5, rng);
    CHECK(unitarity_defect(u.matrix()) < 1e-12);
    CHECK(unitarity_defect((u * u.adjoint()).matrix()) < 1e-12);
}

TEST_CASE("permanent", "[fock]") {
    SECTION("small examples") {
        CHECK(permanent(CMatrix(0, 0)) == Complex(1.0, 0.0));
        CHECK(std::abs(permanent(CMatrix::Identity(2, 2)) - 1.0) < 1e-15);
        CMatrix ones = CMatrix::Ones(2, 2);
        CHECK(std::abs(permanent(ones) - 2.0) < 1e-15);
        CHECK(std::abs(permanent(CMatrix::Ones(4, 4)) - 24.0) < 1e-12);
        CHECK(std::abs(permanent(balanced_splitter())) < 1e-15);
    }
    SECTION("matches the permutation sum") {
        std::mt19937_64 rng(11);
        for (int k = 0; k <= 6; ++k) {
            for (int trial = 0; trial < 5; ++trial) {
                CMatrix m = test::random_complex(k, k, rng);
                const Complex fast = permanent(m);
                const Complex slow = reference::permanent_naive(m);
                CHECK(std::abs(fast - slow) < 1e-10 * std::max(1.0, std::abs(slow)));
            }
        }
    }
    SECTION("non-square") {
        CHECK_THROWS_AS(permanent(CMatrix(2, 3)), std::invalid_argument);
    }
}

TEST_CASE("transition_amplitude", "[fock]") {
    SECTION("identity") {
        auto id = ModeUnitary::identity(3);
        CHECK(transition_amplitude(id, {1, 0, 1}, {1, 0, 1}) == Complex(1.0, 0.0));
        CHECK(transition_amplitude(id, {0, 1, 1}, {1, 0, 1}) == Complex(0.0, 0.0));
    }
    SECTION("Hong-Ou-Mandel") {
        ModeUnitary bs(balanced_splitter());
        CHECK(std::abs(transition_amplitude(bs, {1, 1}, {1, 1})) < 1e-15);
        CHECK(std::norm(transition_amplitude(bs, {2, 0}, {1, 1})) == Approx(0.5));
    }
    SECTION("phase eigenrelation") {
        const double phi = 0.731;
        CMatrix p = CMatrix::Identity(2, 2);
        p(0, 0) = std::exp(Complex(0.0, phi));
        ModeUnitary u(p);
        for (int k = 0; k <= 4; ++k) {
            const Complex a = transition_amplitude(u, {k, 4 - k}, {k, 4 - k});
            CHECK(std::abs(a - std::exp(Complex(0.0, k * phi))) < 1e-12);
        }
    }
    SECTION("different photon numbers give exactly zero") {
        std::mt19937_64 rng(5);
        auto u = haar_unitary(3, rng);
        CHECK(transition_amplitude(u, {1, 1, 0}, {1, 0, 0}) == Complex(0.0, 0.0));
    }
    SECTION("single photon lift equals the mode unitary") {
        std::mt19937_64 rng(9);
        auto u = haar_unitary(4, rng);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                std::vector<int> out(4, 0), in(4, 0);
                out[i] = 1;
                in[j] = 1;
                CHECK(std::abs(transition_amplitude(u, FockState(out), FockState(in)) -
                               u(i, j)) < 1e-15);
            }
        }
    }
}

TEST_CASE("lift_unitary", "[fock]") {
    std::mt19937_64 rng(21);
    SECTION("identity lifts to identity") {
        auto b = enumerate_basis(3, 3);
        auto op = lift_unitary(ModeUnitary::identity(3), b);
        CHECK((op.matrix - CMatrix::Identity(10, 10)).norm() < 1e-14);
    }
    SECTION("phaseshifter lifts to a diagonal") {
        auto b = enumerate_basis(3, 2);
        const double phi = 1.3;
        CMatrix p = CMatrix::Identity(3, 3);
        p(1, 1) = std::exp(Complex(0.0, phi));
        auto op = lift_unitary(ModeUnitary(p), b);
        for (std::size_t s = 0; s < b->dimension(); ++s) {
            for (std::size_t t = 0; t < b->dimension(); ++t) {
                const auto si = static_cast<Eigen::Index>(s);
                const auto ti = static_cast<Eigen::Index>(t);
                const Complex want =
                    s == t ? std::exp(Complex(0.0, (*b)[s][1] * phi)) : Complex{};
                CHECK(std::abs(op.matrix(si, ti) - want) < 1e-14);
            }
        }
    }
    SECTION("homomorphism, adjoint and unitarity") {
        for (int trial = 0; trial < 10; ++trial) {
            for (auto [m, n] : {std::pair{3, 2}, std::pair{4, 3}, std::pair{2, 3}}) {
                auto b = enumerate_basis(static_cast<std::size_t>(m), n);
                auto u = haar_unitary(static_cast<std::size_t>(m), rng);
                auto v = haar_unitary(static_cast<std::size_t>(m), rng);
                auto lu = lift_unitary(u, b).matrix;
                auto lv = lift_unitary(v, b).matrix;
                CHECK((lift_unitary(u * v, b).matrix - lu * lv).norm() < 1e-9);
                CHECK((lift_unitary(u.adjoint(), b).matrix - lu.adjoint()).norm() <
                      1e-9);
                CHECK(unitarity_defect(lu) < kLiftedUnitaryTol);
            }
        }
    }
    SECTION("parallel kernels match the serial reference exactly") {
        auto b = enumerate_basis(5, 4);
        auto u = haar_unitary(5, rng);
        CHECK(lift_unitary(u, b).matrix == reference::lift_unitary(u, b).matrix);
        const FockState in{1, 1, 0, 2, 0};
        CHECK(apply_unitary(u, in, b).amplitudes ==
              reference::apply_unitary(u, in, b).amplitudes);
    }
    SECTION("column application agrees with the dense lift") {
        auto b = enumerate_basis(4, 3);
        auto u = haar_unitary(4, rng);
        auto op = lift_unitary(u, b);
        const FockState in{0, 2, 1, 0};
        const auto col = apply_unitary(u, in, b);
        CHECK((col.amplitudes - op.matrix.col(static_cast<Eigen::Index>(b->index(in))))
                  .norm() < 1e-14);
        const auto psi = StateVector::basis_state(b, in);
        CHECK((apply_unitary(u, psi).amplitudes - col.amplitudes).norm() < 1e-14);
    }
}

TEST_CASE("output_distribution", "[fock]") {
    SECTION("identity is a point mass") {
        auto p = output_distribution(ModeUnitary::identity(3), {0, 2, 1});
        for (const auto &[s, prob] : p) {
            CHECK(prob == (s == FockState{0, 2, 1} ? 1.0 : 0.0));
        }
    }
    SECTION("Hong-Ou-Mandel") {
        auto p = output_distribution(ModeUnitary(balanced_splitter()), {1, 1});
        CHECK(p.at({2, 0}) == Approx(0.5));
        CHECK(p.at({0, 2}) == Approx(0.5));
        CHECK(p.at({1, 1}) == Approx(0.0).margin(1e-15));
    }
    SECTION("normalization") {
        std::mt19937_64 rng(2);
        for (int trial = 0; trial < 10; ++trial) {
            auto u = haar_unitary(4, rng);
            double total = 0.0;
            for (const auto &[s, prob] : output_distribution(u, {1, 2, 0, 1})) {
                total += prob;
            }
            CHECK(std::abs(total - 1.0) < 1e-9);
        }
    }
}
