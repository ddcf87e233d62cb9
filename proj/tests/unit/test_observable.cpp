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
#include <random>

#include "fockgrad/error.hpp"
#include "fockgrad/expectation.hpp"
#include "fockgrad/observable.hpp"

#include "test_helpers.hpp"

using namespace fockgrad;

namespace {

/// Ladder operators on the truncated product space with levels 0..cut.
struct TruncatedSpace {
    std::size_t modes;
    int cut;

    [[nodiscard]] Eigen::Index dim() const {
        return static_cast<Eigen::Index>(std::pow(cut + 1, modes));
    }
    [[nodiscard]] Eigen::Index index(const FockState &s) const {
        Eigen::Index i = 0;
        for (std::size_t k = 0; k < modes; ++k) {
            i = i * (cut + 1) + s[k];
        }
        return i;
    }
    [[nodiscard]] CMatrix annihilate(std::size_t mode) const {
        const Eigen::Index l = cut + 1;
        CMatrix a = CMatrix::Zero(l, l);
        for (Eigen::Index k = 1; k < l; ++k) {
            a(k - 1, k) = std::sqrt(static_cast<double>(k));
        }
        CMatrix out = CMatrix::Identity(1, 1);
        for (std::size_t k = 0; k < modes; ++k) {
            const CMatrix f = k == mode ? a : CMatrix::Identity(l, l);
            CMatrix next(out.rows() * l, out.cols() * l);
            for (Eigen::Index r = 0; r < out.rows(); ++r) {
                for (Eigen::Index c = 0; c < out.cols(); ++c) {
                    next.block(r * l, c * l, l, l) = out(r, c) * f;
                }
            }
            out = next;
        }
        return out;
    }
};

CMatrix matrix_power(const CMatrix &m, int p) {
    CMatrix out = CMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < p; ++i) {
        out = out * m;
    }
    return out;
}

/// Sector block of a dense operator on the truncated space.
CMatrix restrict(const CMatrix &op, const TruncatedSpace &sp, const FockBasis &b) {
    const auto d = static_cast<Eigen::Index>(b.dimension());
    CMatrix out(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            out(r, c) = op(sp.index(b[static_cast<std::size_t>(r)]),
                           sp.index(b[static_cast<std::size_t>(c)]));
        }
    }
    return out;
}

std::int64_t stirling_recurrence(int p, int i) {
    std::vector<std::vector<std::int64_t>> s(
        static_cast<std::size_t>(p + 1),
        std::vector<std::int64_t>(static_cast<std::size_t>(p + 1), 0));
    s[0][0] = 1;
    for (int n = 1; n <= p; ++n) {
        for (int k = 1; k <= n; ++k) {
            s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
        }
    }
    return s[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
}

} // namespace

TEST_CASE("NumberPolynomial", "[observable]") {
    NumberPolynomial poly{{Monomial{{1, 0, 2}, 0.5}, Monomial{{0, 3, 0}, -2.0}}};
    CHECK(poly.degree() == 3);
    CHECK(poly.eigenvalue({2, 1, 3}) == 0.5 * 2 * 9 - 2.0);
    CHECK(NumberPolynomial::number(3, 1).eigenvalue({4, 2, 1}) == 2.0);
    CHECK(Observable(poly).is_diagonal());
}

TEST_CASE("NormalOrderedPair matches ladder-operator products", "[observable]") {
    const TruncatedSpace sp{3, 3};
    std::vector<CMatrix> a;
    for (std::size_t k = 0; k < 3; ++k) {
        a.push_back(sp.annihilate(k));
    }
    const auto basis = enumerate_basis(3, 3);
    const std::vector<NormalOrderedPair> cases = {
        {{1, 0, 0}, {0, 1, 0}, Complex(0.3, -0.7)},
        {{2, 0, 0}, {0, 1, 1}, Complex(1.1, 0.2)},
        {{1, 1, 0}, {1, 1, 0}, Complex(0.5, 0.4)},
        {{0, 0, 2}, {1, 0, 1}, Complex(-0.8, 0.0)},
    };
    for (const auto &pair : cases) {
        CMatrix term = CMatrix::Identity(sp.dim(), sp.dim());
        for (std::size_t k = 0; k < 3; ++k) {
            term = term * matrix_power(a[k].adjoint(), pair.q[k]);
        }
        for (std::size_t k = 0; k < 3; ++k) {
            term = term * matrix_power(a[k], pair.r[k]);
        }
        term = pair.coefficient * term;
        const CMatrix full = term + term.adjoint();
        const CMatrix want = restrict(full, sp, *basis);
        const SectorObservable so(Observable(pair), basis);
        CHECK((so.dense() - want).norm() < 1e-12);
        CHECK(so.is_diagonal() == (pair.q == pair.r));
    }
}

TEST_CASE("SectorObservable::expectation", "[observable]") {
    std::mt19937_64 rng(31);
    const auto basis = enumerate_basis(3, 2);
    const auto d = static_cast<Eigen::Index>(basis->dimension());
    CVector psi = test::random_complex(d, 1, rng);
    psi.normalize();
    const std::vector<Observable> obs = {
        Observable(NumberPolynomial{{Monomial{{2, 1, 0}, 1.5}}}),
        Observable(NormalOrderedPair{{1, 0, 0}, {0, 0, 1}, Complex(0.2, 0.9)}),
        Observable(Projector::state({{FockState{1, 1, 0}, Complex(1, 0)},
                                     {FockState{0, 0, 2}, Complex(0, 1)}})),
        Observable(Projector::pattern({std::nullopt, 1, std::nullopt})),
    };
    for (const auto &o : obs) {
        const SectorObservable so(o, basis);
        const Complex want = psi.dot(so.dense() * psi);
        CHECK(std::abs(want.imag()) < 1e-12);
        CHECK(so.expectation(psi) == Catch::Approx(want.real()).margin(1e-12));
        CHECK(expectation(o, StateVector{basis, psi}) ==
              Catch::Approx(want.real()).margin(1e-12));
    }
}

TEST_CASE("Projector", "[observable]") {
    SECTION("state projectors are normalized") {
        const auto p = Projector::state({{FockState{1, 0}, Complex(3, 0)},
                                         {FockState{0, 1}, Complex(0, 4)}});
        const auto basis = enumerate_basis(2, 1);
        const SectorObservable so(Observable(p), basis);
        CHECK(std::abs(so.dense().trace() - 1.0) < 1e-14);
        CHECK((so.dense() * so.dense() - so.dense()).norm() < 1e-14);
        CHECK_THROWS_AS(Projector::state({}), std::invalid_argument);
    }
    SECTION("patterns") {
        const auto p = Projector::pattern({std::nullopt, 1, 1, std::nullopt});
        CHECK(p.matches({0, 1, 1, 2}));
        CHECK_FALSE(p.matches({1, 0, 1, 2}));
        CHECK(Observable(p).eigenvalue({3, 1, 1, 0}) == 1.0);
    }
    SECTION("state projectors are not measurable by counting") {
        const auto p = Projector::state({{FockState{1, 0}, Complex(1, 0)}});
        CHECK_FALSE(Observable(p).is_diagonal());
        CHECK_THROWS_AS(Observable(p).eigenvalue({1, 0}), UnsupportedMeasurementError);
    }
}

TEST_CASE("frequency_bound", "[observable]") {
    CHECK(frequency_bound(Observable(FockDiagonal{}), 4) == 4);
    CHECK(frequency_bound(Observable(NumberPolynomial{{Monomial{{2, 1}, 1.0}}}), 5) ==
          3);
    CHECK(frequency_bound(Observable(NumberPolynomial{{Monomial{{2, 1}, 1.0}}}), 2) ==
          2);
    CHECK(frequency_bound(Observable(NormalOrderedPair{{2, 0}, {1, 1}, 1.0}), 4) == 2);
}

TEST_CASE("random_diagonal", "[observable]") {
    const auto basis = enumerate_basis(4, 2);
    const auto a = random_diagonal(*basis, -5, 5, 42);
    const auto b = random_diagonal(*basis, -5, 5, 42);
    const auto c = random_diagonal(*basis, -5, 5, 43);
    CHECK(a.eigenvalues.size() == basis->dimension());
    bool differs = false;
    for (const auto &s : basis->states()) {
        CHECK(a.eigenvalue(s) == b.eigenvalue(s));
        CHECK(a.eigenvalue(s) >= -5.0);
        CHECK(a.eigenvalue(s) < 5.0);
        differs = differs || a.eigenvalue(s) != c.eigenvalue(s);
    }
    CHECK(differs);
}

TEST_CASE("stirling2", "[observable]") {
    for (int p = 0; p <= 20; ++p) {
        for (int i = 0; i <= p; ++i) {
            CHECK(stirling2(p, i) == stirling_recurrence(p, i));
        }
    }
    CHECK_THROWS_AS(stirling2(3, 5), std::invalid_argument);
    CHECK(stirling2(25, 12) > 0);
}

TEST_CASE("number_to_normal", "[observable]") {
    SECTION("integer identity on every occupation") {
        for (int p = 1; p <= 6; ++p) {
            for (std::int64_t n = 0; n <= 12; ++n) {
                std::int64_t lhs = 1;
                for (int k = 0; k < p; ++k) {
                    lhs *= n;
                }
                std::int64_t rhs = 0;
                for (auto [i, s] : number_to_normal(p)) {
                    std::int64_t ff = 1;
                    for (std::int64_t j = 0; j < i; ++j) {
                        ff *= n - j;
                    }
                    rhs += s * ff;
                }
                CHECK(lhs == rhs);
            }
        }
    }
    SECTION("as truncated matrices") {
        const TruncatedSpace sp{1, 8};
        const CMatrix a = sp.annihilate(0);
        const CMatrix num = a.adjoint() * a;
        for (int p = 1; p <= 6; ++p) {
            CMatrix sum = CMatrix::Zero(sp.dim(), sp.dim());
            for (auto [i, s] : number_to_normal(p)) {
                sum += static_cast<double>(s) * matrix_power(a.adjoint(), i) *
                       matrix_power(a, i);
            }
            const CMatrix want = matrix_power(num, p);
            for (Eigen::Index k = 0; k < sp.dim(); ++k) {
                CHECK(std::llround(sum(k, k).real()) == std::llround(want(k, k).real()));
            }
            CHECK((sum - want).norm() < 1e-6 * want.norm());
        }
    }
}
