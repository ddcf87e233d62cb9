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

#include "fockgrad/observable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fockgrad/error.hpp"

namespace fockgrad {

namespace {

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kImagResidueTol = 1e-10;

double falling_factorial(int n, int k) {
    if (k > n) {
        return 0.0;
    }
    double out = 1.0;
    for (int j = 0; j < k; ++j) {
        out *= n - j;
    }
    return out;
}

int sum_of(const std::vector<int> &v) {
    return std::accumulate(v.begin(), v.end(), 0);
}

} // namespace

double FockDiagonal::eigenvalue(const FockState &s) const {
    auto it = eigenvalues.find(s);
    return it == eigenvalues.end() ? default_value : it->second;
}

int Monomial::degree() const { return sum_of(powers); }

double NumberPolynomial::eigenvalue(const FockState &s) const {
    double total = 0.0;
    for (const Monomial &term : terms) {
        FOCKGRAD_REQUIRE(term.powers.size() == s.modes(),
                         "monomial and state mode counts differ");
        double v = term.coefficient;
        for (std::size_t i = 0; i < s.modes(); ++i) {
            v *= std::pow(static_cast<double>(s[i]), term.powers[i]);
        }
        total += v;
    }
    return total;
}

int NumberPolynomial::degree() const {
    int d = 0;
    for (const Monomial &term : terms) {
        d = std::max(d, term.degree());
    }
    return d;
}

NumberPolynomial NumberPolynomial::number(std::size_t modes, std::size_t mode) {
    FOCKGRAD_REQUIRE(mode < modes, "mode index out of range");
    std::vector<int> powers(modes, 0);
    powers[mode] = 1;
    return NumberPolynomial{{Monomial{std::move(powers), 1.0}}};
}

Projector Projector::pattern(Pattern p) { return Projector{std::move(p)}; }

Projector Projector::state(Terms terms) {
    FOCKGRAD_REQUIRE(!terms.empty(), "state projector needs at least one term");
    double norm2 = 0.0;
    for (const auto &[s, a] : terms) {
        FOCKGRAD_REQUIRE(s.modes() == terms.front().first.modes(),
                         "projector terms have different mode counts");
        norm2 += std::norm(a);
    }
    FOCKGRAD_REQUIRE(norm2 > 0.0, "state projector has zero norm");
    for (auto &term : terms) {
        term.second /= std::sqrt(norm2);
    }
    return Projector{std::move(terms)};
}

bool Projector::matches(const FockState &s) const {
    const auto *p = std::get_if<Pattern>(&target);
    FOCKGRAD_REQUIRE(p != nullptr, "matches() needs a pattern projector");
    FOCKGRAD_REQUIRE(p->size() == s.modes(),
                     "pattern and state mode counts differ");
    for (std::size_t i = 0; i < s.modes(); ++i) {
        if ((*p)[i] && *(*p)[i] != s[i]) {
            return false;
        }
    }
    return true;
}

bool Observable::is_diagonal() const {
    return std::visit(Overloaded{
                          [](const FockDiagonal &) { return true; },
                          [](const NumberPolynomial &) { return true; },
                          [](const NormalOrderedPair &o) { return o.q == o.r; },
                          [](const Projector &o) { return o.is_pattern(); },
                      },
                      v_);
}

double Observable::eigenvalue(const FockState &s) const {
    return std::visit(
        Overloaded{
            [&](const FockDiagonal &o) { return o.eigenvalue(s); },
            [&](const NumberPolynomial &o) { return o.eigenvalue(s); },
            [&](const NormalOrderedPair &o) {
                if (o.q != o.r) {
                    throw UnsupportedMeasurementError(
                        "normal-ordered pair with q != r is not diagonal");
                }
                FOCKGRAD_REQUIRE(o.q.size() == s.modes(),
                                 "observable and state mode counts differ");
                double v = 2.0 * o.coefficient.real();
                for (std::size_t i = 0; i < s.modes(); ++i) {
                    v *= falling_factorial(s[i], o.q[i]);
                }
                return v;
            },
            [&](const Projector &o) {
                if (!o.is_pattern()) {
                    throw UnsupportedMeasurementError(
                        "state projectors are not diagonal");
                }
                return o.matches(s) ? 1.0 : 0.0;
            },
        },
        v_);
}

SectorObservable::SectorObservable(const Observable &obs, BasisPtr basis)
    : basis_(std::move(basis)) {
    const auto d = static_cast<Eigen::Index>(basis_->dimension());
    if (obs.is_diagonal()) {
        kind_ = Kind::Diagonal;
        diag_.resize(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            diag_(i) = obs.eigenvalue((*basis_)[static_cast<std::size_t>(i)]);
        }
        return;
    }
    if (const auto *pair = std::get_if<NormalOrderedPair>(&obs.variant())) {
        kind_ = Kind::Sparse;
        const std::size_t m = basis_->modes();
        FOCKGRAD_REQUIRE(pair->q.size() == m && pair->r.size() == m,
                         "normal-ordered pair and basis mode counts differ");
        std::vector<Eigen::Triplet<Complex>> triplets;
        if (sum_of(pair->q) == sum_of(pair->r)) {
            for (Eigen::Index t = 0; t < d; ++t) {
                const FockState &in = (*basis_)[static_cast<std::size_t>(t)];
                std::vector<int> occ(in.occupations().begin(),
                                     in.occupations().end());
                double amp = 1.0;
                bool alive = true;
                for (std::size_t i = 0; i < m && alive; ++i) {
                    if (occ[i] < pair->r[i]) {
                        alive = false;
                        break;
                    }
                    amp *= std::sqrt(falling_factorial(occ[i], pair->r[i]));
                    occ[i] -= pair->r[i];
                    occ[i] += pair->q[i];
                    amp *= std::sqrt(falling_factorial(occ[i], pair->q[i]));
                }
                if (!alive) {
                    continue;
                }
                const auto s = basis_->find(FockState(std::move(occ)));
                if (!s) {
                    continue;
                }
                const auto row = static_cast<Eigen::Index>(*s);
                triplets.emplace_back(row, t, pair->coefficient * amp);
                triplets.emplace_back(t, row, std::conj(pair->coefficient) * amp);
            }
        }
        sparse_.resize(d, d);
        sparse_.setFromTriplets(triplets.begin(), triplets.end());
        return;
    }
    const auto &proj = std::get<Projector>(obs.variant());
    kind_ = Kind::Rank1;
    phi_ = CVector::Zero(d);
    for (const auto &[s, a] : std::get<Projector::Terms>(proj.target)) {
        FOCKGRAD_REQUIRE(s.modes() == basis_->modes(),
                         "projector and basis mode counts differ");
        if (auto i = basis_->find(s)) {
            phi_(static_cast<Eigen::Index>(*i)) += a;
        }
    }
}

const Eigen::VectorXd &SectorObservable::eigenvalues() const {
    if (kind_ != Kind::Diagonal) {
        throw UnsupportedMeasurementError(
            "observable is not diagonal in the Fock basis");
    }
    return diag_;
}

double SectorObservable::expectation(const CVector &psi) const {
    FOCKGRAD_REQUIRE(psi.size() == static_cast<Eigen::Index>(basis_->dimension()),
                     "state and observable bases differ");
    switch (kind_) {
    case Kind::Diagonal:
        return diag_.dot(psi.cwiseAbs2());
    case Kind::Rank1:
        return std::norm(phi_.dot(psi));
    case Kind::Sparse:
        break;
    }
    const Complex v = psi.dot(sparse_ * psi);
    if (std::abs(v.imag()) > kImagResidueTol * std::max(1.0, std::abs(v.real()))) {
        throw std::logic_error("expectation has a non-negligible imaginary part");
    }
    return v.real();
}

CMatrix SectorObservable::dense() const {
    switch (kind_) {
    case Kind::Diagonal:
        return diag_.cast<Complex>().asDiagonal();
    case Kind::Rank1:
        return phi_ * phi_.adjoint();
    case Kind::Sparse:
        break;
    }
    return CMatrix(sparse_);
}

double expectation(const Observable &obs, const StateVector &psi) {
    return SectorObservable(obs, psi.basis).expectation(psi.amplitudes);
}

int frequency_bound(const Observable &obs, int photons) {
    return std::visit(
        Overloaded{
            [&](const FockDiagonal &) { return photons; },
            [&](const Projector &) { return photons; },
            [&](const NumberPolynomial &o) {
                return std::min(o.degree(), photons);
            },
            [&](const NormalOrderedPair &o) {
                return std::min(std::max(sum_of(o.q), sum_of(o.r)), photons);
            },
        },
        obs.variant());
}

FockDiagonal random_diagonal(const FockBasis &basis, double lo, double hi,
                             std::uint64_t seed) {
    FOCKGRAD_REQUIRE(lo < hi, "random_diagonal needs lo < hi");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    FockDiagonal out;
    out.eigenvalues.reserve(basis.dimension());
    for (const FockState &s : basis.states()) {
        out.eigenvalues.emplace(s, dist(rng));
    }
    return out;
}

std::int64_t stirling2(int p, int i) {
    FOCKGRAD_REQUIRE(0 <= i && i <= p, "stirling2 needs 0 <= i <= p");
    FOCKGRAD_REQUIRE(p <= 25, "stirling2 is exact only for p <= 25");
    __extension__ using Wide = __int128;
    // i! S(p, i) = sum_j (-1)^{i-j} C(i, j) j^p
    Wide total = 0;
    Wide binom = 1;
    for (int j = 0; j <= i; ++j) {
        Wide power = (p == 0) ? 1 : 0;
        if (j > 0) {
            power = 1;
            for (int e = 0; e < p; ++e) {
                power *= j;
            }
        }
        const Wide term = binom * power;
        total += ((i - j) % 2 == 0) ? term : -term;
        binom = binom * (i - j) / (j + 1);
    }
    for (int k = 2; k <= i; ++k) {
        total /= k;
    }
    return static_cast<std::int64_t>(total);
}

std::vector<std::pair<int, std::int64_t>> number_to_normal(int p) {
    FOCKGRAD_REQUIRE(p >= 1, "number_to_normal needs p >= 1");
    std::vector<std::pair<int, std::int64_t>> out;
    out.reserve(static_cast<std::size_t>(p));
    for (int i = 1; i <= p; ++i) {
        out.emplace_back(i, stirling2(p, i));
    }
    return out;
}

} // namespace fockgrad
