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

#include "fockgrad/fock_state.hpp"

#include <limits>
#include <numeric>
#include <sstream>

#include "fockgrad/error.hpp"

namespace fockgrad {

FockState::FockState(std::vector<int> occupations)
    : occ_(std::move(occupations)) {
    for (int n : occ_) {
        FOCKGRAD_REQUIRE(n >= 0, "occupation numbers must be non-negative");
        photons_ += n;
    }
}

FockState::FockState(std::initializer_list<int> occupations)
    : FockState(std::vector<int>(occupations)) {}

FockState FockState::vacuum(std::size_t modes) {
    return FockState(std::vector<int>(modes, 0));
}

double FockState::factorial_product() const {
    double prod = 1.0;
    for (int n : occ_) {
        for (int k = 2; k <= n; ++k) {
            prod *= k;
        }
    }
    return prod;
}

std::vector<std::size_t> FockState::expanded_modes() const {
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(photons_));
    for (std::size_t i = 0; i < occ_.size(); ++i) {
        out.insert(out.end(), static_cast<std::size_t>(occ_[i]), i);
    }
    return out;
}

std::string to_string(const FockState &state) {
    std::ostringstream os;
    os << '|';
    for (std::size_t i = 0; i < state.modes(); ++i) {
        if (i != 0) {
            os << ',';
        }
        os << state[i];
    }
    os << '>';
    return os.str();
}

std::size_t FockStateHash::operator()(const FockState &state) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int n : state.occupations()) {
        h ^= static_cast<std::size_t>(n) + 0x9e3779b97f4a7c15ULL + (h << 6) +
             (h >> 2);
    }
    return h;
}

std::uint64_t basis_dimension(std::size_t modes, int photons) {
    if (modes == 0) {
        return photons == 0 ? 1 : 0;
    }
    // C(n+m-1, k) with k = min(n, m-1), multiplicative form stays integral.
    const std::uint64_t top = static_cast<std::uint64_t>(photons) + modes - 1;
    const std::uint64_t k =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(photons), modes - 1);
    std::uint64_t acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // acc * x / i is integral; cancel the gcd first so the product
        // only overflows when the result does.
        std::uint64_t x = top - k + i;
        const std::uint64_t g = std::gcd(acc, i);
        acc /= g;
        x /= i / g;
        if (__builtin_mul_overflow(acc, x, &acc)) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return acc;
}

namespace {
void enumerate_into(std::vector<int> &prefix, std::size_t modes, int remaining,
                    std::vector<FockState> &out) {
    if (prefix.size() + 1 == modes) {
        prefix.push_back(remaining);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        prefix.push_back(k);
        enumerate_into(prefix, modes, remaining - k, out);
        prefix.pop_back();
    }
}
} // namespace

FockBasis::FockBasis(std::size_t modes, int photons, std::size_t cap)
    : modes_(modes), photons_(photons) {
    FOCKGRAD_REQUIRE(modes >= 1, "a Fock basis needs at least one mode");
    FOCKGRAD_REQUIRE(photons >= 0, "photon number must be non-negative");
    const std::uint64_t d = basis_dimension(modes, photons);
    if (d > cap) {
        throw ResourceLimitError("Fock space dimension " + std::to_string(d) +
                                 " exceeds cap " + std::to_string(cap));
    }
    states_.reserve(static_cast<std::size_t>(d));
    std::vector<int> prefix;
    prefix.reserve(modes);
    enumerate_into(prefix, modes, photons, states_);
    index_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        index_.emplace(states_[i], i);
    }
}

std::optional<std::size_t> FockBasis::find(const FockState &state) const {
    auto it = index_.find(state);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t FockBasis::index(const FockState &state) const {
    if (auto i = find(state)) {
        return *i;
    }
    throw std::out_of_range("state " + to_string(state) +
                            " is not in the basis");
}

BasisPtr enumerate_basis(std::size_t modes, int photons, std::size_t cap) {
    return std::make_shared<const FockBasis>(modes, photons, cap);
}

} // namespace fockgrad
