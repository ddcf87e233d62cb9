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
 * Occupation-number states and the fixed-photon-number Fock basis.
 */
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace fockgrad {

/// Default cap on the Fock-space dimension accepted by basis enumeration.
inline constexpr std::size_t kDefaultBasisCap = 200'000;

/**
 * @brief Photon occupation numbers over m modes, |n_1, ..., n_m>.
 *
 * Ordering is lexicographic on the occupation vector, which puts
 * (2,0,0) after (1,1,0); FockBasis stores states in the reverse of that
 * order.
 */
class FockState {
  public:
    FockState() = default;
    explicit FockState(std::vector<int> occupations);
    FockState(std::initializer_list<int> occupations);

    static FockState vacuum(std::size_t modes);

    [[nodiscard]] std::size_t modes() const noexcept { return occ_.size(); }
    [[nodiscard]] int photons() const noexcept { return photons_; }
    [[nodiscard]] int operator[](std::size_t mode) const { return occ_[mode]; }
    [[nodiscard]] std::span<const int> occupations() const noexcept {
        return occ_;
    }

    /// Product of n_i! over modes.
    [[nodiscard]] double factorial_product() const;

    /// Mode index of every photon, with mode i repeated n_i times.
    [[nodiscard]] std::vector<std::size_t> expanded_modes() const;

    friend bool operator==(const FockState &, const FockState &) = default;
    friend auto operator<=>(const FockState &a, const FockState &b) {
        return a.occ_ <=> b.occ_;
    }

  private:
    std::vector<int> occ_;
    int photons_ = 0;
};

[[nodiscard]] std::string to_string(const FockState &state);

struct FockStateHash {
    std::size_t operator()(const FockState &state) const noexcept;
};

/// Binomial C(n+m-1, n); saturates at UINT64_MAX.
[[nodiscard]] std::uint64_t basis_dimension(std::size_t modes, int photons);

/**
 * @brief All Fock states of m modes holding exactly n photons.
 *
 * States are ordered lexicographically decreasing, so (n,0,...,0) comes
 * first and (0,...,0,n) last. index() is the inverse of operator[].
 */
class FockBasis {
  public:
    FockBasis(std::size_t modes, int photons,
              std::size_t cap = kDefaultBasisCap);

    [[nodiscard]] std::size_t modes() const noexcept { return modes_; }
    [[nodiscard]] int photons() const noexcept { return photons_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return states_.size();
    }
    [[nodiscard]] const FockState &operator[](std::size_t i) const {
        return states_[i];
    }
    [[nodiscard]] const std::vector<FockState> &states() const noexcept {
        return states_;
    }

    [[nodiscard]] std::optional<std::size_t>
    find(const FockState &state) const;
    /// Throws std::out_of_range for states outside this sector.
    [[nodiscard]] std::size_t index(const FockState &state) const;

    friend bool operator==(const FockBasis &a, const FockBasis &b) {
        return a.modes_ == b.modes_ && a.photons_ == b.photons_;
    }

  private:
    std::size_t modes_;
    int photons_;
    std::vector<FockState> states_;
    std::unordered_map<FockState, std::size_t, FockStateHash> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

/**
 * @brief Enumerate the n-photon sector over m modes.
 * @throws ResourceLimitError when C(n+m-1, n) exceeds @p cap.
 */
[[nodiscard]] BasisPtr enumerate_basis(std::size_t modes, int photons,
                                       std::size_t cap = kDefaultBasisCap);

} // namespace fockgrad
