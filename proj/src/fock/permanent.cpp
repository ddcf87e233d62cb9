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

#include "fockgrad/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fockgrad/error.hpp"

namespace fockgrad {

Complex permanent(const CMatrix &m) {
    FOCKGRAD_REQUIRE(m.rows() == m.cols(), "permanent of a non-square matrix");
    const auto k = static_cast<int>(m.rows());
    switch (k) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return m(0, 0);
    case 2:
        return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
    default:
        break;
    }
    FOCKGRAD_REQUIRE(k < 63, "permanent size too large");

    // Ryser: Per(A) = (-1)^k sum_S (-1)^|S| prod_i sum_{j in S} a_ij.
    std::vector<Complex> row_sums(static_cast<std::size_t>(k), Complex{});
    Complex total{};
    const std::uint64_t n_subsets = std::uint64_t{1} << k;
    std::uint64_t gray = 0;
    for (std::uint64_t step = 1; step < n_subsets; ++step) {
        const int j = std::countr_zero(step);
        const std::uint64_t bit = std::uint64_t{1} << j;
        gray ^= bit;
        const double sign_col = (gray & bit) ? 1.0 : -1.0;
        for (int i = 0; i < k; ++i) {
            row_sums[static_cast<std::size_t>(i)] += sign_col * m(i, j);
        }
        Complex prod{1.0, 0.0};
        for (const Complex &s : row_sums) {
            prod *= s;
        }
        const bool odd = (std::popcount(gray) & 1) != 0;
        total += odd ? -prod : prod;
    }
    return (k % 2 == 0) ? total : -total;
}

namespace reference {

Complex permanent_naive(const CMatrix &m) {
    FOCKGRAD_REQUIRE(m.rows() == m.cols(), "permanent of a non-square matrix");
    const auto k = static_cast<int>(m.rows());
    std::vector<int> sigma(static_cast<std::size_t>(k));
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex total{};
    do {
        Complex prod{1.0, 0.0};
        for (int i = 0; i < k; ++i) {
            prod *= m(i, sigma[static_cast<std::size_t>(i)]);
        }
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

} // namespace reference
} // namespace fockgrad
