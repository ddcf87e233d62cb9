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
 * Seed derivation for reproducible parallel sampling.
 *
 * Every random task owns an std::mt19937_64 seeded by folding its stream
 * coordinates (e.g. repetition, shift index) into the run seed with
 * SplitMix64. Results therefore do not depend on scheduling.
 */
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fockgrad {

/// One SplitMix64 step; advances @p state.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t &state) noexcept {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

[[nodiscard]] constexpr std::uint64_t
derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) noexcept {
    std::uint64_t state = seed;
    std::uint64_t out = splitmix64(state);
    for (std::uint64_t id : stream) {
        state ^= out + id;
        out = splitmix64(state);
    }
    return out;
}

[[nodiscard]] inline std::mt19937_64
make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {}) {
    return std::mt19937_64(derive_seed(seed, stream));
}

} // namespace fockgrad
