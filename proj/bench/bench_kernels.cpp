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


#include <benchmark/benchmark.h>

#include "fockgrad/lift.hpp"
#include "fockgrad/rng.hpp"

namespace {

using namespace fockgrad;

struct Problem {
    ModeUnitary u;
    FockState input;
    BasisPtr basis;
};

Problem make_problem(std::size_t modes, int photons) {
    auto rng = make_rng(20260101, {modes, static_cast<std::uint64_t>(photons)});
    std::vector<int> occ(modes, 0);
    for (int i = 0; i < photons; ++i) {
        ++occ[static_cast<std::size_t>(i) % modes];
    }
    FockState input(occ);
    return {haar_unitary(modes, rng), input, enumerate_basis(modes, photons)};
}

void BM_ColumnParallel(benchmark::State &state) {
    const auto p = make_problem(static_cast<std::size_t>(state.range(0)),
                                static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_unitary(p.u, p.input, p.basis));
    }
    state.counters["dim"] = static_cast<double>(p.basis->dimension());
}

void BM_ColumnSerial(benchmark::State &state) {
    const auto p = make_problem(static_cast<std::size_t>(state.range(0)),
                                static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::apply_unitary(p.u, p.input, p.basis));
    }
    state.counters["dim"] = static_cast<double>(p.basis->dimension());
}

void BM_LiftParallel(benchmark::State &state) {
    const auto p = make_problem(static_cast<std::size_t>(state.range(0)),
                                static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lift_unitary(p.u, p.basis));
    }
    state.counters["dim"] = static_cast<double>(p.basis->dimension());
}

void BM_LiftSerial(benchmark::State &state) {
    const auto p = make_problem(static_cast<std::size_t>(state.range(0)),
                                static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::lift_unitary(p.u, p.basis));
    }
    state.counters["dim"] = static_cast<double>(p.basis->dimension());
}

} // namespace

BENCHMARK(BM_ColumnParallel)->Args({6, 4})->Args({8, 6})->Args({10, 6});
BENCHMARK(BM_ColumnSerial)->Args({6, 4})->Args({8, 6})->Args({10, 6});
BENCHMARK(BM_LiftParallel)->Args({4, 4})->Args({6, 4});
BENCHMARK(BM_LiftSerial)->Args({4, 4})->Args({6, 4});

BENCHMARK_MAIN();
