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
 * Photon-counting shot noise, shot allocation and uniform loss.
 */
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fockgrad/expectation.hpp"
#include "fockgrad/gradient.hpp"

namespace fockgrad {

enum class Allocation { Uniform, OneNorm };

struct ShotAllocation {
    Allocation strategy = Allocation::Uniform;
    long long total = 0;
};

/**
 * @brief Shots per shift of a rule.
 *
 * Uniform gives floor(N / #shifts) to each. OneNorm gives
 * floor(N |w_mu| / ||w||_1), at least one, and hands the remainder out one
 * shot at a time by descending |w_mu| (ties to the lower index).
 */
[[nodiscard]] std::vector<long long> allocate(const ShiftRule &rule,
                                              const ShotAllocation &alloc);

/// Outcome counts of @p shots multinomial draws, O(d) in the outcome count.
[[nodiscard]] std::vector<long long>
multinomial_counts(const Eigen::VectorXd &probabilities, long long shots,
                   std::mt19937_64 &rng);

/// Mean eigenvalue over @p shots photon-counting outcomes.
[[nodiscard]] double sample_mean(const Eigen::VectorXd &probabilities,
                                 const Eigen::VectorXd &eigenvalues,
                                 long long shots, std::mt19937_64 &rng);

/// Single-shot variance sum p lambda^2 - (sum p lambda)^2.
[[nodiscard]] double shot_variance(const Eigen::VectorXd &probabilities,
                                   const Eigen::VectorXd &eigenvalues);

/// Photon-counting estimate of <O>; O must be diagonal.
[[nodiscard]] double sample_expectation(const ParamCircuit &c,
                                        std::span<const double> values,
                                        const FockState &input,
                                        const Observable &obs, long long shots,
                                        std::uint64_t seed);

/// c^k sum_mu w_mu f_hat(x + s_mu / c) with allocated shots per shift.
[[nodiscard]] double sampled_gradient(const ExpectationFn &f,
                                      const ShiftRule &rule,
                                      const ShotAllocation &alloc,
                                      std::uint64_t seed);

/// Central difference from two sampled evaluations of N/2 shots each.
[[nodiscard]] double sampled_finite_difference(const ExpectationFn &f, double h,
                                               long long total_shots,
                                               std::uint64_t seed);

struct LossTerm {
    FockState state;
    double probability = 0.0;
};

/// Product-binomial photon-loss mixture with transmission @p eta.
[[nodiscard]] std::vector<LossTerm> lossy_input_mixture(const FockState &input,
                                                        double eta);

/// sum_k p_k <O>_k over the loss mixture.
[[nodiscard]] double lossy_expectation(const ParamCircuit &c,
                                       std::span<const double> values,
                                       const FockState &input,
                                       const Observable &obs, double eta);

/// Lossy expectation as a function of one slot, with per-sector caches.
class LossyExpectationFn {
  public:
    LossyExpectationFn(const ParamCircuit &c, const FockState &input,
                       const Observable &obs, const std::vector<double> &values,
                       std::size_t slot, double eta);

    [[nodiscard]] double operator()(double x) const;

  private:
    std::vector<ExpectationFn> sectors_;
    std::vector<double> weights_;
};

enum class MseMethodKind {
    GpsrUniform,
    GpsrOneNorm,
    GpsrModifiedOneNorm,
    FdFixed,
    FdOptimal,
};

struct MseMethod {
    MseMethodKind kind = MseMethodKind::GpsrUniform;
    double step = 0.0; // FdFixed only

    [[nodiscard]] std::string name() const;
    static MseMethod parse(const std::string &name);
};

struct MseConfig {
    ParamCircuit circuit{1};
    FockState input;
    std::vector<Observable> observables; // one per parameter set, cycled
    std::size_t slot = 0;
    std::vector<long long> shot_budgets;
    std::vector<MseMethod> methods;
    int repetitions = 100;
    int parameter_sets = 4;
    int pilot_shots = 100;
    double max_fd_step = 1.0;
    std::uint64_t seed = 0;
};

struct MseRow {
    std::string method;
    long long n_tot = 0;
    double mse = 0.0;
    double stderr_ = 0.0;
    double bias = 0.0;
    double variance = 0.0;
};

/// Empirical MSE per (method, N_tot) averaged over random parameter sets.
[[nodiscard]] std::vector<MseRow> mse_experiment(const MseConfig &config);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(std::span<const double> x,
                                  std::span<const double> y);

} // namespace fockgrad
