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
 * Parameter-shift rules from trigonometric interpolation.
 *
 * An expectation value f(theta) of a phase slot is a trigonometric
 * polynomial with at most R positive frequencies, so it is fixed by its
 * values on 2R + 1 equidistant points, and so is every derivative.
 */
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fockgrad/circuit.hpp"
#include "fockgrad/linalg.hpp"
#include "fockgrad/observable.hpp"

namespace fockgrad {

using ScalarFn = std::function<double(double)>;

enum class Kernel { Dirichlet, ModifiedDirichlet };

/**
 * @brief d^k f / dx^k ~= c^k sum_mu w_mu f(x + s_mu / c).
 *
 * c is the chain factor: 2 for beamsplitter angles, whose internal phase is
 * pi + 2 theta, and 1 for plain phases.
 */
struct ShiftRule {
    std::vector<double> shifts;
    std::vector<double> weights;
    int order = 1;
    Kernel kernel = Kernel::Dirichlet;
    int frequencies = 0;
    double chain_factor = 1.0;

    [[nodiscard]] std::size_t size() const noexcept { return shifts.size(); }
    /// sum |w|, the 1-norm that sets the shot-noise scale.
    [[nodiscard]] double weight_norm() const;
};

/**
 * @brief k-th derivative of the Dirichlet kernel
 * D(t) = sin((2R+1)t/2) / ((2R+1) sin(t/2)) = (1 + 2 sum_j cos jt)/(2R+1).
 */
[[nodiscard]] double dirichlet(double theta, int frequencies, int order = 0);

/**
 * @brief k-th order rule on the grid 2 pi mu / (2R + 1), mu = -R..R.
 *
 * Weights are D^(k)(-theta_mu). For odd k the weight at mu = 0 vanishes
 * and that shift is dropped, leaving 2R shifts. R = 0 gives the empty
 * rule.
 */
[[nodiscard]] ShiftRule gpsr_rule(int frequencies, int order,
                                  ParamKind kind = ParamKind::PhaseShift);

/// First derivative from 2R shifts (2 mu - 1) pi / (2R), mu = 1..2R.
[[nodiscard]] ShiftRule first_order_rule(int frequencies,
                                         ParamKind kind = ParamKind::PhaseShift);

[[nodiscard]] double apply_rule(const ScalarFn &f, double x,
                                const ShiftRule &rule);

/// (f(x + h) - f(x - h)) / 2h.
[[nodiscard]] double finite_difference(const ScalarFn &f, double x, double h);

/// (f(x + h) - 2 f(x) + f(x - h)) / h^2.
[[nodiscard]] double second_difference(const ScalarFn &f, double x, double h);

/// (4 g(h/2) - g(h)) / 3 with g the central difference.
[[nodiscard]] double richardson_derivative(const ScalarFn &f, double x,
                                           double h = 1e-4);
[[nodiscard]] double richardson_second_derivative(const ScalarFn &f, double x,
                                                  double h = 1e-3);

/**
 * @brief Step minimizing the central-difference MSE,
 * (9 sigma^2 / (f3^2 N_s))^(1/6).
 * @throws std::domain_error when f3 is zero.
 */
[[nodiscard]] double optimal_fd_step(double sigma2, double f3, double shots);

/// Coefficients c_w, w = -R..R, of a band-limited f.
struct FourierCoefficients {
    int frequencies = 0;
    std::vector<Complex> c;

    [[nodiscard]] Complex operator[](int omega) const {
        return c.at(static_cast<std::size_t>(omega + frequencies));
    }
};

/// Grid point theta_mu = 2 pi mu / (2R + 1).
[[nodiscard]] double grid_point(int mu, int frequencies);

[[nodiscard]] FourierCoefficients fourier_coefficients(const ScalarFn &f,
                                                       int frequencies);

/// Interpolate from samples f(theta_mu), mu = -R..R in that order.
[[nodiscard]] double reconstruct(std::span<const double> samples, double theta);

/// R = min(n, n_A, frequency_bound) for one slot.
[[nodiscard]] int slot_frequencies(const ParamCircuit &c, std::size_t slot,
                                   const Observable &obs,
                                   const FockState &input);

/// Full gradient by first-order GPSR with the reduced R of every slot.
[[nodiscard]] std::vector<double> exact_gradient(const ParamCircuit &c,
                                                 const Observable &obs,
                                                 const FockState &input,
                                                 std::span<const double> values);

} // namespace fockgrad
