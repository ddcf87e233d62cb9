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

#include "fockgrad/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fockgrad/error.hpp"
#include "fockgrad/expectation.hpp"

namespace fockgrad {

namespace {

constexpr double kSingularWindow = 1e-6;

double chain_for(ParamKind kind) {
    return kind == ParamKind::BeamsplitterAngle ? 2.0 : 1.0;
}

/// Distance from theta to the nearest multiple of 2 pi.
double distance_to_lattice(double theta) {
    const double r = std::remainder(theta, 2.0 * kPi);
    return std::abs(r);
}

} // namespace

double ShiftRule::weight_norm() const {
    double total = 0.0;
    for (double w : weights) {
        total += std::abs(w);
    }
    return total;
}

double dirichlet(double theta, int frequencies, int order) {
    FOCKGRAD_REQUIRE(frequencies >= 0, "dirichlet needs R >= 0");
    FOCKGRAD_REQUIRE(order >= 0, "derivative order must be non-negative");
    const double n = 2.0 * frequencies + 1.0;
    if (order == 0 && distance_to_lattice(theta) > kSingularWindow) {
        return std::sin(n * theta / 2.0) / (n * std::sin(theta / 2.0));
    }
    double total = (order == 0) ? 1.0 : 0.0;
    const double lift = order * kPi / 2.0;
    for (int j = 1; j <= frequencies; ++j) {
        total += 2.0 * std::pow(static_cast<double>(j), order) *
                 std::cos(j * theta + lift);
    }
    return total / n;
}

double grid_point(int mu, int frequencies) {
    return 2.0 * kPi * mu / (2.0 * frequencies + 1.0);
}

ShiftRule gpsr_rule(int frequencies, int order, ParamKind kind) {
    FOCKGRAD_REQUIRE(frequencies >= 0, "gpsr_rule needs R >= 0");
    FOCKGRAD_REQUIRE(order >= 1, "gpsr_rule needs k >= 1");
    ShiftRule rule;
    rule.order = order;
    rule.kernel = Kernel::Dirichlet;
    rule.frequencies = frequencies;
    rule.chain_factor = chain_for(kind);
    for (int mu = -frequencies; mu <= frequencies; ++mu) {
        if (mu == 0 && order % 2 == 1) {
            continue;
        }
        const double t = grid_point(mu, frequencies);
        rule.shifts.push_back(t);
        rule.weights.push_back(dirichlet(-t, frequencies, order));
    }
    return rule;
}

ShiftRule first_order_rule(int frequencies, ParamKind kind) {
    FOCKGRAD_REQUIRE(frequencies >= 0, "first_order_rule needs R >= 0");
    ShiftRule rule;
    rule.order = 1;
    rule.kernel = Kernel::ModifiedDirichlet;
    rule.frequencies = frequencies;
    rule.chain_factor = chain_for(kind);
    const double r = frequencies;
    for (int mu = 1; mu <= 2 * frequencies; ++mu) {
        const double t = (2.0 * mu - 1.0) * kPi / (2.0 * r);
        const double s = std::sin(t / 2.0);
        const double sign = (mu % 2 == 1) ? 1.0 : -1.0;
        rule.shifts.push_back(t);
        rule.weights.push_back(sign / (4.0 * r * s * s));
    }
    return rule;
}

double apply_rule(const ScalarFn &f, double x, const ShiftRule &rule) {
    const double c = rule.chain_factor;
    std::vector<double> values(rule.size());
    for (std::size_t mu = 0; mu < rule.size(); ++mu) {
        values[mu] = f(x + rule.shifts[mu] / c);
    }
    double total = 0.0;
    for (std::size_t mu = 0; mu < rule.size(); ++mu) {
        total += rule.weights[mu] * values[mu];
    }
    return std::pow(c, rule.order) * total;
}

double finite_difference(const ScalarFn &f, double x, double h) {
    FOCKGRAD_REQUIRE(h > 0.0, "finite difference step must be positive");
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double second_difference(const ScalarFn &f, double x, double h) {
    FOCKGRAD_REQUIRE(h > 0.0, "finite difference step must be positive");
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

double richardson_derivative(const ScalarFn &f, double x, double h) {
    return (4.0 * finite_difference(f, x, h / 2.0) - finite_difference(f, x, h)) /
           3.0;
}

double richardson_second_derivative(const ScalarFn &f, double x, double h) {
    return (4.0 * second_difference(f, x, h / 2.0) - second_difference(f, x, h)) /
           3.0;
}

double optimal_fd_step(double sigma2, double f3, double shots) {
    FOCKGRAD_REQUIRE(sigma2 > 0.0 && shots > 0.0,
                     "optimal_fd_step needs positive variance and shots");
    if (f3 == 0.0) {
        throw std::domain_error("optimal step is unbounded when f''' = 0");
    }
    return std::pow(9.0 * sigma2 / (f3 * f3 * shots), 1.0 / 6.0);
}

FourierCoefficients fourier_coefficients(const ScalarFn &f, int frequencies) {
    FOCKGRAD_REQUIRE(frequencies >= 0, "fourier_coefficients needs R >= 0");
    const int r = frequencies;
    std::vector<double> samples;
    for (int mu = -r; mu <= r; ++mu) {
        samples.push_back(f(grid_point(mu, r)));
    }
    FourierCoefficients out;
    out.frequencies = r;
    const double n = 2.0 * r + 1.0;
    for (int omega = -r; omega <= r; ++omega) {
        Complex total{};
        for (int mu = -r; mu <= r; ++mu) {
            const double phase = -omega * grid_point(mu, r);
            total += samples[static_cast<std::size_t>(mu + r)] *
                     std::exp(Complex(0.0, phase));
        }
        out.c.push_back(total / n);
    }
    return out;
}

double reconstruct(std::span<const double> samples, double theta) {
    FOCKGRAD_REQUIRE(samples.size() % 2 == 1,
                     "reconstruction needs an odd number of samples");
    const int r = static_cast<int>(samples.size() / 2);
    double total = 0.0;
    for (int mu = -r; mu <= r; ++mu) {
        total += samples[static_cast<std::size_t>(mu + r)] *
                 dirichlet(theta - grid_point(mu, r), r);
    }
    return total;
}

int slot_frequencies(const ParamCircuit &c, std::size_t slot,
                     const Observable &obs, const FockState &input) {
    const int n = input.photons();
    const int n_a = light_cone(c, slot, input).photons;
    return std::min({n, n_a, frequency_bound(obs, n)});
}

std::vector<double> exact_gradient(const ParamCircuit &c, const Observable &obs,
                                   const FockState &input,
                                   std::span<const double> values) {
    std::vector<double> grad(c.num_params(), 0.0);
    if (c.num_params() == 0) {
        return grad;
    }
    const std::vector<double> base(values.begin(), values.end());
    const ExpectationFn probe(c, input, obs, base, 0);
    for (std::size_t k = 0; k < c.num_params(); ++k) {
        const int r = slot_frequencies(c, k, obs, input);
        const ShiftRule rule = gpsr_rule(r, 1, c.kind_of(k));
        std::vector<double> v = base;
        grad[k] = apply_rule(
            [&](double x) {
                v[k] = x;
                return probe.at(v);
            },
            base[k], rule);
    }
    return grad;
}

} // namespace fockgrad
