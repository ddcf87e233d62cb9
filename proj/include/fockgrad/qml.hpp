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
 * Hybrid photonic classifier on the two-circles dataset.
 *
 * Two features are written into the angles of encoding beamsplitters, a
 * 5-mode interferometer with 8 trainable angles processes |1,0,1,0,1>, and
 * a small MLP maps the normalized mean photon counts to a probability.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fockgrad/circuit.hpp"
#include "fockgrad/sampler.hpp"

namespace fockgrad {

struct CircleDataset {
    std::vector<std::array<double, 2>> points;
    std::vector<int> labels;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
};

/**
 * @brief Two noisy concentric circles, radius 1 (label 0) and @p factor
 * (label 1), split as evenly as possible.
 */
[[nodiscard]] CircleDataset make_circles(std::size_t n, double noise,
                                         double factor, std::uint64_t seed);

/// Affine map of each feature from the training range onto [-pi/2, pi/2].
struct FeatureScaler {
    std::array<double, 2> lo{}, hi{};

    static FeatureScaler fit(const CircleDataset &data);
    /// Scaled feature, clipped to [-pi/2, pi/2].
    [[nodiscard]] double operator()(std::size_t feature, double x) const;
};

inline double elu(double x) { return x > 0.0 ? x : std::expm1(x); }
inline double elu_derivative(double x) { return x > 0.0 ? 1.0 : std::exp(x); }
inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/**
 * @brief sigmoid(ELU(W2 ELU(W1 z + b1) + b2)) with W1 4x5 and W2 1x4.
 *
 * Parameters are flattened as W1 (row-major), b1, W2, b2: 29 values.
 */
class Mlp {
  public:
    static constexpr int kInputs = 5;
    static constexpr int kHidden = 4;
    static constexpr int kParams = kHidden * kInputs + kHidden + kHidden + 1;

    Mlp();
    /// Glorot-uniform weights and zero biases.
    static Mlp glorot(std::mt19937_64 &rng);

    [[nodiscard]] Eigen::VectorXd &params() noexcept { return alpha_; }
    [[nodiscard]] const Eigen::VectorXd &params() const noexcept { return alpha_; }

    [[nodiscard]] double operator()(const Eigen::VectorXd &z) const;

    struct Gradients {
        double output = 0.0;
        Eigen::VectorXd params;
        Eigen::VectorXd input;
    };
    /// Output with dy/d(alpha) and dy/dz.
    [[nodiscard]] Gradients backward(const Eigen::VectorXd &z) const;

  private:
    Eigen::VectorXd alpha_;
};

struct Adam {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    void step(Eigen::VectorXd &x, const Eigen::VectorXd &grad);

  private:
    Eigen::VectorXd m_, v_;
    long long t_ = 0;
};

enum class QmlGradient { Exact, Gpsr, FiniteDifference };

struct QmlMethod {
    QmlGradient kind = QmlGradient::Gpsr;
    double step = 0.0; // FiniteDifference only

    [[nodiscard]] std::string name() const;
    /// "exact", "gpsr" or "fd(h)".
    static QmlMethod parse(const std::string &name);
};

struct QmlConfig {
    std::size_t train_size = 60;
    std::size_t test_size = 400;
    double noise = 0.1;
    double factor = 0.5;
    int epochs = 50;
    std::size_t batch_size = 3;
    long long shots = 600;
    double theta_learning_rate = 0.05;
    Adam adam;
    bool train_mlp = true;
};

struct QmlEpoch {
    int epoch = 0;
    double train_loss = 0.0;
    double test_accuracy = 0.0;
};

struct QmlRun {
    std::string method;
    std::uint64_t seed = 0;
    std::vector<QmlEpoch> history; // epoch 0 is the initial model
    [[nodiscard]] double final_loss() const { return history.back().train_loss; }
    [[nodiscard]] double final_accuracy() const {
        return history.back().test_accuracy;
    }
};

/// Encoding slots "x1", "x2", "x1_re", "x2_re" then trainable "t1".."t8".
[[nodiscard]] ParamCircuit qml_circuit();
[[nodiscard]] FockState qml_input();

/// Normalized mean photon counts <n_j> / n of the circuit output.
[[nodiscard]] Eigen::VectorXd mode_means(const ParamCircuit &c,
                                         std::span<const double> values,
                                         const FockState &input);

/**
 * @brief Trains one model. Data, initial weights and shuffles depend only
 * on @p seed, so methods sharing a seed start from the same model.
 *
 * GPSR differentiates the pulled-back observable sum_j (dL/dz_j / n) n_j.
 * Finite differences act on the model output, with photon means sampled
 * at x +- h from half the shots each.
 */
[[nodiscard]] QmlRun train_qml(const QmlConfig &config, const QmlMethod &method,
                               std::uint64_t seed);

} // namespace fockgrad
