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

#include "fockgrad/qml.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fockgrad/error.hpp"
#include "fockgrad/expectation.hpp"
#include "fockgrad/gradient.hpp"
#include "fockgrad/rng.hpp"

namespace fockgrad {

namespace {

constexpr std::size_t kEncodingSlots = 4;
constexpr std::size_t kTrainableSlots = 8;

enum Stream : std::uint64_t { kTrainData = 1, kTestData, kInit, kShuffle, kShots };

} // namespace

CircleDataset make_circles(std::size_t n, double noise, double factor,
                           std::uint64_t seed) {
    FOCKGRAD_REQUIRE(factor > 0.0 && factor < 1.0, "factor must lie in (0, 1)");
    FOCKGRAD_REQUIRE(noise >= 0.0, "noise must be non-negative");
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, noise);
    const std::size_t n_outer = n / 2;
    const std::size_t n_inner = n - n_outer;
    CircleDataset out;
    auto ring = [&](std::size_t count, double radius, int label) {
        for (std::size_t i = 0; i < count; ++i) {
            const double t = 2.0 * kPi * static_cast<double>(i) /
                             static_cast<double>(count);
            const double dx = noise > 0.0 ? gauss(rng) : 0.0;
            const double dy = noise > 0.0 ? gauss(rng) : 0.0;
            out.points.push_back({radius * std::cos(t) + dx, radius * std::sin(t) + dy});
            out.labels.push_back(label);
        }
    };
    ring(n_outer, 1.0, 0);
    ring(n_inner, factor, 1);
    std::vector<std::size_t> order(out.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    CircleDataset shuffled;
    for (std::size_t i : order) {
        shuffled.points.push_back(out.points[i]);
        shuffled.labels.push_back(out.labels[i]);
    }
    return shuffled;
}

FeatureScaler FeatureScaler::fit(const CircleDataset &data) {
    FOCKGRAD_REQUIRE(data.size() >= 2, "need at least two points to scale");
    FeatureScaler s;
    for (std::size_t f = 0; f < 2; ++f) {
        s.lo[f] = s.hi[f] = data.points[0][f];
        for (const auto &p : data.points) {
            s.lo[f] = std::min(s.lo[f], p[f]);
            s.hi[f] = std::max(s.hi[f], p[f]);
        }
    }
    return s;
}

double FeatureScaler::operator()(std::size_t feature, double x) const {
    const double span = hi[feature] - lo[feature];
    const double u = span > 0.0 ? (x - lo[feature]) / span : 0.5;
    return std::clamp(kPi * (u - 0.5), -kPi / 2, kPi / 2);
}

Mlp::Mlp() : alpha_(Eigen::VectorXd::Zero(kParams)) {}

Mlp Mlp::glorot(std::mt19937_64 &rng) {
    Mlp m;
    const double l1 = std::sqrt(6.0 / (kInputs + kHidden));
    const double l2 = std::sqrt(6.0 / (kHidden + 1));
    std::uniform_real_distribution<double> u1(-l1, l1), u2(-l2, l2);
    int k = 0;
    for (int i = 0; i < kHidden * kInputs; ++i) {
        m.alpha_(k++) = u1(rng);
    }
    k += kHidden;
    for (int i = 0; i < kHidden; ++i) {
        m.alpha_(k++) = u2(rng);
    }
    return m;
}

double Mlp::operator()(const Eigen::VectorXd &z) const { return backward(z).output; }

Mlp::Gradients Mlp::backward(const Eigen::VectorXd &z) const {
    FOCKGRAD_REQUIRE(z.size() == kInputs, "MLP input has the wrong length");
    const Eigen::Map<const Eigen::Matrix<double, kHidden, kInputs, Eigen::RowMajor>>
        w1(alpha_.data());
    const Eigen::Map<const Eigen::Matrix<double, kHidden, 1>> b1(
        alpha_.data() + kHidden * kInputs);
    const Eigen::Map<const Eigen::Matrix<double, kHidden, 1>> w2(
        alpha_.data() + kHidden * kInputs + kHidden);
    const double b2 = alpha_(kParams - 1);

    const Eigen::Matrix<double, kHidden, 1> a1 = w1 * z + b1;
    const Eigen::Matrix<double, kHidden, 1> h1 = a1.unaryExpr(&elu);
    const double a2 = w2.dot(h1) + b2;
    const double h2 = elu(a2);
    const double y = sigmoid(h2);

    Gradients g;
    g.output = y;
    const double dh2 = y * (1.0 - y);
    const double da2 = dh2 * elu_derivative(a2);
    const Eigen::Matrix<double, kHidden, 1> da1 =
        (da2 * w2).cwiseProduct(a1.unaryExpr(&elu_derivative));
    g.params.resize(kParams);
    Eigen::Map<Eigen::Matrix<double, kHidden, kInputs, Eigen::RowMajor>> gw1(
        g.params.data());
    gw1 = da1 * z.transpose();
    g.params.segment(kHidden * kInputs, kHidden) = da1;
    g.params.segment(kHidden * kInputs + kHidden, kHidden) = da2 * h1;
    g.params(kParams - 1) = da2;
    g.input = w1.transpose() * da1;
    return g;
}

void Adam::step(Eigen::VectorXd &x, const Eigen::VectorXd &grad) {
    if (m_.size() != x.size()) {
        m_ = Eigen::VectorXd::Zero(x.size());
        v_ = Eigen::VectorXd::Zero(x.size());
        t_ = 0;
    }
    ++t_;
    m_ = beta1 * m_ + (1.0 - beta1) * grad;
    v_ = beta2 * v_ + (1.0 - beta2) * grad.cwiseAbs2();
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
    x.array() -= learning_rate * (m_.array() / c1) /
                 ((v_.array() / c2).sqrt() + epsilon);
}

std::string QmlMethod::name() const {
    switch (kind) {
    case QmlGradient::Exact:
        return "exact";
    case QmlGradient::Gpsr:
        return "gpsr";
    case QmlGradient::FiniteDifference:
        break;
    }
    std::ostringstream os;
    os << "fd(" << step << ")";
    return os.str();
}

QmlMethod QmlMethod::parse(const std::string &name) {
    if (name == "exact") {
        return {QmlGradient::Exact};
    }
    if (name == "gpsr") {
        return {QmlGradient::Gpsr};
    }
    if (name.rfind("fd(", 0) == 0 && name.back() == ')') {
        try {
            const double h = std::stod(name.substr(3, name.size() - 4));
            if (h > 0.0) {
                return {QmlGradient::FiniteDifference, h};
            }
        } catch (const std::exception &) {
        }
    }
    throw ConfigError("unknown QML gradient method '" + name + "'");
}

ParamCircuit qml_circuit() {
    ParamCircuit c(5);
    std::vector<Param> enc;
    for (const char *name : {"x1", "x2", "x1_re", "x2_re"}) {
        enc.push_back(c.add_parameter(name));
    }
    std::vector<Param> t;
    for (std::size_t k = 1; k <= kTrainableSlots; ++k) {
        t.push_back(c.add_parameter("t" + std::to_string(k)));
    }
    const Param zero = Param::frozen(0.0);
    for (std::size_t block = 0; block < 2; ++block) {
        const std::size_t o = 4 * block;
        c.beamsplitter(0, 1, enc[2 * block], zero);
        c.beamsplitter(2, 3, enc[2 * block + 1], zero);
        c.beamsplitter(1, 2, t[o], zero);
        c.beamsplitter(3, 4, t[o + 1], zero);
        c.beamsplitter(0, 1, t[o + 2], zero);
        c.beamsplitter(2, 3, t[o + 3], zero);
    }
    c.validate();
    return c;
}

FockState qml_input() { return FockState{1, 0, 1, 0, 1}; }

Eigen::VectorXd mode_means(const ParamCircuit &c, std::span<const double> values,
                           const FockState &input) {
    const StateVector psi = output_state(c, values, input);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c.modes()));
    for (std::size_t s = 0; s < psi.basis->dimension(); ++s) {
        const double p = std::norm(psi.amplitudes(static_cast<Eigen::Index>(s)));
        const FockState &state = (*psi.basis)[s];
        for (std::size_t j = 0; j < c.modes(); ++j) {
            z(static_cast<Eigen::Index>(j)) += p * state[j];
        }
    }
    return z / std::max(1, input.photons());
}

namespace {

struct Model {
    ParamCircuit circuit = qml_circuit();
    FockState input = qml_input();
    std::vector<double> values;
    Mlp mlp;
    FeatureScaler scaler;

    void encode(const std::array<double, 2> &x) {
        values[0] = values[2] = scaler(0, x[0]);
        values[1] = values[3] = scaler(1, x[1]);
    }

    double predict(const std::array<double, 2> &x) {
        encode(x);
        return mlp(mode_means(circuit, values, input));
    }

    QmlEpoch evaluate(int epoch, const CircleDataset &train,
                      const CircleDataset &test) {
        QmlEpoch e;
        e.epoch = epoch;
        for (std::size_t i = 0; i < train.size(); ++i) {
            const double r = predict(train.points[i]) - train.labels[i];
            e.train_loss += r * r;
        }
        e.train_loss /= static_cast<double>(train.size());
        std::size_t hits = 0;
        for (std::size_t i = 0; i < test.size(); ++i) {
            const int guess = predict(test.points[i]) >= 0.5 ? 1 : 0;
            hits += guess == test.labels[i] ? 1 : 0;
        }
        e.test_accuracy = test.size() == 0
                              ? 0.0
                              : static_cast<double>(hits) /
                                    static_cast<double>(test.size());
        return e;
    }
};

/// d<O>/d theta_slot for the current encoding, by the requested method.
double circuit_derivative(const Model &model, const Observable &obs,
                          std::size_t slot, const QmlMethod &method,
                          long long shots, std::uint64_t seed) {
    const ExpectationFn f(model.circuit, model.input, obs, model.values, slot);
    const double x = model.values[slot];
    switch (method.kind) {
    case QmlGradient::Exact: {
        const int r = slot_frequencies(model.circuit, slot, obs, model.input);
        return apply_rule(std::cref(f), x,
                          gpsr_rule(r, 1, model.circuit.kind_of(slot)));
    }
    case QmlGradient::Gpsr: {
        const int r = slot_frequencies(model.circuit, slot, obs, model.input);
        return sampled_gradient(f, gpsr_rule(r, 1, model.circuit.kind_of(slot)),
                                {Allocation::OneNorm, shots}, seed);
    }
    case QmlGradient::FiniteDifference:
        break;
    }
    return sampled_finite_difference(f, method.step, shots, seed);
}

/// Per-mode photon means from @p shots counting samples, divided by n.
Eigen::VectorXd sampled_mode_means(const Model &model, std::span<const double> values,
                                   long long shots, std::uint64_t seed) {
    const StateVector psi = output_state(model.circuit, values, model.input);
    const Eigen::VectorXd p = psi.amplitudes.cwiseAbs2();
    auto rng = make_rng(seed);
    const auto counts = multinomial_counts(p, shots, rng);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.circuit.modes()));
    for (std::size_t s = 0; s < counts.size(); ++s) {
        const FockState &state = (*psi.basis)[s];
        for (std::size_t j = 0; j < model.circuit.modes(); ++j) {
            z(static_cast<Eigen::Index>(j)) += static_cast<double>(counts[s] * state[j]);
        }
    }
    return z / (static_cast<double>(shots) * std::max(1, model.input.photons()));
}

/// Central difference of the model output from sampled photon means.
double output_difference(const Model &model, std::size_t slot, double h,
                         long long shots, std::uint64_t seed) {
    std::vector<double> v = model.values;
    v[slot] += h;
    const double plus = model.mlp(sampled_mode_means(model, v, shots / 2, derive_seed(seed, {0})));
    v[slot] -= 2.0 * h;
    const double minus = model.mlp(sampled_mode_means(model, v, shots / 2, derive_seed(seed, {1})));
    return (plus - minus) / (2.0 * h);
}

} // namespace

QmlRun train_qml(const QmlConfig &cfg, const QmlMethod &method,
                 std::uint64_t seed) {
    FOCKGRAD_REQUIRE(cfg.train_size >= 2, "need at least two training points");
    FOCKGRAD_REQUIRE(cfg.batch_size >= 1, "batch size must be positive");
    FOCKGRAD_REQUIRE(cfg.epochs >= 0, "epoch count must be non-negative");
    const CircleDataset train = make_circles(
        cfg.train_size, cfg.noise, cfg.factor, derive_seed(seed, {kTrainData}));
    const CircleDataset test = make_circles(cfg.test_size, cfg.noise, cfg.factor,
                                            derive_seed(seed, {kTestData}));

    Model model;
    model.scaler = FeatureScaler::fit(train);
    auto init = make_rng(seed, {kInit});
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    model.values.assign(model.circuit.num_params(), 0.0);
    for (std::size_t k = kEncodingSlots; k < model.values.size(); ++k) {
        model.values[k] = angle(init);
    }
    model.mlp = Mlp::glorot(init);
    Adam adam = cfg.adam;

    QmlRun run;
    run.method = method.name();
    run.seed = seed;
    run.history.push_back(model.evaluate(0, train, test));

    auto shuffle_rng = make_rng(seed, {kShuffle});
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::uint64_t step = 0;
    const double n_photons = model.input.photons();
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        for (std::size_t start = 0; start < order.size();
             start += cfg.batch_size, ++step) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            const double scale = 1.0 / static_cast<double>(end - start);
            Eigen::VectorXd grad_alpha = Eigen::VectorXd::Zero(Mlp::kParams);
            std::vector<double> grad_theta(kTrainableSlots, 0.0);
            for (std::size_t b = start; b < end; ++b) {
                const std::size_t i = order[b];
                model.encode(train.points[i]);
                const auto g =
                    model.mlp.backward(mode_means(model.circuit, model.values,
                                                  model.input));
                const double dl_dy = 2.0 * (g.output - train.labels[i]) * scale;
                grad_alpha += dl_dy * g.params;
                // dL/dz . z is the expectation of sum_j w_j n_j / n.
                NumberPolynomial pullback;
                for (int j = 0; j < Mlp::kInputs; ++j) {
                    std::vector<int> powers(model.circuit.modes(), 0);
                    powers[static_cast<std::size_t>(j)] = 1;
                    pullback.terms.push_back(
                        {std::move(powers), dl_dy * g.input(j) / n_photons});
                }
                const Observable obs(std::move(pullback));
                if (method.kind == QmlGradient::FiniteDifference) {
                    for (std::size_t k = 0; k < kTrainableSlots; ++k) {
                        grad_theta[k] += dl_dy * output_difference(
                            model, kEncodingSlots + k, method.step, cfg.shots,
                            derive_seed(seed, {kShots, step, b, k}));
                    }
                    continue;
                }
                for (std::size_t k = 0; k < kTrainableSlots; ++k) {
                    grad_theta[k] += circuit_derivative(
                        model, obs, kEncodingSlots + k, method, cfg.shots,
                        derive_seed(seed, {kShots, step, b, k}));
                }
            }
            for (std::size_t k = 0; k < kTrainableSlots; ++k) {
                model.values[kEncodingSlots + k] -=
                    cfg.theta_learning_rate * grad_theta[k];
            }
            if (cfg.train_mlp) {
                adam.step(model.mlp.params(), grad_alpha);
            }
        }
        run.history.push_back(model.evaluate(epoch, train, test));
    }
    return run;
}

} // namespace fockgrad
