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

#include "fockgrad/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fockgrad/error.hpp"
#include "fockgrad/rng.hpp"

namespace fockgrad {

std::vector<long long> allocate(const ShiftRule &rule,
                                const ShotAllocation &alloc) {
    const auto n_shifts = static_cast<long long>(rule.size());
    std::vector<long long> shots(rule.size(), 0);
    if (n_shifts == 0) {
        return shots;
    }
    FOCKGRAD_REQUIRE(alloc.total >= n_shifts,
                     "shot budget is smaller than the number of shifts");
    if (alloc.strategy == Allocation::Uniform) {
        std::fill(shots.begin(), shots.end(), alloc.total / n_shifts);
        return shots;
    }

    const double norm = rule.weight_norm();
    FOCKGRAD_REQUIRE(norm > 0.0, "one-norm allocation needs a nonzero rule");
    long long used = 0;
    for (std::size_t mu = 0; mu < rule.size(); ++mu) {
        const double share = static_cast<double>(alloc.total) *
                             std::abs(rule.weights[mu]) / norm;
        shots[mu] = std::max<long long>(1, static_cast<long long>(share));
        used += shots[mu];
    }
    std::vector<std::size_t> order(rule.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(rule.weights[a]) > std::abs(rule.weights[b]);
    });
    // The floor to 1 can overshoot on tiny budgets; take shots back from the
    // largest entries in that case.
    for (std::size_t i = 0; used > alloc.total; i = (i + 1) % order.size()) {
        if (shots[order[i]] > 1) {
            --shots[order[i]];
            --used;
        }
    }
    for (std::size_t i = 0; used < alloc.total; i = (i + 1) % order.size()) {
        ++shots[order[i]];
        ++used;
    }
    return shots;
}

std::vector<long long> multinomial_counts(const Eigen::VectorXd &probabilities,
                                          long long shots, std::mt19937_64 &rng) {
    const auto d = static_cast<std::size_t>(probabilities.size());
    std::vector<long long> counts(d, 0);
    long long left = shots;
    double mass = probabilities.sum();
    for (std::size_t i = 0; i + 1 < d && left > 0; ++i) {
        const double p = std::max(0.0, probabilities(static_cast<Eigen::Index>(i)));
        const double q = mass > 0.0 ? std::clamp(p / mass, 0.0, 1.0) : 0.0;
        if (q > 0.0) {
            std::binomial_distribution<long long> draw(left, q);
            counts[i] = draw(rng);
            left -= counts[i];
        }
        mass -= p;
    }
    if (d > 0) {
        counts[d - 1] += left;
    }
    return counts;
}

double sample_mean(const Eigen::VectorXd &probabilities,
                   const Eigen::VectorXd &eigenvalues, long long shots,
                   std::mt19937_64 &rng) {
    FOCKGRAD_REQUIRE(shots >= 1, "sampling needs at least one shot");
    FOCKGRAD_REQUIRE(probabilities.size() == eigenvalues.size(),
                     "probability and eigenvalue vectors differ in length");
    const auto counts = multinomial_counts(probabilities, shots, rng);
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        total += static_cast<double>(counts[i]) *
                 eigenvalues(static_cast<Eigen::Index>(i));
    }
    return total / static_cast<double>(shots);
}

double shot_variance(const Eigen::VectorXd &probabilities,
                     const Eigen::VectorXd &eigenvalues) {
    const double mean = probabilities.dot(eigenvalues);
    return probabilities.dot(eigenvalues.cwiseAbs2()) - mean * mean;
}

double sample_expectation(const ParamCircuit &c, std::span<const double> values,
                          const FockState &input, const Observable &obs,
                          long long shots, std::uint64_t seed) {
    if (!obs.is_diagonal()) {
        throw UnsupportedMeasurementError(
            "only Fock-diagonal observables can be sampled");
    }
    const StateVector psi = output_state(c, values, input);
    const SectorObservable sector(obs, psi.basis);
    auto rng = make_rng(seed);
    return sample_mean(psi.amplitudes.cwiseAbs2(), sector.eigenvalues(), shots,
                       rng);
}

double sampled_gradient(const ExpectationFn &f, const ShiftRule &rule,
                        const ShotAllocation &alloc, std::uint64_t seed) {
    const auto &eig = f.observable().eigenvalues();
    const auto shots = allocate(rule, alloc);
    const double c = rule.chain_factor;
    const double x = f.base_value();
    double total = 0.0;
    for (std::size_t mu = 0; mu < rule.size(); ++mu) {
        auto rng = make_rng(seed, {mu});
        total += rule.weights[mu] *
                 sample_mean(f.probabilities(x + rule.shifts[mu] / c), eig,
                             shots[mu], rng);
    }
    return std::pow(c, rule.order) * total;
}

double sampled_finite_difference(const ExpectationFn &f, double h,
                                 long long total_shots, std::uint64_t seed) {
    FOCKGRAD_REQUIRE(h > 0.0, "finite difference step must be positive");
    FOCKGRAD_REQUIRE(total_shots >= 2, "finite differences need two shots");
    const auto &eig = f.observable().eigenvalues();
    const long long half = total_shots / 2;
    const double x = f.base_value();
    auto rng_plus = make_rng(seed, {0});
    auto rng_minus = make_rng(seed, {1});
    const double plus = sample_mean(f.probabilities(x + h), eig, half, rng_plus);
    const double minus = sample_mean(f.probabilities(x - h), eig, half, rng_minus);
    return (plus - minus) / (2.0 * h);
}

std::vector<LossTerm> lossy_input_mixture(const FockState &input, double eta) {
    FOCKGRAD_REQUIRE(eta >= 0.0 && eta <= 1.0, "transmission must lie in [0, 1]");
    std::vector<LossTerm> terms{{FockState::vacuum(0), 1.0}};
    for (std::size_t i = 0; i < input.modes(); ++i) {
        const int n = input[i];
        std::vector<LossTerm> next;
        for (const LossTerm &t : terms) {
            double binom = 1.0;
            for (int k = 0; k <= n; ++k) {
                if (k > 0) {
                    binom = binom * (n - k + 1) / k;
                }
                const double p = binom * std::pow(eta, k) *
                                 std::pow(1.0 - eta, n - k);
                std::vector<int> occ(t.state.occupations().begin(),
                                     t.state.occupations().end());
                occ.push_back(k);
                next.push_back({FockState(std::move(occ)), t.probability * p});
            }
        }
        terms = std::move(next);
    }
    return terms;
}

double lossy_expectation(const ParamCircuit &c, std::span<const double> values,
                         const FockState &input, const Observable &obs,
                         double eta) {
    double total = 0.0;
    for (const LossTerm &t : lossy_input_mixture(input, eta)) {
        if (t.probability > 0.0) {
            total += t.probability * evaluate(c, values, t.state, obs);
        }
    }
    return total;
}

LossyExpectationFn::LossyExpectationFn(const ParamCircuit &c,
                                       const FockState &input,
                                       const Observable &obs,
                                       const std::vector<double> &values,
                                       std::size_t slot, double eta) {
    for (const LossTerm &t : lossy_input_mixture(input, eta)) {
        if (t.probability > 0.0) {
            sectors_.emplace_back(c, t.state, obs, values, slot);
            weights_.push_back(t.probability);
        }
    }
}

double LossyExpectationFn::operator()(double x) const {
    double total = 0.0;
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
        total += weights_[i] * sectors_[i](x);
    }
    return total;
}

std::string MseMethod::name() const {
    switch (kind) {
    case MseMethodKind::GpsrUniform:
        return "gpsr-uniform";
    case MseMethodKind::GpsrOneNorm:
        return "gpsr-1norm";
    case MseMethodKind::GpsrModifiedOneNorm:
        return "gpsr-modified-1norm";
    case MseMethodKind::FdOptimal:
        return "fd-optimal";
    case MseMethodKind::FdFixed:
        break;
    }
    std::ostringstream os;
    os << "fd(" << step << ")";
    return os.str();
}

MseMethod MseMethod::parse(const std::string &name) {
    if (name == "gpsr-uniform") {
        return {MseMethodKind::GpsrUniform};
    }
    if (name == "gpsr-1norm") {
        return {MseMethodKind::GpsrOneNorm};
    }
    if (name == "gpsr-modified-1norm") {
        return {MseMethodKind::GpsrModifiedOneNorm};
    }
    if (name == "fd-optimal") {
        return {MseMethodKind::FdOptimal};
    }
    if (name.rfind("fd(", 0) == 0 && name.back() == ')') {
        try {
            const double h = std::stod(name.substr(3, name.size() - 4));
            if (h > 0.0) {
                return {MseMethodKind::FdFixed, h};
            }
        } catch (const std::exception &) {
        }
    }
    throw ConfigError("unknown estimator '" + name + "'");
}

namespace {

struct ErrorStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    double sum_fourth = 0.0;
    double within_var = 0.0;
    long long count = 0;
};

ShiftRule rule_for(MseMethodKind kind, int r, ParamKind pk) {
    return kind == MseMethodKind::GpsrModifiedOneNorm ? first_order_rule(r, pk)
                                                      : gpsr_rule(r, 1, pk);
}

} // namespace

std::vector<MseRow> mse_experiment(const MseConfig &cfg) {
    FOCKGRAD_REQUIRE(!cfg.observables.empty(), "mse_experiment needs an observable");
    FOCKGRAD_REQUIRE(cfg.repetitions >= 2, "mse_experiment needs >= 2 repetitions");
    FOCKGRAD_REQUIRE(cfg.parameter_sets >= 1, "mse_experiment needs a parameter set");
    const ParamKind pk = cfg.circuit.kind_of(cfg.slot);
    const std::size_t n_methods = cfg.methods.size();
    const std::size_t n_budgets = cfg.shot_budgets.size();
    std::vector<ErrorStats> stats(n_methods * n_budgets);

    for (int p = 0; p < cfg.parameter_sets; ++p) {
        auto prng = make_rng(cfg.seed, {0x70617261ULL, static_cast<std::uint64_t>(p)});
        std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
        std::vector<double> values(cfg.circuit.num_params());
        for (double &v : values) {
            v = angle(prng);
        }
        const Observable &obs =
            cfg.observables[static_cast<std::size_t>(p) % cfg.observables.size()];
        const ExpectationFn f(cfg.circuit, cfg.input, obs, values, cfg.slot);
        const int r = slot_frequencies(cfg.circuit, cfg.slot, obs, cfg.input);
        const double x = f.base_value();
        const double truth = apply_rule(f, x, gpsr_rule(r, 1, pk));
        const double f3 = apply_rule(f, x, gpsr_rule(r, 3, pk));
        const Eigen::VectorXd &eig = f.observable().eigenvalues();
        const Eigen::VectorXd p0 = f.probabilities(x);

        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            const MseMethod &method = cfg.methods[mi];
            const bool is_gpsr = method.kind == MseMethodKind::GpsrUniform ||
                                 method.kind == MseMethodKind::GpsrOneNorm ||
                                 method.kind == MseMethodKind::GpsrModifiedOneNorm;
            ShiftRule rule;
            std::vector<Eigen::VectorXd> shifted;
            if (is_gpsr) {
                rule = rule_for(method.kind, r, pk);
                for (std::size_t mu = 0; mu < rule.size(); ++mu) {
                    shifted.push_back(
                        f.probabilities(x + rule.shifts[mu] / rule.chain_factor));
                }
            } else if (method.kind == MseMethodKind::FdFixed) {
                shifted.push_back(f.probabilities(x + method.step));
                shifted.push_back(f.probabilities(x - method.step));
            }
            const ShotAllocation alloc{
                method.kind == MseMethodKind::GpsrUniform ? Allocation::Uniform
                                                          : Allocation::OneNorm,
                0};

            for (std::size_t bi = 0; bi < n_budgets; ++bi) {
                const long long n_tot = cfg.shot_budgets[bi];
                std::vector<double> errors(static_cast<std::size_t>(cfg.repetitions));
                std::vector<long long> shots;
                if (is_gpsr) {
                    shots = allocate(rule, ShotAllocation{alloc.strategy, n_tot});
                }
#pragma omp parallel for schedule(dynamic)
                for (int rep = 0; rep < cfg.repetitions; ++rep) {
                    const std::uint64_t stream_seed = derive_seed(
                        cfg.seed, {static_cast<std::uint64_t>(p), mi, bi,
                                   static_cast<std::uint64_t>(rep)});
                    double estimate = 0.0;
                    if (is_gpsr) {
                        double total = 0.0;
                        for (std::size_t mu = 0; mu < rule.size(); ++mu) {
                            auto rng = make_rng(stream_seed, {mu});
                            total += rule.weights[mu] *
                                     sample_mean(shifted[mu], eig, shots[mu], rng);
                        }
                        estimate = rule.chain_factor * total;
                    } else {
                        const long long half = n_tot / 2;
                        double h = method.step;
                        Eigen::VectorXd plus;
                        Eigen::VectorXd minus;
                        if (method.kind == MseMethodKind::FdOptimal) {
                            auto pilot = make_rng(stream_seed, {2});
                            const auto counts =
                                multinomial_counts(p0, cfg.pilot_shots, pilot);
                            double s1 = 0.0;
                            double s2 = 0.0;
                            for (std::size_t i = 0; i < counts.size(); ++i) {
                                const double lam = eig(static_cast<Eigen::Index>(i));
                                s1 += static_cast<double>(counts[i]) * lam;
                                s2 += static_cast<double>(counts[i]) * lam * lam;
                            }
                            const double np = cfg.pilot_shots;
                            const double sigma2 = (s2 - s1 * s1 / np) / (np - 1.0);
                            h = cfg.max_fd_step;
                            if (sigma2 > 0.0 && std::abs(f3) > 1e-12) {
                                h = std::min(h, optimal_fd_step(sigma2, std::abs(f3),
                                                                static_cast<double>(half)));
                            }
                            plus = f.probabilities(x + h);
                            minus = f.probabilities(x - h);
                        }
                        const Eigen::VectorXd &pp = plus.size() ? plus : shifted[0];
                        const Eigen::VectorXd &pm = minus.size() ? minus : shifted[1];
                        auto rng_plus = make_rng(stream_seed, {0});
                        auto rng_minus = make_rng(stream_seed, {1});
                        estimate = (sample_mean(pp, eig, half, rng_plus) -
                                    sample_mean(pm, eig, half, rng_minus)) /
                                   (2.0 * h);
                    }
                    errors[static_cast<std::size_t>(rep)] = estimate - truth;
                }
                ErrorStats &s = stats[mi * n_budgets + bi];
                double mean = 0.0;
                for (double e : errors) {
                    mean += e;
                }
                mean /= static_cast<double>(errors.size());
                double var = 0.0;
                for (double e : errors) {
                    s.sum += e;
                    s.sum_sq += e * e;
                    s.sum_fourth += e * e * e * e;
                    var += (e - mean) * (e - mean);
                }
                s.within_var += var / static_cast<double>(errors.size() - 1);
                s.count += static_cast<long long>(errors.size());
            }
        }
    }

    std::vector<MseRow> rows;
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
        for (std::size_t bi = 0; bi < n_budgets; ++bi) {
            const ErrorStats &s = stats[mi * n_budgets + bi];
            const double n = static_cast<double>(s.count);
            MseRow row;
            row.method = cfg.methods[mi].name();
            row.n_tot = cfg.shot_budgets[bi];
            row.mse = s.sum_sq / n;
            const double var_sq = std::max(0.0, s.sum_fourth / n - row.mse * row.mse);
            row.stderr_ = std::sqrt(var_sq / n);
            row.bias = s.sum / n;
            row.variance = s.within_var / cfg.parameter_sets;
            rows.push_back(row);
        }
    }
    return rows;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    FOCKGRAD_REQUIRE(x.size() == y.size() && x.size() >= 2,
                     "slope fit needs at least two points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        FOCKGRAD_REQUIRE(x[i] > 0.0 && y[i] > 0.0, "log-log fit needs positive data");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace fockgrad
