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

#include "fockgrad/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "fockgrad/bell.hpp"
#include "fockgrad/circuit_io.hpp"
#include "fockgrad/config.hpp"
#include "fockgrad/error.hpp"
#include "fockgrad/expectation.hpp"
#include "fockgrad/gradient.hpp"
#include "fockgrad/qml.hpp"
#include "fockgrad/rng.hpp"
#include "fockgrad/sampler.hpp"

namespace fockgrad {

using nlohmann::json;

namespace {

ParamCircuit circuit_or(const json &cfg, Scheme scheme, std::size_t modes) {
    if (cfg.contains("circuit")) {
        return circuit_from_json(cfg.at("circuit"));
    }
    return build_scheme(scheme, modes);
}

std::size_t slot_from_json(const json &j, const ParamCircuit &c) {
    try {
        if (j.is_string()) {
            return c.param_index(j.get<std::string>());
        }
        const auto slot = j.get<std::size_t>();
        if (slot >= c.num_params()) {
            throw ConfigError("slot index " + std::to_string(slot) + " is out of range");
        }
        return slot;
    } catch (const std::out_of_range &) {
        throw ConfigError("unknown slot '" + j.get<std::string>() + "'");
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed slot: ") + e.what());
    }
}

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::vector<double> v(n);
    for (double &x : v) {
        x = angle(rng);
    }
    return v;
}

std::string kind_name(ParamKind k) {
    return k == ParamKind::BeamsplitterAngle ? "theta" : "phase";
}

json default_observable_doc() {
    return json{{"type", "random_diagonal"}, {"lo", -5.0}, {"hi", 5.0}};
}

} // namespace

CommandResult cmd_spectrum(const json &in, std::uint64_t seed) {
    CommandResult out;
    json cfg = in;
    const FockState input =
        fock_state_from_json(config_value(cfg, "input", json{2, 1, 1, 1}));
    const std::size_t m = input.modes();
    const int n = input.photons();
    const int circuits = config_value(cfg, "circuits", 20);
    const auto mode = config_value<std::size_t>(cfg, "mode", 0);
    if (mode >= m) {
        throw ConfigError("spectrum mode is out of range");
    }
    if (!cfg.contains("observables")) {
        cfg["observables"] = json::array();
        std::string label;
        for (std::size_t p = 1; p <= std::min<std::size_t>(3, m); ++p) {
            std::vector<int> powers(m, 0);
            std::fill_n(powers.begin(), p, 1);
            label += "n" + std::to_string(p - 1);
            cfg["observables"].push_back(
                {{"type", "number_polynomial"},
                 {"terms", {{{"powers", powers}, {"coefficient", 1.0}}}},
                 {"label", label}});
        }
        cfg["observables"].push_back({{"type", "random_diagonal"}, {"label", "random"}});
    }
    cfg["input"] = input.occupations();
    cfg["circuits"] = circuits;
    cfg["mode"] = mode;
    out.config = cfg;

    std::vector<Observable> observables;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < cfg.at("observables").size(); ++k) {
        const json &doc = cfg.at("observables").at(k);
        observables.push_back(
            observable_from_json(doc, m, n, derive_seed(seed, {0x6f6273ULL, k})));
        labels.push_back(doc.value("label", "obs" + std::to_string(k)));
    }

    Table t{{"circuit", "observable", "bound", "omega", "abs_c"}, {}};
    std::vector<double> worst(observables.size(), 0.0);
    for (int ci = 0; ci < circuits; ++ci) {
        auto rng = make_rng(seed, {0x63697263ULL, static_cast<std::uint64_t>(ci)});
        ParamCircuit c(m);
        std::vector<std::size_t> all(m);
        for (std::size_t i = 0; i < m; ++i) {
            all[i] = i;
        }
        c.fixed(all, haar_unitary(m, rng).matrix());
        c.phaseshifter(mode, c.add_parameter("phi"));
        c.fixed(all, haar_unitary(m, rng).matrix());
        for (std::size_t k = 0; k < observables.size(); ++k) {
            const ExpectationFn f(c, input, observables[k], {0.0}, 0);
            const auto coeffs = fourier_coefficients(std::cref(f), n);
            const int bound = frequency_bound(observables[k], n);
            for (int w = -n; w <= n; ++w) {
                const double a = std::abs(coeffs[w]);
                t.add({static_cast<long long>(ci), labels[k],
                       static_cast<long long>(bound), static_cast<long long>(w), a});
                if (std::abs(w) > bound) {
                    worst[k] = std::max(worst[k], a);
                }
            }
        }
    }
    out.tables["spectrum"] = std::move(t);
    for (std::size_t k = 0; k < observables.size(); ++k) {
        out.summary["max_abs_c_beyond_bound"][labels[k]] = worst[k];
    }
    return out;
}

CommandResult cmd_gradcheck(const json &in, std::uint64_t seed) {
    CommandResult out;
    json cfg = in;
    ParamCircuit c = circuit_or(cfg, Scheme::Rectangular, 4);
    const FockState input = fock_state_from_json(
        config_value(cfg, "input", json(alternating_fill(c.modes(), 0.5).occupations())));
    if (input.modes() != c.modes()) {
        throw ConfigError("input state and circuit mode counts differ");
    }
    const int n = input.photons();
    const int order = config_value(cfg, "order", 1);
    const int instances = config_value(cfg, "instances", 1);
    if (order != 1 && order != 2) {
        throw ConfigError("gradcheck supports order 1 or 2");
    }
    cfg["circuit"] = circuit_to_json(c);
    cfg["input"] = input.occupations();
    cfg["order"] = order;
    cfg["instances"] = instances;
    cfg["observable"] = config_value(cfg, "observable", default_observable_doc());
    out.config = cfg;
    const Observable obs = observable_from_json(cfg.at("observable"), c.modes(), n,
                                                derive_seed(seed, {0x6f6273ULL}));

    std::vector<std::string> header{"instance", "slot",     "name",      "kind",
                                    "n_a",      "r_full",   "r_cone",    "r_obs",
                                    "gpsr_full", "gpsr_cone", "gpsr_obs", "modified",
                                    "fd_oracle", "max_deviation"};
    if (order == 2) {
        for (const char *h : {"second_gpsr", "second_fd", "second_deviation"}) {
            header.emplace_back(h);
        }
    }
    Table t{header, {}};
    double worst = 0.0;
    double worst_second = 0.0;
    for (int inst = 0; inst < instances; ++inst) {
        const auto values = random_values(
            c.num_params(), derive_seed(seed, {0x76616cULL, static_cast<std::uint64_t>(inst)}));
        for (std::size_t k = 0; k < c.num_params(); ++k) {
            const ExpectationFn f(c, input, obs, values, k);
            const ParamKind kind = c.kind_of(k);
            const int n_a = light_cone(c, k, input).photons;
            const int r_cone = std::min(n, n_a);
            const int r_obs = slot_frequencies(c, k, obs, input);
            const double x = values[k];
            const double full = apply_rule(std::cref(f), x, gpsr_rule(n, 1, kind));
            const double cone = apply_rule(std::cref(f), x, gpsr_rule(r_cone, 1, kind));
            const double reduced = apply_rule(std::cref(f), x, gpsr_rule(r_obs, 1, kind));
            const double modified =
                apply_rule(std::cref(f), x, first_order_rule(r_obs, kind));
            const double fd = richardson_derivative(std::cref(f), x);
            const double dev = std::max({std::abs(full - fd), std::abs(cone - fd),
                                         std::abs(reduced - fd), std::abs(modified - fd)});
            worst = std::max(worst, dev);
            std::vector<Cell> row{static_cast<long long>(inst),
                                  static_cast<long long>(k),
                                  c.param_names()[k],
                                  kind_name(kind),
                                  static_cast<long long>(n_a),
                                  static_cast<long long>(n),
                                  static_cast<long long>(r_cone),
                                  static_cast<long long>(r_obs),
                                  full,
                                  cone,
                                  reduced,
                                  modified,
                                  fd,
                                  dev};
            if (order == 2) {
                const double g2 = apply_rule(std::cref(f), x, gpsr_rule(n, 2, kind));
                const double fd2 = richardson_second_derivative(std::cref(f), x);
                worst_second = std::max(worst_second, std::abs(g2 - fd2));
                row.insert(row.end(), {g2, fd2, std::abs(g2 - fd2)});
            }
            t.add(std::move(row));
        }
    }
    out.tables["gradcheck"] = std::move(t);
    out.summary["max_deviation"] = worst;
    if (order == 2) {
        out.summary["max_second_deviation"] = worst_second;
    }
    return out;
}

CommandResult cmd_mse_scaling(const json &in, std::uint64_t seed) {
    CommandResult out;
    json cfg = in;
    MseConfig mc;
    mc.circuit = circuit_or(cfg, Scheme::Rectangular, 4);
    mc.input = fock_state_from_json(
        config_value(cfg, "input", json(std::vector<int>(mc.circuit.modes(), 1))));
    if (mc.input.modes() != mc.circuit.modes()) {
        throw ConfigError("input state and circuit mode counts differ");
    }
    mc.slot = slot_from_json(config_value(cfg, "slot", json(8)), mc.circuit);
    mc.shot_budgets = config_value(cfg, "shot_budgets",
                                   std::vector<long long>{1000, 10000, 100000, 1000000});
    const auto methods = config_value(
        cfg, "methods",
        std::vector<std::string>{"gpsr-uniform", "gpsr-1norm", "gpsr-modified-1norm",
                                 "fd-optimal", "fd(0.1)"});
    for (const auto &name : methods) {
        mc.methods.push_back(MseMethod::parse(name));
    }
    mc.repetitions = config_value(cfg, "repetitions", 100);
    mc.parameter_sets = config_value(cfg, "parameter_sets", 4);
    mc.pilot_shots = config_value(cfg, "pilot_shots", 100);
    mc.max_fd_step = config_value(cfg, "max_fd_step", 1.0);
    mc.seed = seed;
    const json obs_doc = config_value(cfg, "observable", default_observable_doc());
    for (int p = 0; p < mc.parameter_sets; ++p) {
        mc.observables.push_back(observable_from_json(
            obs_doc, mc.circuit.modes(), mc.input.photons(),
            derive_seed(seed, {0x6f6273ULL, static_cast<std::uint64_t>(p)})));
    }
    cfg["circuit"] = circuit_to_json(mc.circuit);
    cfg["input"] = mc.input.occupations();
    cfg["slot"] = mc.circuit.param_names()[mc.slot];
    cfg["shot_budgets"] = mc.shot_budgets;
    cfg["methods"] = methods;
    cfg["repetitions"] = mc.repetitions;
    cfg["parameter_sets"] = mc.parameter_sets;
    cfg["pilot_shots"] = mc.pilot_shots;
    cfg["max_fd_step"] = mc.max_fd_step;
    cfg["observable"] = obs_doc;
    out.config = cfg;

    const auto rows = mse_experiment(mc);
    Table t{{"method", "n_tot", "mse", "stderr", "bias", "variance"}, {}};
    for (const auto &r : rows) {
        t.add({r.method, r.n_tot, r.mse, r.stderr_, r.bias, r.variance});
    }
    Table slopes{{"method", "slope"}, {}};
    for (const auto &m : mc.methods) {
        std::vector<double> x, y;
        for (const auto &r : rows) {
            if (r.method == m.name()) {
                x.push_back(static_cast<double>(r.n_tot));
                y.push_back(r.mse);
            }
        }
        if (x.size() >= 2) {
            const double s = loglog_slope(x, y);
            slopes.add({m.name(), s});
            out.summary["slopes"][m.name()] = s;
        }
    }
    out.tables["mse"] = std::move(t);
    out.tables["slopes"] = std::move(slopes);
    return out;
}

CommandResult cmd_savings(const json &in, std::uint64_t /*seed*/) {
    CommandResult out;
    json cfg = in;
    const auto schemes = config_value(
        cfg, "schemes", std::vector<std::string>{"triangular", "rectangular", "loop"});
    const auto sizes =
        int_range_from_json(config_value(cfg, "modes", json{{"min", 2}, {"max", 32}}));
    const auto occupancies =
        config_value(cfg, "occupancies", std::vector<double>{0.25, 0.5, 0.75, 1.0});
    cfg["schemes"] = schemes;
    cfg["modes"] = sizes;
    cfg["occupancies"] = occupancies;
    out.config = cfg;

    Table t{{"scheme", "modes", "occupancy", "photons", "total", "reduced", "ratio"}, {}};
    double worst = 0.0;
    for (const auto &name : schemes) {
        const Scheme s = scheme_from_string(name);
        if (s == Scheme::Custom) {
            throw ConfigError("savings needs a named scheme");
        }
        for (long long m : sizes) {
            if (m < 2) {
                throw ConfigError("savings needs at least two modes");
            }
            const ParamCircuit c = build_scheme(s, static_cast<std::size_t>(m));
            for (double occ : occupancies) {
                const FockState input =
                    alternating_fill(static_cast<std::size_t>(m), occ);
                const auto counts = shift_counts(c, input);
                worst = std::max(worst, counts.ratio());
                t.add({name, m, occ, static_cast<long long>(input.photons()),
                       counts.total, counts.reduced, counts.ratio()});
            }
        }
    }
    out.tables["savings"] = std::move(t);
    out.summary["max_ratio"] = worst;
    return out;
}

CommandResult cmd_bell(const json &in, std::uint64_t /*seed*/) {
    CommandResult out;
    json cfg = in;
    const auto deltas = grid_from_json(
        config_value(cfg, "deltas", json{{"min", -0.5}, {"max", 0.5}, {"points", 11}}));
    const int frequencies = config_value(cfg, "frequencies", 4);
    cfg["deltas"] = deltas;
    cfg["frequencies"] = frequencies;
    out.config = cfg;

    const BellSetup setup = bell_setup();
    const auto &c = setup.circuit;
    Table t{{"slot", "name", "delta", "fidelity", "herald_probability", "derivative",
             "fd_oracle", "abs_diff", "status"},
            {}};
    double stationarity = 0.0;
    double worst = 0.0;
    long long degenerate = 0;
    for (std::size_t k = 0; k < c.num_params(); ++k) {
        for (double d : deltas) {
            std::vector<double> v = setup.optimum;
            v[k] += d;
            try {
                const auto fd = fidelity_derivative(setup, v, k, frequencies);
                const ScalarFn fid = [&](double x) {
                    std::vector<double> w = v;
                    w[k] = x;
                    return bell_parts(setup, w).value();
                };
                const double oracle = richardson_derivative(fid, v[k]);
                const double diff = std::abs(fd.derivative - oracle);
                worst = std::max(worst, diff);
                if (d == 0.0) {
                    stationarity = std::max(stationarity, std::abs(fd.derivative));
                }
                t.add({static_cast<long long>(k), c.param_names()[k], d, fd.fidelity,
                       fd.herald_probability, fd.derivative, oracle, diff,
                       std::string("ok")});
            } catch (const DegeneratePostselectionError &) {
                ++degenerate;
                const double nan = std::nan("");
                t.add({static_cast<long long>(k), c.param_names()[k], d, nan, 0.0, nan,
                       nan, nan, std::string("degenerate-herald")});
            }
        }
    }
    const auto opt = bell_parts(setup, setup.optimum);
    out.tables["bell"] = std::move(t);
    out.summary["fidelity_at_optimum"] = opt.value();
    out.summary["herald_probability_at_optimum"] = opt.herald_probability;
    out.summary["max_abs_derivative_at_optimum"] = stationarity;
    out.summary["max_abs_diff_vs_fd"] = worst;
    out.summary["degenerate_points"] = degenerate;
    return out;
}

CommandResult cmd_qml(const json &in, std::uint64_t seed) {
    CommandResult out;
    json cfg = in;
    QmlConfig qc;
    qc.train_size = config_value(cfg, "train", qc.train_size);
    qc.test_size = config_value(cfg, "test", qc.test_size);
    qc.noise = config_value(cfg, "noise", qc.noise);
    qc.factor = config_value(cfg, "factor", qc.factor);
    qc.epochs = config_value(cfg, "epochs", qc.epochs);
    qc.batch_size = config_value(cfg, "batch_size", qc.batch_size);
    qc.shots = config_value(cfg, "shots", qc.shots);
    qc.theta_learning_rate = config_value(cfg, "theta_learning_rate", qc.theta_learning_rate);
    const json adam = config_value(cfg, "adam", json::object());
    qc.adam.learning_rate = config_value(adam, "learning_rate", qc.adam.learning_rate);
    qc.adam.beta1 = config_value(adam, "beta1", qc.adam.beta1);
    qc.adam.beta2 = config_value(adam, "beta2", qc.adam.beta2);
    qc.adam.epsilon = config_value(adam, "epsilon", qc.adam.epsilon);
    const auto method_names = config_value(
        cfg, "methods", std::vector<std::string>{"gpsr", "fd(0.01)", "fd(0.1)", "fd(1)"});
    const int seeds = config_value(cfg, "seeds", 5);
    if (seeds < 1) {
        throw ConfigError("qml needs at least one seed");
    }
    std::vector<QmlMethod> methods;
    for (const auto &name : method_names) {
        methods.push_back(QmlMethod::parse(name));
    }
    cfg = json{{"train", qc.train_size},
               {"test", qc.test_size},
               {"noise", qc.noise},
               {"factor", qc.factor},
               {"epochs", qc.epochs},
               {"batch_size", qc.batch_size},
               {"shots", qc.shots},
               {"theta_learning_rate", qc.theta_learning_rate},
               {"adam",
                {{"learning_rate", qc.adam.learning_rate},
                 {"beta1", qc.adam.beta1},
                 {"beta2", qc.adam.beta2},
                 {"epsilon", qc.adam.epsilon}}},
               {"methods", method_names},
               {"seeds", seeds}};
    out.config = cfg;

    const std::size_t n_runs = methods.size() * static_cast<std::size_t>(seeds);
    std::vector<QmlRun> runs(n_runs);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_runs); ++i) {
        const auto u = static_cast<std::size_t>(i);
        const std::size_t mi = u / static_cast<std::size_t>(seeds);
        const std::uint64_t s = u % static_cast<std::size_t>(seeds);
        runs[u] = train_qml(qc, methods[mi], derive_seed(seed, {s}));
    }

    Table log{{"method", "seed", "epoch", "train_loss", "test_accuracy"}, {}};
    Table summary{{"method", "runs", "mean_accuracy", "stderr_accuracy",
                   "mean_final_loss", "stderr_final_loss"},
                  {}};
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        double sa = 0.0, saa = 0.0, sl = 0.0, sll = 0.0;
        for (int s = 0; s < seeds; ++s) {
            const QmlRun &r = runs[mi * static_cast<std::size_t>(seeds) +
                                   static_cast<std::size_t>(s)];
            for (const auto &e : r.history) {
                log.add({r.method, static_cast<long long>(s),
                         static_cast<long long>(e.epoch), e.train_loss,
                         e.test_accuracy});
            }
            sa += r.final_accuracy();
            saa += r.final_accuracy() * r.final_accuracy();
            sl += r.final_loss();
            sll += r.final_loss() * r.final_loss();
        }
        const double k = seeds;
        const double ma = sa / k;
        const double ml = sl / k;
        const auto sem = [&](double sq, double mean) {
            return seeds > 1 ? std::sqrt(std::max(0.0, (sq - k * mean * mean) / (k - 1)) / k)
                             : 0.0;
        };
        const std::string name = methods[mi].name();
        summary.add({name, static_cast<long long>(seeds), ma, sem(saa, ma), ml,
                     sem(sll, ml)});
        out.summary["mean_accuracy"][name] = ma;
        out.summary["mean_final_loss"][name] = ml;
    }
    out.tables["qml_log"] = std::move(log);
    out.tables["qml_summary"] = std::move(summary);
    return out;
}

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{"spectrum", "gradcheck", "mse-scaling",
                                                "savings",  "bell",      "qml"};
    return names;
}

CommandResult run_command(const std::string &name, const json &config,
                          std::uint64_t seed) {
    if (!config.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    if (name == "spectrum") {
        return cmd_spectrum(config, seed);
    }
    if (name == "gradcheck") {
        return cmd_gradcheck(config, seed);
    }
    if (name == "mse-scaling") {
        return cmd_mse_scaling(config, seed);
    }
    if (name == "savings") {
        return cmd_savings(config, seed);
    }
    if (name == "bell") {
        return cmd_bell(config, seed);
    }
    if (name == "qml") {
        return cmd_qml(config, seed);
    }
    throw ConfigError("unknown command '" + name + "'");
}

} // namespace fockgrad
