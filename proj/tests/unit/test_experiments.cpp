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


#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fockgrad/bell.hpp"
#include "fockgrad/config.hpp"
#include "fockgrad/error.hpp"
#include "fockgrad/experiments.hpp"
#include "fockgrad/gradient.hpp"
#include "fockgrad/qml.hpp"
#include "fockgrad/report.hpp"
#include "fockgrad/rng.hpp"

using namespace fockgrad;
using nlohmann::json;
using Catch::Matchers::WithinAbs;

TEST_CASE("format_number", "[experiments]") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-2.0) == "-2");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    const double x = 0.1 + 0.2;
    CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("to_csv follows RFC 4180", "[experiments]") {
    Table t{{"name", "value", "count"}, {}};
    t.add({std::string("plain"), 1.5, 3LL});
    t.add({std::string("a,b"), -0.25, 0LL});
    t.add({std::string("say \"hi\""), 2.0, 7LL});
    t.add({std::string("two\nlines"), 0.0, 1LL});
    const std::string csv = to_csv(t);
    CHECK(csv == "name,value,count\r\n"
                 "plain,1.5,3\r\n"
                 "\"a,b\",-0.25,0\r\n"
                 "\"say \"\"hi\"\"\",2,7\r\n"
                 "\"two\nlines\",0,1\r\n");
    CHECK(t.column("count") == 2);
    CHECK(t.number(1, "value") == -0.25);
    CHECK(t.number(0, "count") == 3.0);
    CHECK_THROWS_AS(t.column("missing"), std::out_of_range);
    CHECK_THROWS(t.add({1.0}));
}

TEST_CASE("write_file_atomic", "[experiments]") {
    const auto dir = std::filesystem::temp_directory_path() / "fockgrad_test_atomic";
    std::filesystem::remove_all(dir);
    const auto path = dir / "nested" / "out.txt";
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "second");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto &e : std::filesystem::directory_iterator(dir / "nested")) {
        ++files;
    }
    CHECK(files == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run manifest fields", "[experiments]") {
    const json m = run_manifest("savings", json{{"a", 1}}, 42, 0.5);
    CHECK(m.at("command") == "savings");
    CHECK(m.at("config").at("a") == 1);
    CHECK(m.at("seed") == 42);
    CHECK(m.at("wall_time_seconds") == 0.5);
    CHECK(m.at("versions").contains("fockgrad"));
    CHECK(m.at("versions").contains("eigen"));
}

TEST_CASE("config parsing", "[experiments]") {
    SECTION("grids and ranges") {
        const auto g = grid_from_json(json{{"min", -1.0}, {"max", 1.0}, {"points", 5}});
        REQUIRE(g.size() == 5);
        CHECK(g.front() == -1.0);
        CHECK(g[2] == 0.0);
        CHECK(g.back() == 1.0);
        CHECK(grid_from_json(json{0.5, 0.25}) == std::vector<double>{0.5, 0.25});
        CHECK(int_range_from_json(json{{"min", 2}, {"max", 4}}) ==
              std::vector<long long>{2, 3, 4});
        CHECK(int_range_from_json(json{8, 16}) == std::vector<long long>{8, 16});
    }
    SECTION("observables") {
        const FockState s{1, 2, 0};
        const Observable n1 =
            observable_from_json(json{{"type", "number"}, {"mode", 1}}, 3, 3, 0);
        CHECK(n1.eigenvalue(s) == 2.0);
        const Observable poly = observable_from_json(
            json{{"type", "number_polynomial"},
                 {"terms", {{{"powers", {1, 2, 0}}, {"coefficient", 0.5}}}}},
            3, 3, 0);
        CHECK(poly.eigenvalue(s) == 2.0);
        const Observable herald = observable_from_json(
            json{{"type", "projector"}, {"pattern", {nullptr, 2, nullptr}}}, 3, 3, 0);
        CHECK(herald.eigenvalue(s) == 1.0);
        CHECK(herald.eigenvalue(FockState{2, 1, 0}) == 0.0);
        const json rd{{"type", "random_diagonal"}, {"lo", -1.0}, {"hi", 1.0}};
        const Observable a = observable_from_json(rd, 3, 3, 5);
        const Observable b = observable_from_json(rd, 3, 3, 5);
        CHECK(a.eigenvalue(s) == b.eigenvalue(s));
        CHECK(std::abs(a.eigenvalue(s)) <= 1.0);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(observable_from_json(json{{"type", "nope"}}, 3, 3, 0), ConfigError);
        CHECK_THROWS_AS(observable_from_json(json{{"type", "projector"}, {"pattern", {1}}},
                                             3, 3, 0),
                        ConfigError);
        CHECK_THROWS_AS(fock_state_from_json(json{1, -1}), ConfigError);
        CHECK_THROWS_AS(fock_state_from_json(json{"x"}), ConfigError);
        CHECK_THROWS_AS(config_require<int>(json::object(), "missing"), ConfigError);
        CHECK_THROWS_AS(config_value<int>(json{{"k", "text"}}, "k", 1), ConfigError);
        CHECK(config_value<int>(json::object(), "k", 7) == 7);
    }
}

TEST_CASE("command dispatch", "[experiments]") {
    CHECK(command_names().size() == 6);
    CHECK_THROWS_AS(run_command("nope", json::object(), 0), ConfigError);
    CHECK_THROWS_AS(run_command("savings", json::array(), 0), ConfigError);
    CHECK_THROWS_AS(run_command("mse-scaling", json{{"slot", "missing"}}, 0), ConfigError);
}

TEST_CASE("savings command", "[experiments]") {
    const auto r = run_command(
        "savings", json{{"modes", {{"min", 2}, {"max", 6}}}, {"occupancies", {0.5, 1.0}}}, 0);
    const Table &t = r.tables.at("savings");
    CHECK(t.rows.size() == 3 * 5 * 2);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(t.number(i, "reduced") <= t.number(i, "total"));
    }
    CHECK(r.summary.at("max_ratio").get<double>() <= 1.0);
    CHECK(r.config.at("schemes").size() == 3);
}

TEST_CASE("gradcheck command", "[experiments]") {
    const json cfg{{"circuit", {{"scheme", "triangular"}, {"modes", 3}}},
                   {"input", {1, 1, 0}},
                   {"order", 2}};
    const auto r = run_command("gradcheck", cfg, 3);
    CHECK(r.summary.at("max_deviation").get<double>() < 1e-7);
    CHECK(r.summary.at("max_second_deviation").get<double>() < 1e-5);
    const auto again = run_command("gradcheck", cfg, 3);
    CHECK(to_csv(again.tables.at("gradcheck")) == to_csv(r.tables.at("gradcheck")));
}

TEST_CASE("spectrum command", "[experiments]") {
    const json cfg{{"input", {1, 1, 0}},
                   {"circuits", 3},
                   {"observables", {{{"type", "number"}, {"mode", 1}, {"label", "n1"}}}}};
    const auto r = run_command("spectrum", cfg, 1);
    CHECK(r.tables.at("spectrum").rows.size() == 3 * 5);
    CHECK(r.summary.at("max_abs_c_beyond_bound").at("n1").get<double>() < 1e-10);
}

TEST_CASE("circle dataset", "[experiments]") {
    const auto d = make_circles(61, 0.1, 0.5, 9);
    REQUIRE(d.size() == 61);
    int ones = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        ones += d.labels[i];
        const double r = std::hypot(d.points[i][0], d.points[i][1]);
        CHECK(std::abs(r - (d.labels[i] == 1 ? 0.5 : 1.0)) < 0.6);
    }
    CHECK((ones == 30 || ones == 31));
    const auto again = make_circles(61, 0.1, 0.5, 9);
    CHECK(again.points == d.points);
    const auto scaler = FeatureScaler::fit(d);
    for (const auto &p : d.points) {
        for (std::size_t f = 0; f < 2; ++f) {
            const double v = scaler(f, p[f]);
            CHECK(v >= -kPi / 2 - 1e-12);
            CHECK(v <= kPi / 2 + 1e-12);
        }
    }
    CHECK(scaler(0, 1e6) == kPi / 2);
}

TEST_CASE("mlp backward matches finite differences", "[experiments]") {
    auto rng = make_rng(4);
    Mlp mlp = Mlp::glorot(rng);
    Eigen::VectorXd z(Mlp::kInputs);
    z << 0.2, 0.1, 0.3, 0.15, 0.25;
    mlp.params().segment(Mlp::kHidden * Mlp::kInputs, Mlp::kHidden).setConstant(0.1);
    const auto g = mlp.backward(z);
    CHECK_THAT(g.output, WithinAbs(mlp(z), 1e-15));
    CHECK(g.output > 0.0);
    CHECK(g.output < 1.0);
    for (int i = 0; i < Mlp::kParams; ++i) {
        const ScalarFn f = [&](double x) {
            Mlp m = mlp;
            m.params()(i) = x;
            return m(z);
        };
        CHECK_THAT(g.params(i), WithinAbs(richardson_derivative(f, mlp.params()(i)), 1e-8));
    }
    for (int j = 0; j < Mlp::kInputs; ++j) {
        const ScalarFn f = [&](double x) {
            Eigen::VectorXd w = z;
            w(j) = x;
            return mlp(w);
        };
        CHECK_THAT(g.input(j), WithinAbs(richardson_derivative(f, z(j)), 1e-8));
    }
}

TEST_CASE("adam moves against the gradient", "[experiments]") {
    Adam adam;
    Eigen::VectorXd x(2);
    x << 1.0, -1.0;
    for (int i = 0; i < 2000; ++i) {
        adam.step(x, 2.0 * x);
    }
    CHECK(x.norm() < 1e-2);
}

TEST_CASE("qml method names", "[experiments]") {
    CHECK(QmlMethod::parse("gpsr").kind == QmlGradient::Gpsr);
    CHECK(QmlMethod::parse("exact").kind == QmlGradient::Exact);
    const auto fd = QmlMethod::parse("fd(0.1)");
    CHECK(fd.kind == QmlGradient::FiniteDifference);
    CHECK(fd.step == 0.1);
    CHECK(QmlMethod::parse(fd.name()).step == 0.1);
    CHECK_THROWS_AS(QmlMethod::parse("fd(x)"), ConfigError);
    CHECK_THROWS_AS(QmlMethod::parse("adjoint"), ConfigError);
}

TEST_CASE("qml circuit and training", "[experiments]") {
    const ParamCircuit c = qml_circuit();
    CHECK(c.modes() == 5);
    CHECK(c.num_params() == 12);
    CHECK(c.param_names().front() == "x1");
    CHECK(c.param_names().back() == "t8");
    const std::vector<double> v(12, 0.3);
    const auto z = mode_means(c, v, qml_input());
    CHECK_THAT(z.sum(), WithinAbs(1.0, 1e-12));

    QmlConfig cfg;
    cfg.train_size = 12;
    cfg.test_size = 20;
    cfg.epochs = 2;
    const auto a = train_qml(cfg, QmlMethod::parse("gpsr"), 5);
    const auto b = train_qml(cfg, QmlMethod::parse("gpsr"), 5);
    REQUIRE(a.history.size() == 3);
    CHECK(a.history.back().train_loss == b.history.back().train_loss);
    const auto e = train_qml(cfg, QmlMethod::parse("exact"), 5);
    CHECK(e.history.front().train_loss == a.history.front().train_loss);
}

TEST_CASE("bell circuit reaches the target at its optimum", "[experiments]") {
    const BellSetup s = bell_setup();
    const auto parts = bell_parts(s, s.optimum);
    CHECK_THAT(parts.value(), WithinAbs(1.0, 1e-9));
    CHECK_THAT(parts.herald_probability, WithinAbs(2.0 / 27.0, 1e-12));
    for (std::size_t k = 0; k < s.optimum.size(); ++k) {
        CHECK_THAT(fidelity_derivative(s, s.optimum, k, 4).derivative,
                   WithinAbs(0.0, 1e-8));
    }
}

TEST_CASE("bell derivative with light-cone R", "[experiments]") {
    const BellSetup s = bell_setup();
    auto v = s.optimum;
    v[1] += 0.3;
    v[3] -= 0.2;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const int r = std::min(4, light_cone(s.circuit, k, s.input).photons);
        CHECK(r >= 1);
        CHECK_THAT(fidelity_derivative(s, v, k, r).derivative,
                   WithinAbs(fidelity_derivative(s, v, k, 4).derivative, 1e-9));
    }
}

TEST_CASE("bell setup pieces", "[experiments]") {
    const BellSetup s = bell_setup();
    CHECK(s.circuit.modes() == 6);
    CHECK(s.input == FockState{0, 1, 1, 1, 1, 0});
    CHECK(s.optimum.size() == s.circuit.num_params());
    CHECK(s.herald.matches(FockState{1, 0, 1, 1, 1, 0}));
    CHECK_FALSE(s.herald.matches(FockState{1, 1, 0, 1, 1, 0}));

    auto rng = make_rng(17);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::vector<double> v(s.circuit.num_params());
    for (double &x : v) {
        x = angle(rng);
    }
    const auto parts = bell_parts(s, v);
    CHECK(parts.numerator >= 0.0);
    CHECK(parts.numerator <= parts.herald_probability + 1e-14);
    for (std::size_t k = 0; k < v.size(); ++k) {
        const auto d = fidelity_derivative(s, v, k, 4);
        const ScalarFn f = [&](double x) {
            auto w = v;
            w[k] = x;
            return bell_parts(s, w).value();
        };
        CHECK_THAT(d.derivative, WithinAbs(richardson_derivative(f, v[k]), 1e-6));
        CHECK_THAT(d.fidelity, WithinAbs(parts.value(), 1e-14));
    }
}
