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
#include <random>

#include "fockgrad/circuit.hpp"
#include "fockgrad/circuit_io.hpp"
#include "fockgrad/error.hpp"

#include "test_helpers.hpp"

using namespace fockgrad;

namespace {

/// Embeds a local gate matrix into the full m x m identity.
CMatrix embed(std::size_t m, const std::vector<std::size_t> &modes,
              const CMatrix &local) {
    CMatrix full = CMatrix::Identity(static_cast<Eigen::Index>(m),
                                     static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < modes.size(); ++r) {
        for (std::size_t c = 0; c < modes.size(); ++c) {
            full(static_cast<Eigen::Index>(modes[r]),
                 static_cast<Eigen::Index>(modes[c])) =
                local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return full;
}

CMatrix brute_force(const ParamCircuit &c, const std::vector<double> &x) {
    CMatrix u = CMatrix::Identity(static_cast<Eigen::Index>(c.modes()),
                                  static_cast<Eigen::Index>(c.modes()));
    for (const auto &g : c.gates()) {
        u = embed(c.modes(), gate_modes(g), gate_matrix(g, x)) * u;
    }
    return u;
}

const Complex I{0.0, 1.0};

} // namespace

TEST_CASE("beamsplitter_unitary", "[circuit]") {
    SECTION("closed form") {
        const double t = 0.37, p = -1.21;
        const auto u = beamsplitter_unitary(t, p);
        const Complex g = std::exp(I * t);
        CHECK(std::abs(u(0, 0) - g * std::exp(I * p) * std::cos(t)) < 1e-15);
        CHECK(std::abs(u(0, 1) - g * std::sin(t)) < 1e-15);
        CHECK(std::abs(u(1, 0) + g * std::exp(I * p) * std::sin(t)) < 1e-15);
        CHECK(std::abs(u(1, 1) - g * std::cos(t)) < 1e-15);
    }
    SECTION("balanced-splitter factorization") {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = test::random_angles(2, rng);
            const CMatrix h = balanced_splitter();
            const CMatrix f = h * phase_matrix(kPi + 2 * a[0]) * h *
                              phase_matrix(kPi + a[1]);
            CHECK((beamsplitter_unitary(a[0], a[1]).matrix() - f).norm() < 1e-14);
        }
    }
    SECTION("theta = pi/4 is balanced up to phases") {
        const auto u = beamsplitter_unitary(kPi / 4, 0.0);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                CHECK(std::norm(u(i, j)) == Catch::Approx(0.5));
            }
        }
    }
}

TEST_CASE("ParamCircuit::construction", "[circuit]") {
    ParamCircuit c(3);
    const auto t = c.add_parameter("t");
    const auto p = c.add_parameter("p");
    c.beamsplitter(0, 1, t, p).phaseshifter(2, Param::frozen(0.5));
    CHECK(c.num_params() == 2);
    CHECK(c.param_index("p") == 1);
    CHECK(c.gate_of(1) == 0);
    CHECK(c.kind_of(0) == ParamKind::BeamsplitterAngle);
    CHECK_NOTHROW(c.validate());

    SECTION("bad modes") {
        CHECK_THROWS_AS(c.beamsplitter(1, 1, Param::frozen(0), Param::frozen(0)),
                        std::invalid_argument);
        CHECK_THROWS_AS(c.phaseshifter(3, Param::frozen(0)), std::invalid_argument);
        CHECK_THROWS_AS(c.fixed({0, 1}, CMatrix::Ones(2, 2)), std::invalid_argument);
    }
    SECTION("unused and reused slots") {
        ParamCircuit d(2);
        const auto a = d.add_parameter("a");
        CHECK_THROWS_AS(d.validate(), std::invalid_argument);
        d.phaseshifter(0, a).phaseshifter(1, a);
        CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    }
    SECTION("unknown name") {
        CHECK_THROWS_AS(c.param_index("nope"), std::out_of_range);
    }
}

TEST_CASE("mode_unitary", "[circuit]") {
    std::mt19937_64 rng(17);
    for (auto scheme : {Scheme::Triangular, Scheme::Rectangular, Scheme::Loop}) {
        for (std::size_t m : {2u, 3u, 5u}) {
            const auto c = build_scheme(scheme, m);
            const auto x = test::random_angles(c.num_params(), rng);
            const auto u = mode_unitary(c, x);
            CHECK((u.matrix() - brute_force(c, x)).norm() < 1e-12);
            CHECK(unitarity_defect(u.matrix()) < kModeUnitaryTol);
        }
    }
}

TEST_CASE("build_scheme", "[circuit]") {
    for (std::size_t m = 2; m <= 8; ++m) {
        const auto tri = build_scheme(Scheme::Triangular, m);
        const auto rect = build_scheme(Scheme::Rectangular, m);
        const auto loop = build_scheme(Scheme::Loop, m);
        CHECK(tri.gates().size() == m * (m - 1) / 2);
        CHECK(rect.gates().size() == m * (m - 1) / 2);
        CHECK(tri.num_params() == m * (m - 1));
        CHECK_NOTHROW(tri.validate());
        CHECK_NOTHROW(rect.validate());
        CHECK_NOTHROW(loop.validate());
        CHECK(rect.scheme() == Scheme::Rectangular);
    }
    SECTION("rectangular layers alternate") {
        const auto rect = build_scheme(Scheme::Rectangular, 4);
        std::vector<std::size_t> first;
        for (const auto &g : rect.gates()) {
            first.push_back(gate_modes(g)[0]);
        }
        CHECK(first == std::vector<std::size_t>{0, 2, 1, 0, 2, 1});
    }
    SECTION("scheme names round-trip") {
        for (auto s : {Scheme::Custom, Scheme::Triangular, Scheme::Rectangular,
                       Scheme::Loop}) {
            CHECK(scheme_from_string(to_string(s)) == s);
        }
        CHECK_THROWS(scheme_from_string("hexagonal"));
    }
}

TEST_CASE("split_at", "[circuit]") {
    std::mt19937_64 rng(23);
    for (auto scheme : {Scheme::Triangular, Scheme::Rectangular, Scheme::Loop}) {
        const auto c = build_scheme(scheme, 4);
        auto x = test::random_angles(c.num_params(), rng);
        for (std::size_t slot = 0; slot < c.num_params(); ++slot) {
            const auto split = split_at(c, slot);
            const double v = 0.813;
            x[slot] = v;
            CMatrix p = CMatrix::Identity(4, 4);
            p(static_cast<Eigen::Index>(split.mode),
              static_cast<Eigen::Index>(split.mode)) =
                std::exp(I * split.phase(v));
            const CMatrix u = mode_unitary(4, split.after, x).matrix() * p *
                              mode_unitary(4, split.before, x).matrix();
            CHECK((u - mode_unitary(c, x).matrix()).norm() < 1e-12);
            CHECK(split.chain_factor == chain_factor(c, slot));
            CHECK(split.chain_factor ==
                  (c.kind_of(slot) == ParamKind::BeamsplitterAngle ? 2.0 : 1.0));
        }
    }
}

TEST_CASE("light_cone", "[circuit]") {
    SECTION("first gate sees only its own modes") {
        ParamCircuit c(4);
        c.mzi(1, 2, "a_").mzi(0, 1, "b_");
        const FockState in{1, 1, 1, 1};
        CHECK(light_cone(c, c.param_index("a_phi"), in).photons == 1);
        const auto cone = light_cone(c, c.param_index("a_theta"), in);
        CHECK(cone.modes == std::vector<std::size_t>{1, 2});
        CHECK(cone.photons == 2);
        const auto later = light_cone(c, c.param_index("b_theta"), in);
        CHECK(later.modes == std::vector<std::size_t>{0, 1, 2});
        CHECK(later.photons == 3);
    }
    SECTION("single-mode gates do not widen the cone") {
        ParamCircuit c(3);
        c.phaseshifter(1, Param::frozen(0.2));
        c.mzi(0, 1, "x_");
        const FockState in{2, 1, 1};
        CHECK(light_cone(c, c.param_index("x_phi"), in).photons == 2);
        CHECK(light_cone(c, c.param_index("x_theta"), in).photons == 3);
    }
    SECTION("reduced counts never exceed the total") {
        for (auto scheme : {Scheme::Triangular, Scheme::Rectangular, Scheme::Loop}) {
            for (std::size_t m = 2; m <= 12; ++m) {
                for (double occ : {0.25, 0.5, 1.0}) {
                    const auto c = build_scheme(scheme, m);
                    const auto counts = shift_counts(c, alternating_fill(m, occ));
                    CHECK(counts.reduced <= counts.total);
                    CHECK(counts.ratio() <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("alternating_fill", "[circuit]") {
    CHECK(alternating_fill(4, 0.5) == FockState{1, 0, 1, 0});
    CHECK(alternating_fill(3, 1.0) == FockState{1, 1, 1});
    CHECK(alternating_fill(6, 1.0 / 3.0) == FockState{1, 0, 0, 1, 0, 0});
    CHECK(alternating_fill(5, 0.0).photons() == 0);
}

TEST_CASE("circuit_io", "[circuit]") {
    SECTION("round trip") {
        std::mt19937_64 rng(8);
        auto c = build_scheme(Scheme::Loop, 5);
        c.phaseshifter(3, Param::frozen(0.125));
        c.fixed({0, 2}, balanced_splitter());
        const auto back = circuit_from_json(circuit_to_json(c));
        CHECK(back.param_names() == c.param_names());
        const auto x = test::random_angles(c.num_params(), rng);
        CHECK((mode_unitary(back, x).matrix() - mode_unitary(c, x).matrix()).norm() <
              1e-14);
    }
    SECTION("scheme shorthand") {
        const auto doc = nlohmann::json::parse(
            R"({"schema": "fockgrad.circuit/1", "modes": 3, "scheme": "triangular"})");
        CHECK(circuit_from_json(doc).gates().size() == 3);
    }
    SECTION("malformed documents") {
        CHECK_THROWS_AS(circuit_from_json(nlohmann::json::parse(R"({"modes": 2})")),
                        ConfigError);
        CHECK_THROWS_AS(circuit_from_json(nlohmann::json::parse(
                            R"({"schema": "fockgrad.circuit/1", "modes": 2,
                                "gates": [{"type": "beamsplitter", "modes": [0, 5],
                                           "params": {"theta": 0, "phi": 0}}]})")),
                        ConfigError);
    }
}
