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

#include "fockgrad/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fockgrad/error.hpp"

namespace fockgrad {

namespace {
template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

const Complex kI{0.0, 1.0};
} // namespace

double Param::resolve(std::span<const double> values) const {
    if (!slot) {
        return value;
    }
    FOCKGRAD_REQUIRE(*slot < values.size(), "parameter vector too short");
    return values[*slot];
}

std::string to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::Custom:
        return "custom";
    case Scheme::Triangular:
        return "triangular";
    case Scheme::Rectangular:
        return "rectangular";
    case Scheme::Loop:
        return "loop";
    }
    return "custom";
}

Scheme scheme_from_string(const std::string &name) {
    if (name == "custom") {
        return Scheme::Custom;
    }
    if (name == "triangular") {
        return Scheme::Triangular;
    }
    if (name == "rectangular") {
        return Scheme::Rectangular;
    }
    if (name == "loop") {
        return Scheme::Loop;
    }
    throw ConfigError("unknown scheme '" + name + "'");
}

std::vector<std::size_t> gate_modes(const Gate &gate) {
    return std::visit(
        Overloaded{
            [](const Phaseshifter &g) { return std::vector<std::size_t>{g.mode}; },
            [](const Beamsplitter &g) {
                return std::vector<std::size_t>{g.mode_a, g.mode_b};
            },
            [](const FixedGate &g) { return g.modes; },
        },
        gate);
}

CMatrix phase_matrix(double phase) {
    CMatrix p = CMatrix::Identity(2, 2);
    p(0, 0) = std::exp(kI * phase);
    return p;
}

CMatrix balanced_splitter() {
    CMatrix u(2, 2);
    u << 1.0, kI, kI, 1.0;
    return u / std::sqrt(2.0);
}

namespace {
CMatrix bs_matrix(double theta, double phi) {
    const Complex g = std::exp(kI * theta);
    const Complex e = std::exp(kI * phi);
    CMatrix u(2, 2);
    u << g * e * std::cos(theta), g * std::sin(theta),
        -g * e * std::sin(theta), g * std::cos(theta);
    return u;
}
} // namespace

ModeUnitary beamsplitter_unitary(double theta, double phi) {
    return ModeUnitary(bs_matrix(theta, phi));
}

CMatrix gate_matrix(const Gate &gate, std::span<const double> values) {
    return std::visit(
        Overloaded{
            [&](const Phaseshifter &g) {
                CMatrix p(1, 1);
                p(0, 0) = std::exp(kI * g.phase.resolve(values));
                return p;
            },
            [&](const Beamsplitter &g) {
                return bs_matrix(g.theta.resolve(values), g.phi.resolve(values));
            },
            [](const FixedGate &g) { return g.matrix; },
        },
        gate);
}

ParamCircuit::ParamCircuit(std::size_t modes, Scheme scheme)
    : modes_(modes), scheme_(scheme) {
    FOCKGRAD_REQUIRE(modes >= 1, "a circuit needs at least one mode");
}

Param ParamCircuit::add_parameter(std::string name) {
    FOCKGRAD_REQUIRE(std::find(names_.begin(), names_.end(), name) ==
                         names_.end(),
                     "duplicate parameter name '" + name + "'");
    names_.push_back(std::move(name));
    return Param::trainable(names_.size() - 1);
}

ParamCircuit &ParamCircuit::add_gate(Gate gate) {
    const auto modes = gate_modes(gate);
    FOCKGRAD_REQUIRE(!modes.empty(), "gate acts on no modes");
    std::set<std::size_t> distinct;
    for (std::size_t mode : modes) {
        FOCKGRAD_REQUIRE(mode < modes_, "gate mode index out of range");
        distinct.insert(mode);
    }
    FOCKGRAD_REQUIRE(distinct.size() == modes.size(),
                     "gate modes must be distinct");
    if (const auto *f = std::get_if<FixedGate>(&gate)) {
        const auto k = static_cast<Eigen::Index>(f->modes.size());
        FOCKGRAD_REQUIRE(f->matrix.rows() == k && f->matrix.cols() == k,
                         "fixed gate matrix size does not match its modes");
        FOCKGRAD_REQUIRE(unitarity_defect(f->matrix) <= kModeUnitaryTol,
                         "fixed gate is not unitary");
    }
    gates_.push_back(std::move(gate));
    return *this;
}

ParamCircuit &ParamCircuit::phaseshifter(std::size_t mode, Param phase) {
    return add_gate(Phaseshifter{mode, phase});
}

ParamCircuit &ParamCircuit::beamsplitter(std::size_t a, std::size_t b,
                                         Param theta, Param phi) {
    return add_gate(Beamsplitter{a, b, theta, phi});
}

ParamCircuit &ParamCircuit::fixed(std::vector<std::size_t> modes,
                                  CMatrix matrix) {
    return add_gate(FixedGate{std::move(modes), std::move(matrix)});
}

ParamCircuit &ParamCircuit::mzi(std::size_t a, std::size_t b,
                                const std::string &prefix) {
    Param theta = add_parameter(prefix + "theta");
    Param phi = add_parameter(prefix + "phi");
    return beamsplitter(a, b, theta, phi);
}

std::size_t ParamCircuit::param_index(const std::string &name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw std::out_of_range("no parameter named '" + name + "'");
    }
    return static_cast<std::size_t>(it - names_.begin());
}

namespace {
void for_each_param(const Gate &gate, auto &&fn) {
    std::visit(Overloaded{
                   [&](const Phaseshifter &g) { fn(g.phase, false); },
                   [&](const Beamsplitter &g) {
                       fn(g.theta, true);
                       fn(g.phi, false);
                   },
                   [](const FixedGate &) {},
               },
               gate);
}
} // namespace

void ParamCircuit::validate() const {
    std::vector<int> uses(names_.size(), 0);
    for (const Gate &gate : gates_) {
        for_each_param(gate, [&](const Param &p, bool) {
            if (p.slot) {
                FOCKGRAD_REQUIRE(*p.slot < names_.size(),
                                 "gate references an unknown slot");
                ++uses[*p.slot];
            }
        });
    }
    for (std::size_t k = 0; k < uses.size(); ++k) {
        FOCKGRAD_REQUIRE(uses[k] == 1, "parameter '" + names_[k] +
                                           "' must be used by exactly one gate");
    }
}

std::size_t ParamCircuit::gate_of(std::size_t slot) const {
    FOCKGRAD_REQUIRE(slot < names_.size(), "parameter index out of range");
    for (std::size_t g = 0; g < gates_.size(); ++g) {
        bool hit = false;
        for_each_param(gates_[g], [&](const Param &p, bool) {
            hit = hit || p.slot == slot;
        });
        if (hit) {
            return g;
        }
    }
    throw std::invalid_argument("parameter '" + names_[slot] +
                                "' is not used by any gate");
}

ParamKind ParamCircuit::kind_of(std::size_t slot) const {
    const Gate &gate = gates_[gate_of(slot)];
    if (const auto *bs = std::get_if<Beamsplitter>(&gate)) {
        if (bs->theta.slot == slot) {
            return ParamKind::BeamsplitterAngle;
        }
    }
    return ParamKind::PhaseShift;
}

ModeUnitary mode_unitary(std::size_t modes, std::span<const Gate> gates,
                         std::span<const double> values) {
    const auto m = static_cast<Eigen::Index>(modes);
    CMatrix u = CMatrix::Identity(m, m);
    for (const Gate &gate : gates) {
        const auto idx = gate_modes(gate);
        const CMatrix g = gate_matrix(gate, values);
        const auto k = static_cast<Eigen::Index>(idx.size());
        CMatrix rows(k, m);
        for (Eigen::Index r = 0; r < k; ++r) {
            rows.row(r) = u.row(static_cast<Eigen::Index>(idx[r]));
        }
        const CMatrix mixed = g * rows;
        for (Eigen::Index r = 0; r < k; ++r) {
            u.row(static_cast<Eigen::Index>(idx[r])) = mixed.row(r);
        }
    }
    return ModeUnitary(std::move(u));
}

ModeUnitary mode_unitary(const ParamCircuit &c,
                         std::span<const double> values) {
    FOCKGRAD_REQUIRE(values.size() == c.num_params(),
                     "parameter vector length does not match the circuit");
    return mode_unitary(c.modes(), c.gates(), values);
}

ParamCircuit build_scheme(Scheme scheme, std::size_t modes) {
    FOCKGRAD_REQUIRE(modes >= 2, "interferometer schemes need m >= 2");
    ParamCircuit c(modes, scheme);
    std::size_t count = 0;
    auto next = [&](std::size_t a, std::size_t b) {
        c.mzi(a, b, "bs" + std::to_string(count++) + "_");
    };
    switch (scheme) {
    case Scheme::Triangular:
        for (std::size_t k = 1; k < modes; ++k) {
            for (std::size_t j = k; j >= 1; --j) {
                next(j - 1, j);
            }
        }
        break;
    case Scheme::Rectangular:
        for (std::size_t layer = 0; layer < modes; ++layer) {
            for (std::size_t a = layer % 2; a + 1 < modes; a += 2) {
                next(a, a + 1);
            }
        }
        break;
    case Scheme::Loop:
        for (std::size_t len = 1; len < modes; len *= 2) {
            for (std::size_t a = 0; a + len < modes; ++a) {
                next(a, a + len);
            }
        }
        break;
    case Scheme::Custom:
        throw std::invalid_argument("build_scheme needs a concrete scheme");
    }
    return c;
}

namespace {
Gate fixed_on(std::size_t a, std::size_t b, CMatrix m) {
    return FixedGate{{a, b}, std::move(m)};
}
} // namespace

SplitCircuit split_at(const ParamCircuit &c, std::size_t slot) {
    const std::size_t g = c.gate_of(slot);
    const auto &gates = c.gates();
    SplitCircuit s;
    s.modes = c.modes();
    s.before.assign(gates.begin(), gates.begin() + static_cast<long>(g));
    std::vector<Gate> tail;

    std::visit(
        Overloaded{
            [&](const Phaseshifter &p) {
                s.mode = p.mode;
                s.kind = ParamKind::PhaseShift;
            },
            [&](const Beamsplitter &bs) {
                const std::size_t a = bs.mode_a;
                const std::size_t b = bs.mode_b;
                s.mode = a;
                if (bs.theta.slot == slot) {
                    // U_50 P(pi + 2t) U_50 P(pi + p): the slot is P(pi + 2t).
                    s.kind = ParamKind::BeamsplitterAngle;
                    s.offset = kPi;
                    s.chain_factor = 2.0;
                    s.before.emplace_back(Phaseshifter{a, bs.phi});
                    s.before.push_back(fixed_on(a, b, phase_matrix(kPi)));
                    s.before.push_back(fixed_on(a, b, balanced_splitter()));
                    tail.push_back(fixed_on(a, b, balanced_splitter()));
                } else {
                    // The slot is P(pi + p); U_BS(t, -pi) is U_50 P(pi+2t) U_50.
                    s.kind = ParamKind::PhaseShift;
                    s.offset = kPi;
                    tail.emplace_back(
                        Beamsplitter{a, b, bs.theta, Param::frozen(-kPi)});
                }
            },
            [](const FixedGate &) {
                throw std::logic_error("fixed gates carry no slots");
            },
        },
        gates[g]);

    s.after = std::move(tail);
    s.after.insert(s.after.end(), gates.begin() + static_cast<long>(g) + 1,
                   gates.end());
    return s;
}

double chain_factor(const ParamCircuit &c, std::size_t slot) {
    return c.kind_of(slot) == ParamKind::BeamsplitterAngle ? 2.0 : 1.0;
}

LightCone light_cone(const ParamCircuit &c, std::size_t slot,
                     const FockState &input) {
    FOCKGRAD_REQUIRE(input.modes() == c.modes(),
                     "input state and circuit mode counts differ");
    const SplitCircuit s = split_at(c, slot);
    std::vector<bool> inside(c.modes(), false);
    inside[s.mode] = true;
    for (auto it = s.before.rbegin(); it != s.before.rend(); ++it) {
        const auto modes = gate_modes(*it);
        if (modes.size() < 2) {
            continue;
        }
        const bool touches = std::any_of(modes.begin(), modes.end(),
                                         [&](std::size_t i) { return inside[i]; });
        if (touches) {
            for (std::size_t i : modes) {
                inside[i] = true;
            }
        }
    }
    LightCone cone;
    for (std::size_t i = 0; i < c.modes(); ++i) {
        if (inside[i]) {
            cone.modes.push_back(i);
            cone.photons += input[i];
        }
    }
    return cone;
}

ShiftCounts shift_counts(const ParamCircuit &c, const FockState &input) {
    ShiftCounts counts;
    const auto m_params = static_cast<long long>(c.num_params());
    counts.total = 2LL * input.photons() * m_params;
    for (std::size_t k = 0; k < c.num_params(); ++k) {
        counts.reduced += 2LL * light_cone(c, k, input).photons;
    }
    return counts;
}

FockState alternating_fill(std::size_t modes, double occupancy) {
    FOCKGRAD_REQUIRE(occupancy >= 0.0 && occupancy <= 1.0,
                     "occupancy must lie in [0, 1]");
    const auto n = static_cast<std::size_t>(
        std::llround(occupancy * static_cast<double>(modes)));
    std::vector<int> occ(modes, 0);
    for (std::size_t i = 0; i < n; ++i) {
        occ[i * modes / n] = 1;
    }
    return FockState(std::move(occ));
}

} // namespace fockgrad
