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
 * Parametrized linear-optical circuits.
 *
 * Modes are 0-based. A beamsplitter on (a, b) applies
 *
 *     U_BS(t, p) = e^{it} [[e^{ip} cos t, sin t], [-e^{ip} sin t, cos t]]
 *
 * in the (a, b) basis, which factors as U_50 P(pi + 2t) U_50 P(pi + p) with
 * P(x) = diag(e^{ix}, 1) and U_50 = [[1, i], [i, 1]] / sqrt(2).
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fockgrad/fock_state.hpp"
#include "fockgrad/linalg.hpp"

namespace fockgrad {

/// A gate angle: either a trainable slot index or a frozen constant.
struct Param {
    std::optional<std::size_t> slot;
    double value = 0.0;

    static Param trainable(std::size_t slot) { return Param{slot, 0.0}; }
    static Param frozen(double value) { return Param{std::nullopt, value}; }

    [[nodiscard]] bool is_trainable() const noexcept { return slot.has_value(); }
    [[nodiscard]] double resolve(std::span<const double> values) const;
};

struct Phaseshifter {
    std::size_t mode = 0;
    Param phase;
};

struct Beamsplitter {
    std::size_t mode_a = 0;
    std::size_t mode_b = 1;
    Param theta;
    Param phi;
};

/// Constant unitary on an ordered list of modes.
struct FixedGate {
    std::vector<std::size_t> modes;
    CMatrix matrix;
};

using Gate = std::variant<Phaseshifter, Beamsplitter, FixedGate>;

enum class Scheme { Custom, Triangular, Rectangular, Loop };
enum class ParamKind { PhaseShift, BeamsplitterAngle };

[[nodiscard]] std::string to_string(Scheme scheme);
[[nodiscard]] Scheme scheme_from_string(const std::string &name);

/// Modes a gate acts on, in gate order.
[[nodiscard]] std::vector<std::size_t> gate_modes(const Gate &gate);

/// Local unitary of a gate on gate_modes(gate).
[[nodiscard]] CMatrix gate_matrix(const Gate &gate,
                                  std::span<const double> values);

[[nodiscard]] ModeUnitary beamsplitter_unitary(double theta, double phi);
[[nodiscard]] CMatrix balanced_splitter();
[[nodiscard]] CMatrix phase_matrix(double phase);

/**
 * @brief Ordered gate list over m modes with named trainable slots.
 *
 * Slots are numbered in the order they are added; each must be referenced
 * by exactly one gate (checked by validate()).
 */
class ParamCircuit {
  public:
    explicit ParamCircuit(std::size_t modes, Scheme scheme = Scheme::Custom);

    Param add_parameter(std::string name);

    ParamCircuit &add_gate(Gate gate);
    ParamCircuit &phaseshifter(std::size_t mode, Param phase);
    ParamCircuit &beamsplitter(std::size_t a, std::size_t b, Param theta,
                               Param phi);
    ParamCircuit &fixed(std::vector<std::size_t> modes, CMatrix matrix);

    /// Beamsplitter with fresh trainable slots "<prefix>theta", "<prefix>phi".
    ParamCircuit &mzi(std::size_t a, std::size_t b, const std::string &prefix);

    [[nodiscard]] std::size_t modes() const noexcept { return modes_; }
    [[nodiscard]] Scheme scheme() const noexcept { return scheme_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept {
        return gates_;
    }
    [[nodiscard]] std::size_t num_params() const noexcept {
        return names_.size();
    }
    [[nodiscard]] const std::vector<std::string> &param_names() const noexcept {
        return names_;
    }
    [[nodiscard]] std::size_t param_index(const std::string &name) const;

    /// Throws std::invalid_argument unless every slot has exactly one use.
    void validate() const;

    /// Position in gates() of the gate that owns @p slot.
    [[nodiscard]] std::size_t gate_of(std::size_t slot) const;
    [[nodiscard]] ParamKind kind_of(std::size_t slot) const;

  private:
    std::size_t modes_;
    Scheme scheme_;
    std::vector<Gate> gates_;
    std::vector<std::string> names_;
};

/// Product of gate unitaries, first gate applied first.
[[nodiscard]] ModeUnitary mode_unitary(std::size_t modes,
                                       std::span<const Gate> gates,
                                       std::span<const double> values);
[[nodiscard]] ModeUnitary mode_unitary(const ParamCircuit &c,
                                       std::span<const double> values);

/// Reck triangle, Clements rectangle, or a chain of power-of-two loops.
[[nodiscard]] ParamCircuit build_scheme(Scheme scheme, std::size_t modes);

/**
 * @brief A circuit cut around one slot: U = V P(offset + c x) W.
 *
 * The slot's phaseshifter acts on @c mode; @c x is the raw slot value and
 * @c chain_factor is c (2 for beamsplitter angles, 1 otherwise).
 */
struct SplitCircuit {
    std::size_t modes = 0;
    std::vector<Gate> before;
    std::size_t mode = 0;
    ParamKind kind = ParamKind::PhaseShift;
    double offset = 0.0;
    double chain_factor = 1.0;
    std::vector<Gate> after;

    /// Phase applied on @c mode for slot value @p x.
    [[nodiscard]] double phase(double x) const {
        return offset + chain_factor * x;
    }
};

[[nodiscard]] SplitCircuit split_at(const ParamCircuit &c, std::size_t slot);

/// Chain factor of a slot without building the split.
[[nodiscard]] double chain_factor(const ParamCircuit &c, std::size_t slot);

struct LightCone {
    std::vector<std::size_t> modes;
    int photons = 0;
};

/**
 * @brief Modes that can feed the slot's mode before the slot acts.
 *
 * Walks the gates before the slot backwards in time; a gate joins the cone
 * when it touches a mode already inside, and then adds all its modes.
 */
[[nodiscard]] LightCone light_cone(const ParamCircuit &c, std::size_t slot,
                                   const FockState &input);

struct ShiftCounts {
    long long total = 0;
    long long reduced = 0;

    [[nodiscard]] double ratio() const {
        return total == 0 ? 1.0
                          : static_cast<double>(reduced) /
                                static_cast<double>(total);
    }
};

/// Sigma_tot = 2 n M and Sigma_red = sum over slots of 2 n_A.
[[nodiscard]] ShiftCounts shift_counts(const ParamCircuit &c,
                                       const FockState &input);

/// round(occupancy m) single photons spread evenly, starting at mode 0.
[[nodiscard]] FockState alternating_fill(std::size_t modes, double occupancy);

} // namespace fockgrad
