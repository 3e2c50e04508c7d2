// Copyright 2026 The qnspsa-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file circuit.hpp
 * Gate list with a parameter map. Rotations follow R_P(a) = exp(-i a P / 2)
 * for P in {X, Y, Z, ZZ}; GlobalPhase(a) multiplies the state by exp(i a).
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qnspsa/common.hpp"

namespace qnspsa {

enum class GateKind { RX, RY, RZ, RZZ, H, X, CX, CZ, CRY, GlobalPhase };

std::string_view gate_name(GateKind kind) noexcept;

/// Number of qubit operands a gate kind takes (0 for GlobalPhase).
std::size_t gate_arity(GateKind kind) noexcept;

/// True for kinds that carry an angle.
bool gate_is_rotation(GateKind kind) noexcept;

/// Either a fixed angle, or `offset + scale * theta[param]`.
struct Angle {
    double offset = 0.0;
    std::optional<std::size_t> param;
    double scale = 1.0;

    static Angle fixed(double value) { return Angle{value, std::nullopt, 1.0}; }
    static Angle parameter(std::size_t index, double scale = 1.0) {
        return Angle{0.0, index, scale};
    }

    [[nodiscard]] double bind(const Vector &theta) const {
        return param ? offset + scale * theta[static_cast<Eigen::Index>(*param)]
                     : offset;
    }
};

struct Gate {
    GateKind kind;
    /// Operand order: control first for CX/CZ/CRY.
    std::vector<std::size_t> qubits;
    Angle angle;
};

class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t n_params() const noexcept { return n_params_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept {
        return gates_;
    }

    /// Appends after checking operand count and qubit range. Parameter
    /// indices grow n_params to cover the largest index seen.
    Circuit &add(Gate gate);

    Circuit &rx(std::size_t q, Angle a) { return add({GateKind::RX, {q}, a}); }
    Circuit &ry(std::size_t q, Angle a) { return add({GateKind::RY, {q}, a}); }
    Circuit &rz(std::size_t q, Angle a) { return add({GateKind::RZ, {q}, a}); }
    Circuit &rzz(std::size_t q0, std::size_t q1, Angle a) {
        return add({GateKind::RZZ, {q0, q1}, a});
    }
    Circuit &h(std::size_t q) { return add({GateKind::H, {q}, {}}); }
    Circuit &x(std::size_t q) { return add({GateKind::X, {q}, {}}); }
    Circuit &cx(std::size_t c, std::size_t t) {
        return add({GateKind::CX, {c, t}, {}});
    }
    Circuit &cz(std::size_t a, std::size_t b) {
        return add({GateKind::CZ, {a, b}, {}});
    }
    Circuit &cry(std::size_t c, std::size_t t, Angle a) {
        return add({GateKind::CRY, {c, t}, a});
    }
    Circuit &global_phase(Angle a) {
        return add({GateKind::GlobalPhase, {}, a});
    }

    /// Throws std::invalid_argument if some index in [0, n_params) is not
    /// used by any gate.
    void validate() const;

    /// Positions of the gates that read parameter `index`.
    [[nodiscard]] std::vector<std::size_t> gates_using(std::size_t index) const;

  private:
    std::size_t n_qubits_;
    std::size_t n_params_ = 0;
    std::vector<Gate> gates_;
};

} // namespace qnspsa
