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
#include "qnspsa/simcore/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qnspsa {

namespace {

using Matrix2 = std::array<Complex, 4>; // row-major

constexpr Complex kI{0.0, 1.0};

void apply_1q(std::span<Complex> amps, std::size_t q, const Matrix2 &m) {
    const std::size_t mask = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != 0U) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | mask];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | mask] = m[2] * a0 + m[3] * a1;
    }
}

/// 2x2 matrix applied to `t` only where qubit `c` is set.
void apply_controlled_1q(std::span<Complex> amps, std::size_t c, std::size_t t,
                         const Matrix2 &m) {
    const std::size_t cmask = std::size_t{1} << c;
    const std::size_t tmask = std::size_t{1} << t;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) == 0U || (i & tmask) != 0U) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | tmask];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | tmask] = m[2] * a0 + m[3] * a1;
    }
}

Matrix2 rx_matrix(double a) {
    const double c = std::cos(a / 2);
    const double s = std::sin(a / 2);
    return {Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0}};
}

Matrix2 ry_matrix(double a) {
    const double c = std::cos(a / 2);
    const double s = std::sin(a / 2);
    return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
}

void apply_rz(std::span<Complex> amps, std::size_t q, double a) {
    const std::size_t mask = std::size_t{1} << q;
    const Complex lo = std::polar(1.0, -a / 2);
    const Complex hi = std::polar(1.0, a / 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= (i & mask) != 0U ? hi : lo;
    }
}

void apply_rzz(std::span<Complex> amps, std::size_t q0, std::size_t q1,
               double a) {
    const Complex even = std::polar(1.0, -a / 2);
    const Complex odd = std::polar(1.0, a / 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const bool parity = (((i >> q0) ^ (i >> q1)) & 1U) != 0U;
        amps[i] *= parity ? odd : even;
    }
}

void apply_bound(std::span<Complex> amps, const Gate &g, double a) {
    const auto &q = g.qubits;
    switch (g.kind) {
    case GateKind::RX:
        apply_1q(amps, q[0], rx_matrix(a));
        break;
    case GateKind::RY:
        apply_1q(amps, q[0], ry_matrix(a));
        break;
    case GateKind::RZ:
        apply_rz(amps, q[0], a);
        break;
    case GateKind::RZZ:
        apply_rzz(amps, q[0], q[1], a);
        break;
    case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        apply_1q(amps, q[0], {Complex{r}, Complex{r}, Complex{r}, Complex{-r}});
        break;
    }
    case GateKind::X: {
        const std::size_t mask = std::size_t{1} << q[0];
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & mask) == 0U) {
                std::swap(amps[i], amps[i | mask]);
            }
        }
        break;
    }
    case GateKind::CX: {
        const std::size_t cmask = std::size_t{1} << q[0];
        const std::size_t tmask = std::size_t{1} << q[1];
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & cmask) != 0U && (i & tmask) == 0U) {
                std::swap(amps[i], amps[i | tmask]);
            }
        }
        break;
    }
    case GateKind::CZ: {
        const std::size_t both = (std::size_t{1} << q[0]) | (std::size_t{1} << q[1]);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & both) == both) {
                amps[i] = -amps[i];
            }
        }
        break;
    }
    case GateKind::CRY:
        apply_controlled_1q(amps, q[0], q[1], ry_matrix(a));
        break;
    case GateKind::GlobalPhase: {
        const Complex phase = std::polar(1.0, a);
        for (auto &amp : amps) {
            amp *= phase;
        }
        break;
    }
    }
}

/// Applies the Hermitian generator G of a rotation gate (no prefactor).
/// For CRY this is |1><1| (x) Y, which is not unitary.
void apply_generator(std::span<Complex> amps, const Gate &g) {
    const auto &q = g.qubits;
    switch (g.kind) {
    case GateKind::RX:
        apply_1q(amps, q[0], {Complex{0}, Complex{1}, Complex{1}, Complex{0}});
        break;
    case GateKind::RY:
        apply_1q(amps, q[0], {Complex{0}, -kI, kI, Complex{0}});
        break;
    case GateKind::RZ: {
        const std::size_t mask = std::size_t{1} << q[0];
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & mask) != 0U) {
                amps[i] = -amps[i];
            }
        }
        break;
    }
    case GateKind::RZZ:
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((((i >> q[0]) ^ (i >> q[1])) & 1U) != 0U) {
                amps[i] = -amps[i];
            }
        }
        break;
    case GateKind::CRY: {
        const std::size_t cmask = std::size_t{1} << q[0];
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & cmask) == 0U) {
                amps[i] = 0.0;
            }
        }
        apply_controlled_1q(amps, q[0], q[1],
                            {Complex{0}, -kI, kI, Complex{0}});
        break;
    }
    case GateKind::GlobalPhase:
        break;
    default:
        throw std::logic_error("apply_generator: gate has no generator");
    }
}

/// d(gate)/d(angle) = factor * G * gate.
Complex generator_factor(const Gate &g) {
    return g.kind == GateKind::GlobalPhase ? kI : Complex{0.0, -0.5};
}

void check_theta(const Circuit &circuit, const Vector &theta) {
    if (static_cast<std::size_t>(theta.size()) != circuit.n_params()) {
        throw std::invalid_argument(
            "parameter length " + std::to_string(theta.size()) +
            " does not match circuit n_params " +
            std::to_string(circuit.n_params()));
    }
}

void check_width(const StateVector &state, const Circuit &circuit) {
    if (state.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("state has " +
                                    std::to_string(state.n_qubits()) +
                                    " qubits, circuit has " +
                                    std::to_string(circuit.n_qubits()));
    }
}

} // namespace

void apply_gate(StateVector &state, const Gate &gate, const Vector &theta) {
    apply_bound(state.amplitudes(), gate, gate.angle.bind(theta));
}

void apply_inverse_gate(StateVector &state, const Gate &gate,
                        const Vector &theta) {
    apply_bound(state.amplitudes(), gate, -gate.angle.bind(theta));
}

void apply_circuit(StateVector &state, const Circuit &circuit,
                   const Vector &theta) {
    check_theta(circuit, theta);
    check_width(state, circuit);
    for (const auto &g : circuit.gates()) {
        apply_gate(state, g, theta);
    }
}

void apply_circuit_inverse(StateVector &state, const Circuit &circuit,
                           const Vector &theta) {
    check_theta(circuit, theta);
    check_width(state, circuit);
    const auto &gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        apply_inverse_gate(state, *it, theta);
    }
}

StateVector run(const Circuit &circuit, const Vector &theta) {
    StateVector state(circuit.n_qubits());
    apply_circuit(state, circuit, theta);
    return state;
}

double fidelity(const Circuit &circuit, const Vector &theta,
                const Vector &theta_prime) {
    const auto a = run(circuit, theta);
    const auto b = run(circuit, theta_prime);
    return std::min(1.0, std::norm(a.inner(b)));
}

double fidelity_sampled(const Circuit &circuit, const Vector &theta,
                        const Vector &theta_prime, long shots, Rng &rng) {
    auto state = run(circuit, theta);
    apply_circuit_inverse(state, circuit, theta_prime);
    const auto counts = sample_counts(state, shots, rng);
    const auto it = counts.find(0);
    const long zeros = it == counts.end() ? 0 : it->second;
    return static_cast<double>(zeros) / static_cast<double>(shots);
}

StateVector derivative_state(const Circuit &circuit, const Vector &theta,
                             std::size_t index) {
    check_theta(circuit, theta);
    if (index >= circuit.n_params()) {
        throw std::out_of_range("derivative_state: parameter index " +
                                std::to_string(index) + " >= n_params " +
                                std::to_string(circuit.n_params()));
    }
    const auto &gates = circuit.gates();
    std::vector<Complex> zero(std::size_t{1} << circuit.n_qubits());
    StateVector result(circuit.n_qubits(), std::move(zero), false);
    for (const auto pos : circuit.gates_using(index)) {
        StateVector term(circuit.n_qubits());
        for (std::size_t j = 0; j <= pos; ++j) {
            apply_gate(term, gates[j], theta);
        }
        apply_generator(term.amplitudes(), gates[pos]);
        term *= generator_factor(gates[pos]) * gates[pos].angle.scale;
        for (std::size_t j = pos + 1; j < gates.size(); ++j) {
            apply_gate(term, gates[j], theta);
        }
        result += term;
    }
    result.mark_unnormalized();
    return result;
}

std::vector<StateVector> derivative_states(const Circuit &circuit,
                                           const Vector &theta) {
    check_theta(circuit, theta);
    const auto &gates = circuit.gates();
    const std::size_t dim = std::size_t{1} << circuit.n_qubits();
    std::vector<StateVector> out;
    out.reserve(circuit.n_params());
    for (std::size_t i = 0; i < circuit.n_params(); ++i) {
        out.emplace_back(circuit.n_qubits(), std::vector<Complex>(dim), false);
    }
    // Forward pass; at each parameterized gate branch off a generator term
    // and push it through the remaining gates.
    StateVector state(circuit.n_qubits());
    for (std::size_t pos = 0; pos < gates.size(); ++pos) {
        apply_gate(state, gates[pos], theta);
        const auto &g = gates[pos];
        if (!g.angle.param) {
            continue;
        }
        StateVector term = state;
        apply_generator(term.amplitudes(), g);
        term *= generator_factor(g) * g.angle.scale;
        for (std::size_t j = pos + 1; j < gates.size(); ++j) {
            apply_gate(term, gates[j], theta);
        }
        out[*g.angle.param] += term;
    }
    return out;
}

Counts sample_counts(const StateVector &state, long shots, Rng &rng) {
    if (shots < 1) {
        throw std::invalid_argument("sample_counts: shots must be >= 1");
    }
    const double norm = state.norm_squared();
    if (!state.normalized() || std::abs(norm - 1.0) > 1e-8) {
        throw std::invalid_argument(
            "sample_counts: state is not normalized (norm^2 = " +
            std::to_string(norm) + ")");
    }
    const auto amps = state.amplitudes();
    std::vector<double> cumulative(amps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        cumulative[i] = acc;
    }
    Counts counts;
    for (long s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) {
            --it;
        }
        auto idx = static_cast<std::size_t>(it - cumulative.begin());
        ++counts[idx];
    }
    return counts;
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> out(state.dimension());
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out[i] = std::norm(amps[i]);
    }
    return out;
}

namespace {

void check_keep(const StateVector &state, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("reduced state: keep list is empty");
    }
    std::vector<bool> seen(state.n_qubits(), false);
    for (auto q : keep) {
        if (q >= state.n_qubits()) {
            throw std::out_of_range("reduced state: qubit " +
                                    std::to_string(q) + " out of range");
        }
        if (seen[q]) {
            throw std::invalid_argument("reduced state: duplicate qubit " +
                                        std::to_string(q));
        }
        seen[q] = true;
    }
}

std::size_t gather_bits(std::size_t index, std::span<const std::size_t> qubits) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        out |= ((index >> qubits[j]) & 1U) << j;
    }
    return out;
}

} // namespace

std::vector<double> reduced_probabilities(const StateVector &state,
                                          std::span<const std::size_t> keep) {
    check_keep(state, keep);
    std::vector<double> out(std::size_t{1} << keep.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out[gather_bits(i, keep)] += std::norm(amps[i]);
    }
    return out;
}

ComplexMatrix reduced_density_matrix(const StateVector &state,
                                     std::span<const std::size_t> keep) {
    check_keep(state, keep);
    std::vector<std::size_t> env;
    for (std::size_t q = 0; q < state.n_qubits(); ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            env.push_back(q);
        }
    }
    const auto dk = static_cast<Eigen::Index>(std::size_t{1} << keep.size());
    const auto de = static_cast<Eigen::Index>(std::size_t{1} << env.size());
    ComplexMatrix m = ComplexMatrix::Zero(dk, de);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        m(static_cast<Eigen::Index>(gather_bits(i, keep)),
          static_cast<Eigen::Index>(gather_bits(i, env))) = amps[i];
    }
    return m * m.adjoint();
}

} // namespace qnspsa
