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
 * @file builders.hpp
 * Benchmark instances: Pauli two-design, the two-qubit convergence-region
 * problem, weighted MAXCUT QAOA, and a few generic ansatz families.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnspsa/common.hpp"
#include "qnspsa/observables/pauli.hpp"
#include "qnspsa/simcore/circuit.hpp"

namespace qnspsa {

struct Instance {
    Circuit circuit;
    PauliSum observable;
};

/// RY(pi/4) on every qubit, then `reps` x (random-axis rotation layer +
/// nearest-neighbour CZ layer), then a final random-axis rotation layer.
/// The observable is Z on the two middle qubits: 0-indexed qubits
/// floor(n/2) - 1 and floor(n/2). Axes depend only on `seed`.
Instance build_two_design(std::size_t n_qubits, std::size_t reps,
                          std::uint64_t seed);

/// Parameters (phase, t1, t2): GlobalPhase(phase), RX(t1) on qubit 1,
/// CRY(t2) from qubit 1 onto qubit 0. The Hamiltonian is diag(1, 2, 3, 0)
/// in the computational basis.
Instance build_convergence_problem();

/// The five-node weighted MAXCUT cost Hamiltonian (7 ZZ terms).
PauliSum maxcut_hamiltonian();

/// QAOA for a diagonal Hamiltonian with at most two-body terms: an H layer,
/// then per layer l a cost layer (RZ(2 gamma_l c) / RZZ(2 gamma_l c) per
/// term) and a mixer RX(2 beta_l * mixer_weight) on every qubit.
/// Parameters are ordered (gamma_1, beta_1, gamma_2, beta_2, ...).
Circuit build_qaoa(const PauliSum &cost, std::size_t layers, double mixer_weight);

/// MAXCUT instance with mixer sum_i X_i / 20.
Instance build_maxcut(std::size_t layers = 2);

/// RY layer, then reps x (CZ chain + RY layer).
Circuit build_hardware_efficient(std::size_t n_qubits, std::size_t reps);

/// Minimum eigenvalue of a diagonal Hamiltonian by enumerating all basis
/// states (at most 24 qubits).
double diagonal_minimum(const PauliSum &obs);

/// Random circuit on `n_qubits` with `n_params` parameters, mixing
/// parameterized RX/RY/RZ/RZZ/CRY with fixed H/CX/CZ. Parameter 0 is
/// shared by two gates when n_params >= 2.
Circuit random_circuit(std::size_t n_qubits, std::size_t n_params, Rng &rng);

/// Uniform draw from [lo, hi) for every parameter.
Vector random_point(std::size_t n, Rng &rng, double lo = -kPi, double hi = kPi);

} // namespace qnspsa
