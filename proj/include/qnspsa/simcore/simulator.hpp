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
 * @file simulator.hpp
 * Statevector execution of parameterized circuits, overlaps, derivative
 * states and measurement sampling.
 */
#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "qnspsa/common.hpp"
#include "qnspsa/simcore/circuit.hpp"
#include "qnspsa/simcore/state_vector.hpp"

namespace qnspsa {

using Counts = std::map<std::size_t, long>;

/// Applies one gate with angles bound from `theta`.
void apply_gate(StateVector &state, const Gate &gate, const Vector &theta);

/// Applies the inverse of one gate (negated angle; self-inverse kinds as is).
void apply_inverse_gate(StateVector &state, const Gate &gate,
                        const Vector &theta);

/// U(theta)|0...0>.
StateVector run(const Circuit &circuit, const Vector &theta);

/// Applies the circuit to an arbitrary input state.
void apply_circuit(StateVector &state, const Circuit &circuit,
                   const Vector &theta);

/// Applies U^dagger(theta) to an arbitrary input state.
void apply_circuit_inverse(StateVector &state, const Circuit &circuit,
                           const Vector &theta);

/// |<psi(theta)|psi(theta_prime)>|^2 from the exact amplitudes.
double fidelity(const Circuit &circuit, const Vector &theta,
                const Vector &theta_prime);

/// Compute-uncompute estimate: prepares U^dagger(theta') U(theta)|0> and
/// returns the sampled frequency of the all-zeros outcome.
double fidelity_sampled(const Circuit &circuit, const Vector &theta,
                        const Vector &theta_prime, long shots, Rng &rng);

/// d|psi(theta)>/d theta_i, summed over every gate that reads parameter i.
/// The result is flagged unnormalized.
StateVector derivative_state(const Circuit &circuit, const Vector &theta,
                             std::size_t index);

/// All derivative states, one per parameter.
std::vector<StateVector> derivative_states(const Circuit &circuit,
                                           const Vector &theta);

/// Multinomial draw of `shots` outcomes from |amplitude|^2.
Counts sample_counts(const StateVector &state, long shots, Rng &rng);

/// Computational basis probabilities |amplitude|^2.
std::vector<double> probabilities(const StateVector &state);

/// Marginal probabilities over `keep`; bit j of the output index is qubit
/// keep[j].
std::vector<double> reduced_probabilities(const StateVector &state,
                                          std::span<const std::size_t> keep);

/// Partial trace onto `keep`, same index convention as
/// reduced_probabilities.
ComplexMatrix reduced_density_matrix(const StateVector &state,
                                     std::span<const std::size_t> keep);

/// Exact or shot-based evaluation at the measurement boundary.
struct EvalMode {
    /// 0 selects exact evaluation.
    long shots = 0;

    [[nodiscard]] bool exact() const noexcept { return shots == 0; }
};

} // namespace qnspsa
