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
 * @file varqite.hpp
 * Variational imaginary time evolution (McLachlan system, explicit Euler)
 * and Gibbs state preparation from system/ancilla Bell pairs.
 *
 * For a Gibbs problem on n system qubits the ansatz acts on 2n qubits:
 * qubits 0..n-1 carry the system, qubit i + n is the ancilla paired with
 * system qubit i.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnspsa/common.hpp"
#include "qnspsa/observables/pauli.hpp"
#include "qnspsa/simcore/circuit.hpp"
#include "qnspsa/simcore/simulator.hpp"

namespace qnspsa {

struct MetricMode {
    enum class Kind { Analytic, QnSpsa };
    Kind kind = Kind::Analytic;
    int n_resamplings = 10;
    double epsilon = 1e-2;
    double beta = 0.1;
    bool normalized = true;
    EvalMode fidelity_mode{};

    static MetricMode analytic() { return {}; }
    static MetricMode qnspsa(int n_resamplings, double epsilon, double beta) {
        MetricMode m;
        m.kind = Kind::QnSpsa;
        m.n_resamplings = n_resamplings;
        m.epsilon = epsilon;
        m.beta = beta;
        return m;
    }
};

struct EvolutionConfig {
    double total_time = 0.5;
    int n_steps = 10;
    MetricMode metric;
    /// Ridge term added to the metric before the solve. Unset means 1e-4
    /// for the analytic metric and 0 for QN-SPSA (already regularized).
    std::optional<double> lse_regularization;

    [[nodiscard]] double step_size() const { return total_time / n_steps; }
    [[nodiscard]] double ridge() const;
};

/// b_i = -Re<d_i psi|H|psi>.
Vector mclachlan_rhs(const Circuit &circuit, const Vector &theta,
                     const PauliSum &hamiltonian);

struct Trajectory {
    /// thetas[0] is the starting point; one entry per completed step.
    std::vector<Vector> thetas;
    bool failed = false;
    std::string error;
};

/// Euler integration of g dtheta/dt = b. `rng` drives the QN-SPSA metric
/// directions (and fidelity shots when sampled); unused in analytic mode.
Trajectory evolve(const Circuit &circuit, const Vector &theta0,
                  const PauliSum &hamiltonian, const EvolutionConfig &config,
                  Rng &rng);

struct GibbsProblem {
    PauliSum system_hamiltonian;
    double kT = 1.0;
    Circuit ansatz;
    Vector theta0;

    [[nodiscard]] std::size_t n_system() const noexcept {
        return system_hamiltonian.n_qubits();
    }
    [[nodiscard]] std::vector<std::size_t> system_qubits() const;
};

/// Trace distance between the reduced system state at theta0 and the
/// maximally mixed state.
double initial_mixedness_error(const GibbsProblem &problem);

/// Throws std::invalid_argument unless the ansatz is twice as wide as the
/// Hamiltonian and the reduced state at theta0 is maximally mixed within
/// 1e-6.
void validate_gibbs_problem(const GibbsProblem &problem);

struct GibbsResult {
    Vector theta;
    std::vector<double> probabilities;
};

/// Evolves the extended Hamiltonian H (x) I for imaginary time 1/(2 kT)
/// (config.total_time is overwritten) and returns the system marginals.
GibbsResult prepare_gibbs(const GibbsProblem &problem, EvolutionConfig config,
                          Rng &rng);

struct ExactGibbs {
    ComplexMatrix density;
    std::vector<double> probabilities;
};

/// exp(-H / kT) / Z by eigendecomposition; limited to 10 qubits.
ExactGibbs exact_gibbs(const PauliSum &hamiltonian, double kT);

double total_variation(const std::vector<double> &p, const std::vector<double> &q);

} // namespace qnspsa
