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
 * @file qbm.hpp
 * Generative training of a two-qubit variational quantum Boltzmann machine
 * H = w1 Z0 Z1 + w2 Z0 + w3 Z1 against a target distribution.
 *
 * The Gibbs state is prepared on a fixed 4-qubit, 12-parameter ansatz
 * (system q0, q1; ancillas q2, q3 paired as (q0,q2), (q1,q3)):
 *
 *     RY(t0..t3); CX(0,1) CX(2,3); RY(t4..t7); CX(0,2) CX(1,3); RY(t8..t11)
 *
 * The first two layers prepare a real two-qubit state on q0, q1 which the
 * second entangler copies onto the ancillas, so every diagonal Gibbs
 * purification sum_x sqrt(p_x)|x>|x> is reachable. With t0 = t1 = pi/2 and
 * the rest 0 the pairs start as Bell states.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "qnspsa/common.hpp"
#include "qnspsa/observables/pauli.hpp"
#include "qnspsa/optim/optimizer.hpp"
#include "qnspsa/simcore/circuit.hpp"
#include "qnspsa/varqite/varqite.hpp"

namespace qnspsa {

inline constexpr double kProbabilityFloor = 1e-10;

/// -sum_x p_target(x) log(max(p_model(x), 1e-10)).
double cross_entropy(const std::vector<double> &p_target,
                     const std::vector<double> &p_model);

/// w[0] Z0 Z1 + w[1] Z0 + w[2] Z1.
PauliSum qbm_hamiltonian(const Vector &omega);

Circuit qbm_ansatz();
/// The two Bell-creating rotations at pi/2, everything else 0.
Vector qbm_initial_theta();

enum class GibbsBackend { Exact, VarQite };

struct QbmConfig {
    std::vector<double> target{0.5, 0.0, 0.0, 0.5};
    double omega_low = -2.0;
    double omega_high = 2.0;
    double eta = 0.1;
    double epsilon = 0.1;
    int iterations = 100;
    int n_state_averages = 10;
    GibbsBackend backend = GibbsBackend::VarQite;
    double kT = 1.0;
    EvolutionConfig gibbs{0.5, 10, MetricMode::qnspsa(10, 1e-2, 0.1), {}};
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on an invalid target or settings.
    void validate() const;
};

/// Model probabilities at omega: exact Gibbs marginals, or the average of
/// n_state_averages VarQITE preparations, each on a sub-stream seeded from
/// one draw of `rng`.
std::vector<double> qbm_probabilities(const Vector &omega,
                                      const QbmConfig &config, Rng &rng);

double qbm_loss(const Vector &omega, const QbmConfig &config, Rng &rng);

/// SPSA problem over omega. A loss evaluation is charged one circuit per
/// Gibbs preparation; the trace loss is the exact-Gibbs cross-entropy.
Problem make_qbm_problem(const QbmConfig &config, Vector initial_omega);

struct QbmResult {
    RunResult run;
    Vector initial_omega;
    Vector final_omega;
    /// Backend probabilities at the final omega and their cross-entropy.
    std::vector<double> final_probabilities;
    double final_loss = 0.0;
    /// Cross-entropy of the exact Gibbs state at the final omega.
    double final_exact_loss = 0.0;
};

QbmResult train(const QbmConfig &config);

} // namespace qnspsa
