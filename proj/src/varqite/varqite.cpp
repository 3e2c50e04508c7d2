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
#include "qnspsa/varqite/varqite.hpp"

#include <cmath>
#include <stdexcept>

#include "qnspsa/metrics/metrics.hpp"

namespace qnspsa {

double EvolutionConfig::ridge() const {
    if (lse_regularization) {
        return *lse_regularization;
    }
    return metric.kind == MetricMode::Kind::Analytic ? 1e-4 : 0.0;
}

Vector mclachlan_rhs(const Circuit &circuit, const Vector &theta,
                     const PauliSum &hamiltonian) {
    const auto psi = run(circuit, theta);
    const auto h_psi = hamiltonian.apply(psi);
    const auto dpsi = derivative_states(circuit, theta);
    Vector b(static_cast<Eigen::Index>(dpsi.size()));
    for (std::size_t i = 0; i < dpsi.size(); ++i) {
        b[static_cast<Eigen::Index>(i)] = -dpsi[i].inner(h_psi).real();
    }
    return b;
}

Trajectory evolve(const Circuit &circuit, const Vector &theta0,
                  const PauliSum &hamiltonian, const EvolutionConfig &config,
                  Rng &rng) {
    if (!(config.total_time > 0.0) || config.n_steps < 1) {
        throw std::invalid_argument(
            "evolve: total_time must be > 0 and n_steps >= 1");
    }
    if (hamiltonian.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("evolve: Hamiltonian width " +
                                    std::to_string(hamiltonian.n_qubits()) +
                                    " differs from circuit width " +
                                    std::to_string(circuit.n_qubits()));
    }
    const double dt = config.step_size();
    const double ridge = config.ridge();
    const auto d = theta0.size();
    const auto &mode = config.metric;

    Trajectory out;
    out.thetas.push_back(theta0);
    Vector theta = theta0;
    auto smoothed = MetricEstimate::identity(d, mode.n_resamplings);
    try {
        for (int step = 0; step < config.n_steps; ++step) {
            const Vector b = mclachlan_rhs(circuit, theta, hamiltonian);
            Matrix g;
            if (mode.kind == MetricMode::Kind::Analytic) {
                g = metric_analytic(circuit, theta);
            } else {
                Matrix sample = Matrix::Zero(d, d);
                for (int s = 0; s < mode.n_resamplings; ++s) {
                    const auto pair = PerturbationPair::draw(rng, d);
                    sample += metric_point_sample(circuit, theta, mode.epsilon,
                                                  pair, mode.fidelity_mode, rng);
                }
                sample /= static_cast<double>(mode.n_resamplings);
                smoothed = smooth(smoothed, sample);
                g = regularize(smoothed.matrix, mode.beta, mode.normalized);
            }
            g.diagonal().array() += ridge;
            const Vector rate = g.completeOrthogonalDecomposition().solve(b);
            if (!rate.allFinite()) {
                throw std::runtime_error("evolve: non-finite parameter rate at step " +
                                         std::to_string(step));
            }
            theta += dt * rate;
            out.thetas.push_back(theta);
        }
    } catch (const std::exception &e) {
        out.failed = true;
        out.error = e.what();
    }
    return out;
}

std::vector<std::size_t> GibbsProblem::system_qubits() const {
    std::vector<std::size_t> q(n_system());
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = i;
    }
    return q;
}

double initial_mixedness_error(const GibbsProblem &problem) {
    const auto state = run(problem.ansatz, problem.theta0);
    const auto keep = problem.system_qubits();
    const ComplexMatrix rho = reduced_density_matrix(state, keep);
    const auto dim = rho.rows();
    const ComplexMatrix diff =
        rho - ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(diff);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

void validate_gibbs_problem(const GibbsProblem &problem) {
    if (problem.ansatz.n_qubits() != 2 * problem.n_system()) {
        throw std::invalid_argument(
            "Gibbs problem: ansatz has " +
            std::to_string(problem.ansatz.n_qubits()) +
            " qubits, expected twice the Hamiltonian width " +
            std::to_string(problem.n_system()));
    }
    if (!(problem.kT > 0.0)) {
        throw std::invalid_argument("Gibbs problem: kT must be > 0");
    }
    const double err = initial_mixedness_error(problem);
    if (err > 1e-6) {
        throw std::invalid_argument(
            "Gibbs problem: reduced initial state is not maximally mixed "
            "(trace distance " +
            std::to_string(err) + ")");
    }
}

GibbsResult prepare_gibbs(const GibbsProblem &problem, EvolutionConfig config,
                          Rng &rng) {
    validate_gibbs_problem(problem);
    config.total_time = 1.0 / (2.0 * problem.kT);
    const auto extended =
        problem.system_hamiltonian.extended(problem.ansatz.n_qubits());
    const auto traj = evolve(problem.ansatz, problem.theta0, extended, config, rng);
    if (traj.failed) {
        throw std::runtime_error("prepare_gibbs: " + traj.error);
    }
    GibbsResult result;
    result.theta = traj.thetas.back();
    const auto keep = problem.system_qubits();
    result.probabilities = reduced_probabilities(run(problem.ansatz, result.theta), keep);
    return result;
}

ExactGibbs exact_gibbs(const PauliSum &hamiltonian, double kT) {
    if (hamiltonian.n_qubits() > 10) {
        throw std::invalid_argument("exact_gibbs: more than 10 qubits");
    }
    if (!(kT > 0.0)) {
        throw std::invalid_argument("exact_gibbs: kT must be > 0");
    }
    const ComplexMatrix h = dense_matrix(hamiltonian);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("exact_gibbs: eigendecomposition failed");
    }
    const Vector energies = eig.eigenvalues();
    const double shift = energies.minCoeff();
    Vector weights = (-(energies.array() - shift) / kT).exp();
    weights /= weights.sum();
    const ComplexMatrix &v = eig.eigenvectors();
    ExactGibbs out;
    out.density = v * weights.cast<Complex>().asDiagonal() * v.adjoint();
    out.probabilities.resize(static_cast<std::size_t>(out.density.rows()));
    for (Eigen::Index i = 0; i < out.density.rows(); ++i) {
        out.probabilities[static_cast<std::size_t>(i)] = out.density(i, i).real();
    }
    return out;
}

double total_variation(const std::vector<double> &p, const std::vector<double> &q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("total_variation: length mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::abs(p[i] - q[i]);
    }
    return 0.5 * sum;
}

} // namespace qnspsa
