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
#include "qnspsa/qbm/qbm.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qnspsa {

double cross_entropy(const std::vector<double> &p_target,
                     const std::vector<double> &p_model) {
    if (p_target.size() != p_model.size()) {
        throw std::invalid_argument("cross_entropy: length mismatch (" +
                                    std::to_string(p_target.size()) + " vs " +
                                    std::to_string(p_model.size()) + ")");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p_target.size(); ++i) {
        if (p_target[i] != 0.0) {
            sum -= p_target[i] * std::log(std::max(p_model[i], kProbabilityFloor));
        }
    }
    return sum;
}

PauliSum qbm_hamiltonian(const Vector &omega) {
    if (omega.size() != 3) {
        throw std::invalid_argument("qbm_hamiltonian: expected 3 coefficients, got " +
                                    std::to_string(omega.size()));
    }
    PauliSum h(2);
    h.add_z(omega[0], {0, 1});
    h.add_z(omega[1], {0});
    h.add_z(omega[2], {1});
    return h;
}

Circuit qbm_ansatz() {
    Circuit c(4);
    std::size_t p = 0;
    for (std::size_t q = 0; q < 4; ++q) {
        c.ry(q, Angle::parameter(p++));
    }
    c.cx(0, 1).cx(2, 3);
    for (std::size_t q = 0; q < 4; ++q) {
        c.ry(q, Angle::parameter(p++));
    }
    c.cx(0, 2).cx(1, 3);
    for (std::size_t q = 0; q < 4; ++q) {
        c.ry(q, Angle::parameter(p++));
    }
    return c;
}

Vector qbm_initial_theta() {
    Vector theta = Vector::Zero(12);
    theta[0] = kPi / 2.0;
    theta[1] = kPi / 2.0;
    return theta;
}

void QbmConfig::validate() const {
    if (target.size() != 4) {
        throw std::invalid_argument("qbm: target must have 4 entries");
    }
    double total = 0.0;
    for (double p : target) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("qbm: target entries must be >= 0");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("qbm: target must sum to 1 (sum is " +
                                    std::to_string(total) + ")");
    }
    if (!(omega_low < omega_high)) {
        throw std::invalid_argument("qbm: omega range is empty");
    }
    if (n_state_averages < 1 || iterations < 0 || !(kT > 0.0)) {
        throw std::invalid_argument(
            "qbm: need n_state_averages >= 1, iterations >= 0, kT > 0");
    }
}

std::vector<double> qbm_probabilities(const Vector &omega,
                                      const QbmConfig &config, Rng &rng) {
    const auto h = qbm_hamiltonian(omega);
    if (config.backend == GibbsBackend::Exact) {
        return exact_gibbs(h, config.kT).probabilities;
    }
    const GibbsProblem problem{h, config.kT, qbm_ansatz(), qbm_initial_theta()};
    std::vector<double> mean(4, 0.0);
    for (int a = 0; a < config.n_state_averages; ++a) {
        Rng sub(rng());
        const auto result = prepare_gibbs(problem, config.gibbs, sub);
        for (std::size_t x = 0; x < mean.size(); ++x) {
            mean[x] += result.probabilities[x];
        }
    }
    for (double &p : mean) {
        p /= config.n_state_averages;
    }
    return mean;
}

double qbm_loss(const Vector &omega, const QbmConfig &config, Rng &rng) {
    return cross_entropy(config.target, qbm_probabilities(omega, config, rng));
}

Problem make_qbm_problem(const QbmConfig &config, Vector initial_omega) {
    config.validate();
    auto cfg = std::make_shared<const QbmConfig>(config);
    Problem p;
    p.initial = std::move(initial_omega);
    const long cost = config.backend == GibbsBackend::Exact ? 1 : config.n_state_averages;
    p.loss = [cfg, cost](const Vector &omega, Rng &rng) {
        return Measurement{qbm_loss(omega, *cfg, rng), 0.0, cost};
    };
    p.reported_loss = [cfg](const Vector &omega) {
        return cross_entropy(cfg->target,
                             exact_gibbs(qbm_hamiltonian(omega), cfg->kT).probabilities);
    };
    return p;
}

QbmResult train(const QbmConfig &config) {
    config.validate();
    QbmResult out;
    Rng init = make_stream(config.seed, static_cast<std::uint64_t>(StreamTag::InitialPoint));
    out.initial_omega = Vector(3);
    for (Eigen::Index i = 0; i < 3; ++i) {
        out.initial_omega[i] = uniform(init, config.omega_low, config.omega_high);
    }
    OptimizerConfig opt;
    opt.method = Method::SPSA;
    opt.learning_rate = Schedule::constant(config.eta);
    opt.perturbation = Schedule::constant(config.epsilon);
    opt.iterations = config.iterations;
    opt.seed = config.seed;
    out.run = optimize(opt, make_qbm_problem(config, out.initial_omega));
    if (out.run.failed) {
        throw std::runtime_error("qbm training failed: " + out.run.error);
    }
    out.final_omega = out.run.records.back().theta;
    Rng final_rng = make_stream(config.seed, static_cast<std::uint64_t>(StreamTag::Reporting));
    out.final_probabilities = qbm_probabilities(out.final_omega, config, final_rng);
    out.final_loss = cross_entropy(config.target, out.final_probabilities);
    out.final_exact_loss = out.run.records.back().loss;
    return out;
}

} // namespace qnspsa
