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
#include "qnspsa/optim/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qnspsa/observables/expectation.hpp"

namespace qnspsa {

std::string_view method_name(Method method) noexcept {
    switch (method) {
    case Method::GD:
        return "GD";
    case Method::QNG:
        return "QNG";
    case Method::SPSA:
        return "SPSA";
    case Method::TwoSPSA:
        return "2SPSA";
    case Method::QNSPSA:
        return "QNSPSA";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    upper.erase(std::remove(upper.begin(), upper.end(), '-'), upper.end());
    if (upper == "GD") {
        return Method::GD;
    }
    if (upper == "QNG") {
        return Method::QNG;
    }
    if (upper == "SPSA") {
        return Method::SPSA;
    }
    if (upper == "2SPSA") {
        return Method::TwoSPSA;
    }
    if (upper == "QNSPSA") {
        return Method::QNSPSA;
    }
    throw std::invalid_argument("unknown optimizer method '" +
                                std::string(name) +
                                "' (expected GD, QNG, SPSA, 2SPSA, QNSPSA)");
}

bool is_stochastic(Method method) noexcept {
    return method == Method::SPSA || method == Method::TwoSPSA ||
           method == Method::QNSPSA;
}

double Schedule::at(int k) const {
    if (is_constant()) {
        return coefficient;
    }
    return coefficient / std::pow(static_cast<double>(k) + offset, exponent);
}

Problem make_circuit_problem(const Circuit &circuit, const PauliSum &obs,
                             Vector initial, EvalMode loss_mode,
                             EvalMode fidelity_mode) {
    if (obs.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument(
            "observable acts on " + std::to_string(obs.n_qubits()) +
            " qubits but the circuit has " + std::to_string(circuit.n_qubits()));
    }
    if (static_cast<std::size_t>(initial.size()) != circuit.n_params()) {
        throw std::invalid_argument("initial point has " +
                                    std::to_string(initial.size()) +
                                    " entries, circuit has " +
                                    std::to_string(circuit.n_params()) +
                                    " parameters");
    }
    auto c = std::make_shared<const Circuit>(circuit);
    auto h = std::make_shared<const PauliSum>(obs);
    const auto bases = static_cast<long>(measurement_bases(obs));
    const auto d = static_cast<long>(circuit.n_params());

    Problem p;
    p.initial = std::move(initial);
    p.loss = [c, h, loss_mode, bases](const Vector &theta, Rng &rng) {
        if (loss_mode.exact()) {
            return Measurement{expectation_exact(run(*c, theta), *h), 0.0, bases};
        }
        const auto m = expectation_sampled(*c, theta, *h, loss_mode.shots, rng);
        return Measurement{m.value, m.std_error, bases};
    };
    p.reported_loss = [c, h](const Vector &theta) {
        return expectation_exact(run(*c, theta), *h);
    };
    p.fidelity = [c, fidelity_mode](const Vector &a, const Vector &b, Rng &rng) {
        if (fidelity_mode.exact()) {
            return Measurement{fidelity(*c, a, b), 0.0, 1};
        }
        return Measurement{fidelity_sampled(*c, a, b, fidelity_mode.shots, rng),
                           0.0, 1};
    };
    p.gradient = [c, h](const Vector &theta) {
        return analytic_gradient(*c, theta, *h);
    };
    p.metric = [c](const Vector &theta) { return metric_analytic(*c, theta); };
    p.gradient_circuits = bases * d;
    p.metric_circuits = d * (d + 1) / 2;
    return p;
}

Vector spsa_gradient(const ScalarLoss &loss, const Vector &theta,
                     double epsilon, const Vector &direction) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("spsa_gradient: epsilon must be > 0");
    }
    if (direction.size() != theta.size()) {
        throw std::invalid_argument("spsa_gradient: direction size mismatch");
    }
    const double plus = loss(theta + epsilon * direction);
    const double minus = loss(theta - epsilon * direction);
    return ((plus - minus) / (2.0 * epsilon)) * direction;
}

Vector gd_step(const Vector &theta, const Vector &gradient, double eta) {
    if (gradient.size() != theta.size()) {
        throw std::invalid_argument("gd_step: gradient size mismatch");
    }
    return theta - eta * gradient;
}

Vector natural_step(const Vector &theta, const Vector &gradient,
                    const Matrix &metric, double eta) {
    if (gradient.size() != theta.size() || metric.rows() != theta.size() ||
        metric.cols() != theta.size()) {
        throw std::invalid_argument("natural_step: shape mismatch");
    }
    Eigen::LLT<Matrix> llt(metric);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error(
            "natural_step: metric is not positive definite; increase the "
            "regularization beta");
    }
    const Vector direction = llt.solve(gradient);
    if (!direction.allFinite()) {
        throw std::runtime_error("natural_step: solve produced non-finite values");
    }
    return theta - eta * direction;
}

Vector natural_step_lstsq(const Vector &theta, const Vector &gradient,
                          const Matrix &metric, double eta) {
    if (gradient.size() != theta.size() || metric.rows() != theta.size() ||
        metric.cols() != theta.size()) {
        throw std::invalid_argument("natural_step_lstsq: shape mismatch");
    }
    const Vector direction = metric.completeOrthogonalDecomposition().solve(gradient);
    return theta - eta * direction;
}

bool blocking_check(double current_loss, double candidate_loss,
                    double tolerance) {
    return candidate_loss < current_loss + tolerance;
}

Vector analytic_gradient(const Circuit &circuit, const Vector &theta,
                         const PauliSum &obs) {
    const auto psi = run(circuit, theta);
    const auto h_psi = obs.apply(psi);
    const auto dpsi = derivative_states(circuit, theta);
    Vector grad(static_cast<Eigen::Index>(dpsi.size()));
    for (std::size_t i = 0; i < dpsi.size(); ++i) {
        grad[static_cast<Eigen::Index>(i)] = 2.0 * dpsi[i].inner(h_psi).real();
    }
    return grad;
}

double calibrate(const ScalarLoss &loss, const Vector &theta0,
                 double target_step_magnitude, int n_probes, double epsilon,
                 Rng &rng) {
    if (n_probes < 1) {
        throw std::invalid_argument("calibrate: n_probes must be >= 1");
    }
    if (target_step_magnitude == 0.0) {
        return 0.0;
    }
    double total = 0.0;
    for (int p = 0; p < n_probes; ++p) {
        const Vector delta = rademacher(rng, theta0.size());
        const double plus = loss(theta0 + epsilon * delta);
        const double minus = loss(theta0 - epsilon * delta);
        total += std::abs((plus - minus) / (2.0 * epsilon));
    }
    const double mean = total / n_probes;
    if (mean < 1e-12) {
        throw std::runtime_error(
            "calibrate: gradient estimate vanishes at the initial point");
    }
    return target_step_magnitude / mean;
}

OptimizerState::OptimizerState(const OptimizerConfig &config,
                               const Vector &initial)
    : theta(initial),
      metric(MetricEstimate::identity(initial.size(), config.n_resamplings)),
      gradient_rng(make_stream(config.seed,
                               static_cast<std::uint64_t>(StreamTag::GradientDirections))),
      curvature_rng(make_stream(config.seed,
                                static_cast<std::uint64_t>(StreamTag::CurvatureDirections))),
      loss_rng(make_stream(config.seed,
                           static_cast<std::uint64_t>(StreamTag::LossShots))),
      fidelity_rng(make_stream(config.seed,
                               static_cast<std::uint64_t>(StreamTag::FidelityShots))) {}

StepReport optimizer_step(const OptimizerConfig &config, const Problem &problem,
                          OptimizerState &state) {
    const int k = state.k + 1;
    const double eta = config.learning_rate.at(k);
    const double eps = config.perturbation.at(k);
    const auto method = config.method;
    const bool blocking = config.blocking && is_stochastic(method);

    long evals = 0;
    const ScalarLoss measured = [&](const Vector &x) {
        const auto m = problem.loss(x, state.loss_rng);
        evals += m.circuits;
        return m.value;
    };

    StepReport report;
    Vector candidate;
    std::optional<MetricEstimate> pending;
    std::optional<Measurement> candidate_loss;
    while (true) {
        pending.reset();
        switch (method) {
        case Method::GD: {
            if (!problem.gradient) {
                throw std::invalid_argument("GD requires an analytic gradient");
            }
            candidate = gd_step(state.theta, problem.gradient(state.theta), eta);
            evals += problem.gradient_circuits;
            break;
        }
        case Method::QNG: {
            if (!problem.gradient || !problem.metric) {
                throw std::invalid_argument(
                    "QNG requires an analytic gradient and metric");
            }
            const Vector grad = problem.gradient(state.theta);
            const Matrix g = problem.metric(state.theta);
            evals += problem.gradient_circuits + problem.metric_circuits;
            if (config.beta > 0.0) {
                candidate = natural_step(
                    state.theta, grad,
                    regularize(g, config.beta, config.normalized_regularization),
                    eta);
            } else {
                candidate = natural_step_lstsq(state.theta, grad, g, eta);
            }
            break;
        }
        case Method::SPSA: {
            const Vector delta = rademacher(state.gradient_rng, state.theta.size());
            candidate = gd_step(state.theta,
                                spsa_gradient(measured, state.theta, eps, delta), eta);
            break;
        }
        case Method::TwoSPSA:
        case Method::QNSPSA: {
            const Vector delta = rademacher(state.gradient_rng, state.theta.size());
            const Vector grad = spsa_gradient(measured, state.theta, eps, delta);
            const auto d = state.theta.size();
            Matrix sample = Matrix::Zero(d, d);
            const int r = std::max(1, config.n_resamplings);
            for (int s = 0; s < r; ++s) {
                const auto pair = PerturbationPair::draw(state.curvature_rng, d);
                if (method == Method::TwoSPSA) {
                    sample += hessian_point_sample(measured, state.theta, eps, pair);
                } else {
                    if (!problem.fidelity) {
                        throw std::invalid_argument(
                            "QNSPSA requires a fidelity evaluator");
                    }
                    sample += metric_point_sample(
                        [&](const Vector &a, const Vector &b) {
                            const auto m = problem.fidelity(a, b, state.fidelity_rng);
                            evals += m.circuits;
                            return m.value;
                        },
                        state.theta, eps, pair);
                }
            }
            sample /= static_cast<double>(r);
            pending = smooth(state.metric, sample);
            pending->resamplings_per_step = r;
            candidate = natural_step(
                state.theta, grad,
                regularize(pending->matrix, config.beta,
                           config.normalized_regularization),
                eta);
            break;
        }
        }
        if (!candidate.allFinite()) {
            throw std::runtime_error("optimizer produced non-finite parameters");
        }
        if (!blocking) {
            break;
        }
        candidate_loss = problem.loss(candidate, state.loss_rng);
        evals += candidate_loss->circuits;
        const double tolerance =
            config.blocking_tolerance.kind == BlockingTolerance::Kind::Fixed
                ? config.blocking_tolerance.value
                : 2.0 * candidate_loss->std_error;
        if (blocking_check(state.current->value, candidate_loss->value, tolerance)) {
            break;
        }
        ++report.rejections;
        if (report.rejections >= config.max_rejections) {
            report.accepted = false;
            break;
        }
    }

    state.theta = std::move(candidate);
    if (pending) {
        state.metric = std::move(*pending);
    }
    if (candidate_loss) {
        state.current = candidate_loss;
    }
    state.k = k;
    state.evaluations += evals;
    report.evaluations = evals;
    return report;
}

RunResult optimize(const OptimizerConfig &config, const Problem &problem) {
    if (!problem.loss) {
        throw std::invalid_argument("optimize: problem has no loss");
    }
    if (config.iterations < 0) {
        throw std::invalid_argument("optimize: iterations must be >= 0");
    }
    if (config.n_resamplings < 1) {
        throw std::invalid_argument("optimize: n_resamplings must be >= 1");
    }
    if (config.method == Method::QNSPSA || config.method == Method::TwoSPSA) {
        if (!(config.beta > 0.0)) {
            throw std::invalid_argument("optimize: beta must be > 0 for " +
                                        std::string(method_name(config.method)));
        }
    }
    using Clock = std::chrono::steady_clock;

    OptimizerConfig effective = config;
    RunResult result;
    Rng reporting = make_stream(config.seed,
                                static_cast<std::uint64_t>(StreamTag::Reporting));
    auto report_loss = [&](const Vector &theta) {
        if (problem.reported_loss) {
            return problem.reported_loss(theta);
        }
        return problem.loss(theta, reporting).value;
    };

    OptimizerState state(config, problem.initial);
    result.records.push_back({0, state.theta, report_loss(state.theta), 0, true, 0, 0.0});

    try {
        if (config.calibrate_target && is_stochastic(config.method)) {
            Rng cal = make_stream(config.seed,
                                  static_cast<std::uint64_t>(StreamTag::Calibration));
            long cal_evals = 0;
            const ScalarLoss probe = [&](const Vector &x) {
                const auto m = problem.loss(x, cal);
                cal_evals += m.circuits;
                return m.value;
            };
            const double a = calibrate(probe, problem.initial, *config.calibrate_target,
                                       config.calibration_probes,
                                       config.perturbation.at(1), cal);
            effective.learning_rate = Schedule::power(a, 0.0, kLearningRateExponent);
            if (config.perturbation.is_constant()) {
                effective.perturbation = Schedule::power(
                    config.perturbation.coefficient, 0.0, kPerturbationExponent);
            }
            result.calibrated_learning_rate = a;
            result.setup_evaluations += cal_evals;
        }
        if (effective.blocking && is_stochastic(effective.method)) {
            state.current = problem.loss(state.theta, state.loss_rng);
            result.setup_evaluations += state.current->circuits;
        }
        for (int it = 0; it < effective.iterations; ++it) {
            const auto start = Clock::now();
            const auto step = optimizer_step(effective, problem, state);
            const double ms =
                effective.record_wall_time
                    ? std::chrono::duration<double, std::milli>(Clock::now() - start).count()
                    : 0.0;
            result.records.push_back({state.k, state.theta, report_loss(state.theta),
                                      state.evaluations, step.accepted,
                                      step.rejections, ms});
        }
    } catch (const std::exception &e) {
        result.failed = true;
        result.error = e.what();
    }
    result.final_metric = state.metric;
    return result;
}

long evaluations_per_iteration(const OptimizerConfig &config, long dim,
                               long bases) {
    const long b = std::max(1L, bases);
    const long blocking = config.blocking ? b : 0;
    const long r = std::max(1, config.n_resamplings);
    switch (config.method) {
    case Method::GD:
        return b * dim;
    case Method::QNG:
        return b * dim + dim * (dim + 1) / 2;
    case Method::SPSA:
        return 2 * b + blocking;
    case Method::TwoSPSA:
        return 2 * b + 4 * b * r + blocking;
    case Method::QNSPSA:
        return 2 * b + 4 * r + blocking;
    }
    return 0;
}

} // namespace qnspsa
