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
 * @file optimizer.hpp
 * Vanilla gradient descent, quantum natural gradient, SPSA, 2-SPSA and
 * QN-SPSA behind one iteration engine.
 *
 * Every run owns a fixed set of random sub-streams derived from the
 * configured seed (see StreamTag), so two methods started from the same
 * seed draw identical gradient directions and identical loss shot noise.
 *
 * Evaluation accounting counts circuit executions. A loss evaluation costs
 * one circuit per measurement basis, a fidelity evaluation costs one
 * circuit. Analytic gradients and metrics are charged by formula
 * (Problem::gradient_circuits / Problem::metric_circuits) rather than by
 * the work the simulator actually does.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnspsa/common.hpp"
#include "qnspsa/metrics/metrics.hpp"
#include "qnspsa/observables/pauli.hpp"
#include "qnspsa/simcore/circuit.hpp"
#include "qnspsa/simcore/simulator.hpp"

namespace qnspsa {

enum class Method { GD, QNG, SPSA, TwoSPSA, QNSPSA };

std::string_view method_name(Method method) noexcept;
/// Accepts "GD", "QNG", "SPSA", "2SPSA", "QNSPSA" (case-insensitive).
Method parse_method(std::string_view name);
[[nodiscard]] bool is_stochastic(Method method) noexcept;

/// Constant value, or the power series a / (k + offset)^exponent for k >= 1.
struct Schedule {
    double coefficient = 0.01;
    double offset = 0.0;
    double exponent = 0.0;

    static Schedule constant(double value) { return {value, 0.0, 0.0}; }
    static Schedule power(double a, double offset, double exponent) {
        return {a, offset, exponent};
    }
    [[nodiscard]] double at(int k) const;
    [[nodiscard]] bool is_constant() const noexcept { return exponent == 0.0; }
};

/// Standard SPSA gain exponents used by calibrated runs.
inline constexpr double kLearningRateExponent = 0.602;
inline constexpr double kPerturbationExponent = 0.101;

struct BlockingTolerance {
    enum class Kind { Auto2Sigma, Fixed };
    Kind kind = Kind::Auto2Sigma;
    double value = 0.0;
};

struct OptimizerConfig {
    Method method = Method::SPSA;
    Schedule learning_rate = Schedule::constant(0.01);
    Schedule perturbation = Schedule::constant(0.01);
    double beta = 1e-3;
    bool normalized_regularization = true;
    int iterations = 100;
    bool blocking = false;
    BlockingTolerance blocking_tolerance;
    int max_rejections = 10;
    int n_resamplings = 1;
    /// When set, SPSA-family runs replace the learning rate by a calibrated
    /// power series whose first step has this per-component magnitude.
    std::optional<double> calibrate_target;
    int calibration_probes = 25;
    std::uint64_t seed = 0;
    bool record_wall_time = false;
};

/// One measured loss or fidelity value with its cost.
struct Measurement {
    double value = 0.0;
    double std_error = 0.0;
    long circuits = 1;
};

/// What an optimizer may ask of the thing it minimizes. Only `loss` is
/// mandatory; analytic methods need `gradient` (and `metric` for QNG),
/// QN-SPSA needs `fidelity`.
struct Problem {
    Vector initial;
    std::function<Measurement(const Vector &, Rng &)> loss;
    /// Noise-free value written to traces; falls back to `loss`.
    std::function<double(const Vector &)> reported_loss;
    std::function<Measurement(const Vector &, const Vector &, Rng &)> fidelity;
    std::function<Vector(const Vector &)> gradient;
    std::function<Matrix(const Vector &)> metric;
    long gradient_circuits = 0;
    long metric_circuits = 0;
};

/// Expectation of `obs` over `circuit`. `loss_mode` and `fidelity_mode`
/// select exact or sampled evaluation independently.
Problem make_circuit_problem(const Circuit &circuit, const PauliSum &obs,
                             Vector initial, EvalMode loss_mode,
                             EvalMode fidelity_mode);

struct IterationRecord {
    int k = 0;
    Vector theta;
    double loss = 0.0;
    long evaluations = 0;
    bool accepted = true;
    int rejections = 0;
    double wall_ms = 0.0;
};

struct RunResult {
    std::vector<IterationRecord> records;
    /// Evaluations outside the per-iteration budget: the blocking reference
    /// loss at the initial point and calibration probes.
    long setup_evaluations = 0;
    std::optional<double> calibrated_learning_rate;
    MetricEstimate final_metric;
    bool failed = false;
    std::string error;
};

// ---- single-step building blocks ----

using ScalarLoss = std::function<double(const Vector &)>;

/// ((loss(theta + eps D) - loss(theta - eps D)) / (2 eps)) D.
Vector spsa_gradient(const ScalarLoss &loss, const Vector &theta,
                     double epsilon, const Vector &direction);

Vector gd_step(const Vector &theta, const Vector &gradient, double eta);

/// theta - eta g^{-1} grad via a Cholesky solve. Throws std::runtime_error
/// when `metric` is not positive definite.
Vector natural_step(const Vector &theta, const Vector &gradient,
                    const Matrix &metric, double eta);

/// Minimum-norm least-squares variant for singular metrics.
Vector natural_step_lstsq(const Vector &theta, const Vector &gradient,
                          const Matrix &metric, double eta);

/// accept iff candidate < current + tolerance.
bool blocking_check(double current_loss, double candidate_loss,
                    double tolerance);

/// d<psi|H|psi>/d theta_i = 2 Re<d_i psi|H|psi>.
Vector analytic_gradient(const Circuit &circuit, const Vector &theta,
                         const PauliSum &obs);

/// Learning-rate coefficient a such that the first SPSA update has
/// per-component magnitude `target`: a = target / mean |(f+ - f-) / 2 eps|.
/// Throws std::runtime_error if the probed gradient magnitude vanishes.
double calibrate(const ScalarLoss &loss, const Vector &theta0,
                 double target_step_magnitude, int n_probes, double epsilon,
                 Rng &rng);

// ---- iteration engine ----

/// Sub-stream identifiers under OptimizerConfig::seed.
enum class StreamTag : std::uint64_t {
    GradientDirections = 1,
    CurvatureDirections = 2,
    LossShots = 3,
    FidelityShots = 4,
    Calibration = 5,
    Reporting = 6,
    InitialPoint = 7,
};

struct OptimizerState {
    Vector theta;
    int k = 0;
    long evaluations = 0;
    MetricEstimate metric;
    /// Blocking reference: the last accepted measured loss.
    std::optional<Measurement> current;
    Rng gradient_rng;
    Rng curvature_rng;
    Rng loss_rng;
    Rng fidelity_rng;

    OptimizerState(const OptimizerConfig &config, const Vector &initial);
};

struct StepReport {
    bool accepted = true;
    int rejections = 0;
    long evaluations = 0;
};

/// One iteration of the configured method, including blocking retries.
/// Advances state.k and state.evaluations.
StepReport optimizer_step(const OptimizerConfig &config, const Problem &problem,
                          OptimizerState &state);

/// Runs `config.iterations` steps. Record 0 holds the initial point with
/// zero evaluations. Errors during iteration end the run early with
/// `failed` set and the partial trace kept.
RunResult optimize(const OptimizerConfig &config, const Problem &problem);

/// Circuit executions charged per accepted iteration (no rejections), for
/// a problem whose loss costs `bases` circuits and has `dim` parameters.
long evaluations_per_iteration(const OptimizerConfig &config, long dim,
                               long bases);

} // namespace qnspsa
