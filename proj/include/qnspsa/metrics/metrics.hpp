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
 * @file metrics.hpp
 * Curvature objects: the Fubini-Study metric (exact and by finite
 * differences of the fidelity), simultaneous-perturbation point samples of
 * the metric and of a loss Hessian, exponential smoothing, and the
 * positive-definite regularization applied before every natural step.
 *
 * The quantum Fisher information is 4 g; everything here works with g.
 */
#pragma once

#include <functional>

#include "qnspsa/common.hpp"
#include "qnspsa/simcore/circuit.hpp"
#include "qnspsa/simcore/simulator.hpp"

namespace qnspsa {

/// g_ij = Re{<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>}.
Matrix metric_analytic(const Circuit &circuit, const Vector &theta);

/// -1/2 times the Hessian of F(theta, theta') in theta' at theta' = theta,
/// by second-order central differences of the exact fidelity.
Matrix metric_fd_hessian(const Circuit &circuit, const Vector &theta,
                         double fd_step);

/// Two independent Rademacher directions.
struct PerturbationPair {
    Vector first;
    Vector second;

    static PerturbationPair draw(Rng &rng, Eigen::Index dim);
};

using FidelityFn =
    std::function<double(const Vector &theta, const Vector &theta_prime)>;
using ScalarLossFn = std::function<double(const Vector &theta)>;

/// Metric point sample from four fidelity evaluations with the first
/// argument held at `theta`. Rank at most 2.
Matrix metric_point_sample(const FidelityFn &fidelity, const Vector &theta,
                           double epsilon, const PerturbationPair &pair);

/// Same, evaluating fidelities on `circuit` exactly or by compute-uncompute
/// sampling according to `mode`.
Matrix metric_point_sample(const Circuit &circuit, const Vector &theta,
                           double epsilon, const PerturbationPair &pair,
                           EvalMode mode, Rng &rng);

/// 2-SPSA Hessian point sample from four loss evaluations.
Matrix hessian_point_sample(const ScalarLossFn &loss, const Vector &theta,
                            double epsilon, const PerturbationPair &pair);

/// Exponentially smoothed curvature estimate. Starts as the identity with
/// iteration 0; the k-th smoothing step weights the new sample by 1/(k+1).
struct MetricEstimate {
    Matrix matrix;
    int iteration = 0;
    int resamplings_per_step = 1;

    static MetricEstimate identity(Eigen::Index dim, int resamplings = 1);
};

/// previous.iteration = k - 1; returns the estimate at iteration k.
MetricEstimate smooth(const MetricEstimate &previous, const Matrix &sample);

/// sqrt(g g) + beta I, divided by (1 + beta) when `normalized`.
Matrix regularize(const Matrix &g, double beta, bool normalized = true);

} // namespace qnspsa
