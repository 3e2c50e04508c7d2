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
 * @file checks.hpp
 * Self-checks behind `qnspsa-lab check`: analytic metric against the
 * finite-difference fidelity Hessian on random circuits, and estimator
 * means computed by enumerating every perturbation direction.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qnspsa {

struct QfimCircuitCheck {
    std::size_t n_qubits = 0;
    std::size_t n_params = 0;
    double max_abs_deviation = 0.0;
};

struct QfimCheckResult {
    std::vector<QfimCircuitCheck> circuits;
    double max_abs_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Random circuits with 2..max_qubits qubits and 1..max_params parameters
/// at random points; compares metric_analytic with metric_fd_hessian.
QfimCheckResult qfim_check(int n_circuits, std::size_t max_qubits,
                           std::size_t max_params, double fd_step,
                           double tolerance, std::uint64_t seed);

struct EstimatorCheck {
    std::string name;
    double max_abs_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Exhaustive-average checks of the SPSA gradient, the 2-SPSA Hessian
/// point sample and the fidelity metric point sample on polynomial
/// objectives where the averages are exact.
std::vector<EstimatorCheck> estimator_checks();

} // namespace qnspsa
