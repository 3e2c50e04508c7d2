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
#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "qnspsa/observables/pauli.hpp"
#include "qnspsa/simcore/circuit.hpp"
#include "qnspsa/simcore/state_vector.hpp"

namespace qnspsa {

/// <psi|H|psi>. Throws if the imaginary residue exceeds 1e-10.
double expectation_exact(const StateVector &state, const PauliSum &obs);

/// One measurement setting: the single-qubit basis per measured qubit and
/// the indices of the terms it covers.
struct MeasurementGroup {
    std::map<std::size_t, Pauli> basis;
    std::vector<std::size_t> terms;
};

/// Greedy first-fit grouping of the non-identity terms into qubit-wise
/// commuting sets. Identity terms belong to no group.
std::vector<MeasurementGroup> group_qubitwise(const PauliSum &obs);

/// Number of measurement settings needed for `obs` (at least 1).
std::size_t measurement_bases(const PauliSum &obs);

struct SampledExpectation {
    double value = 0.0;
    /// Per-group sample std of the single-shot estimator over sqrt(shots),
    /// combined in quadrature.
    double std_error = 0.0;
    std::size_t n_bases = 0;
};

/// Shot-based estimate: one circuit execution per measurement group, each
/// with `shots` samples.
SampledExpectation expectation_sampled(const Circuit &circuit,
                                       const Vector &theta,
                                       const PauliSum &obs, long shots,
                                       Rng &rng);

} // namespace qnspsa
