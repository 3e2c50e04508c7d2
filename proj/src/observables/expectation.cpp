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
#include "qnspsa/observables/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qnspsa/simcore/simulator.hpp"

namespace qnspsa {

double expectation_exact(const StateVector &state, const PauliSum &obs) {
    const auto image = obs.apply(state);
    const Complex value = state.inner(image);
    if (std::abs(value.imag()) > 1e-10) {
        throw std::runtime_error("expectation_exact: imaginary residue " +
                                 std::to_string(value.imag()));
    }
    return value.real();
}

std::vector<MeasurementGroup> group_qubitwise(const PauliSum &obs) {
    std::vector<MeasurementGroup> groups;
    const auto &terms = obs.terms();
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto &ops = terms[t].string.ops();
        if (ops.empty()) {
            continue;
        }
        bool placed = false;
        for (auto &g : groups) {
            bool fits = true;
            for (const auto &[q, p] : ops) {
                const auto it = g.basis.find(q);
                if (it != g.basis.end() && it->second != p) {
                    fits = false;
                    break;
                }
            }
            if (fits) {
                g.basis.insert(ops.begin(), ops.end());
                g.terms.push_back(t);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({ops, {t}});
        }
    }
    return groups;
}

std::size_t measurement_bases(const PauliSum &obs) {
    return std::max<std::size_t>(1, group_qubitwise(obs).size());
}

SampledExpectation expectation_sampled(const Circuit &circuit,
                                       const Vector &theta,
                                       const PauliSum &obs, long shots,
                                       Rng &rng) {
    if (shots < 1) {
        throw std::invalid_argument("expectation_sampled: shots must be >= 1");
    }
    if (obs.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("expectation_sampled: observable has " +
                                    std::to_string(obs.n_qubits()) +
                                    " qubits, circuit has " +
                                    std::to_string(circuit.n_qubits()));
    }
    SampledExpectation out;
    for (const auto &t : obs.terms()) {
        if (t.string.is_identity()) {
            out.value += t.coefficient;
        }
    }
    const auto groups = group_qubitwise(obs);
    out.n_bases = groups.size();
    if (groups.empty()) {
        return out;
    }
    const auto prepared = run(circuit, theta);
    double variance = 0.0;
    for (const auto &g : groups) {
        StateVector state = prepared;
        for (const auto &[q, p] : g.basis) {
            if (p == Pauli::X) {
                apply_gate(state, Gate{GateKind::H, {q}, {}}, theta);
            } else if (p == Pauli::Y) {
                apply_gate(state,
                           Gate{GateKind::RX, {q}, Angle::fixed(kPi / 2)},
                           theta);
            }
        }
        std::vector<std::size_t> supports;
        std::vector<double> coeffs;
        for (auto t : g.terms) {
            std::size_t mask = 0;
            for (const auto &[q, p] : obs.terms()[t].string.ops()) {
                mask |= std::size_t{1} << q;
            }
            supports.push_back(mask);
            coeffs.push_back(obs.terms()[t].coefficient);
        }
        const auto counts = sample_counts(state, shots, rng);
        double sum = 0.0;
        double sum_sq = 0.0;
        for (const auto &[outcome, n] : counts) {
            double v = 0.0;
            for (std::size_t j = 0; j < supports.size(); ++j) {
                const bool odd = (__builtin_popcountll(outcome & supports[j]) & 1) != 0;
                v += odd ? -coeffs[j] : coeffs[j];
            }
            sum += v * static_cast<double>(n);
            sum_sq += v * v * static_cast<double>(n);
        }
        const auto n = static_cast<double>(shots);
        const double mean = sum / n;
        out.value += mean;
        if (shots > 1) {
            const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
            variance += var / n;
        }
    }
    out.std_error = std::sqrt(variance);
    return out;
}

} // namespace qnspsa
