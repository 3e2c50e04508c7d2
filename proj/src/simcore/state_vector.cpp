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
#include "qnspsa/simcore/state_vector.hpp"

#include <stdexcept>
#include <string>

namespace qnspsa {

namespace {
constexpr std::size_t kMaxQubits = 30;
}

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("StateVector: n_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes,
                         bool normalized)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)),
      normalized_(normalized) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("StateVector: n_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
    if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument(
            "StateVector: amplitude count " +
            std::to_string(amplitudes_.size()) + " does not equal 2^" +
            std::to_string(n_qubits));
    }
}

double StateVector::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto &a : amplitudes_) {
        sum += std::norm(a);
    }
    return sum;
}

Complex StateVector::inner(const StateVector &other) const {
    if (other.dimension() != dimension()) {
        throw std::invalid_argument("StateVector::inner: dimension mismatch");
    }
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        sum += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return sum;
}

StateVector &StateVector::operator+=(const StateVector &other) {
    if (other.dimension() != dimension()) {
        throw std::invalid_argument("StateVector::+=: dimension mismatch");
    }
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        amplitudes_[i] += other.amplitudes_[i];
    }
    normalized_ = false;
    return *this;
}

StateVector &StateVector::operator*=(Complex factor) {
    for (auto &a : amplitudes_) {
        a *= factor;
    }
    if (std::abs(std::abs(factor) - 1.0) > 1e-15) {
        normalized_ = false;
    }
    return *this;
}

} // namespace qnspsa
