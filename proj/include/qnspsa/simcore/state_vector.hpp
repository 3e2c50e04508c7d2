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
 * @file state_vector.hpp
 * Dense amplitude storage over n qubits.
 *
 * Bit order: qubit 0 is the least significant bit of the basis index, so
 * basis index 0b10 on two qubits is |q1=1, q0=0>.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qnspsa/common.hpp"

namespace qnspsa {

class StateVector {
  public:
    /// |0...0> on `n_qubits` qubits.
    explicit StateVector(std::size_t n_qubits);

    /// Takes ownership of `amplitudes`; length must be a power of two.
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes,
                bool normalized = true);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return amplitudes_.size();
    }
    /// False for derivative states and other non-physical vectors.
    [[nodiscard]] bool normalized() const noexcept { return normalized_; }

    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept {
        return amplitudes_;
    }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return amplitudes_[i];
    }

    [[nodiscard]] double norm_squared() const noexcept;

    /// <this|other>
    [[nodiscard]] Complex inner(const StateVector &other) const;

    StateVector &operator+=(const StateVector &other);
    StateVector &operator*=(Complex factor);

    void mark_unnormalized() noexcept { normalized_ = false; }

  private:
    std::size_t n_qubits_;
    std::vector<Complex> amplitudes_;
    bool normalized_ = true;
};

} // namespace qnspsa
