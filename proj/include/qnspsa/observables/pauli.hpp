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
 * @file pauli.hpp
 * Weighted Pauli sums and their realizations as state maps and dense
 * matrices.
 */
#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qnspsa/common.hpp"
#include "qnspsa/simcore/state_vector.hpp"

namespace qnspsa {

enum class Pauli { X, Y, Z };

class PauliString {
  public:
    /// Identity on `n_qubits` qubits.
    explicit PauliString(std::size_t n_qubits);
    PauliString(std::size_t n_qubits, std::map<std::size_t, Pauli> ops);

    /// Parses a label over {I,X,Y,Z}; the leftmost character is the highest
    /// qubit index, so "ZI" acts with Z on qubit 1.
    static PauliString from_label(std::string_view label);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::map<std::size_t, Pauli> &ops() const noexcept {
        return ops_;
    }
    [[nodiscard]] bool is_identity() const noexcept { return ops_.empty(); }
    [[nodiscard]] bool is_diagonal() const noexcept;
    [[nodiscard]] std::string label() const;

    /// True when, qubit by qubit, the two strings agree or one is identity.
    [[nodiscard]] bool qubitwise_commutes(const PauliString &other) const;

    /// Applies the string to `in`, accumulating `coeff * P|in>` into `out`.
    void apply_add(const StateVector &in, double coeff,
                   std::vector<Complex> &out) const;

    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    std::size_t n_qubits_;
    std::map<std::size_t, Pauli> ops_;
};

struct PauliTerm {
    double coefficient;
    PauliString string;
};

class PauliSum {
  public:
    explicit PauliSum(std::size_t n_qubits);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept {
        return terms_;
    }

    PauliSum &add(double coefficient, PauliString string);
    PauliSum &add(double coefficient, std::string_view label);
    /// Convenience for products of Z on the listed qubits.
    PauliSum &add_z(double coefficient, std::vector<std::size_t> qubits);

    /// Same terms on a wider register (extra qubits act as identity).
    [[nodiscard]] PauliSum extended(std::size_t n_qubits) const;

    /// H|psi>, unnormalized.
    [[nodiscard]] StateVector apply(const StateVector &state) const;

  private:
    std::size_t n_qubits_;
    std::vector<PauliTerm> terms_;
};

/// Dense 2^n x 2^n matrix; n_qubits is limited to 12.
ComplexMatrix dense_matrix(const PauliSum &obs);

/// Reads the line format `<coefficient> <label>` with `#` comments.
PauliSum read_hamiltonian(std::istream &in);
PauliSum read_hamiltonian_file(const std::string &path);

} // namespace qnspsa
