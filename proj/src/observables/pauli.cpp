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
#include "qnspsa/observables/pauli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qnspsa {

PauliString::PauliString(std::size_t n_qubits) : n_qubits_(n_qubits) {}

PauliString::PauliString(std::size_t n_qubits, std::map<std::size_t, Pauli> ops)
    : n_qubits_(n_qubits), ops_(std::move(ops)) {
    for (const auto &[q, p] : ops_) {
        if (q >= n_qubits_) {
            throw std::out_of_range("PauliString: qubit " + std::to_string(q) +
                                    " >= n_qubits " + std::to_string(n_qubits_));
        }
    }
}

PauliString PauliString::from_label(std::string_view label) {
    if (label.empty()) {
        throw std::invalid_argument("PauliString: empty label");
    }
    const std::size_t n = label.size();
    std::map<std::size_t, Pauli> ops;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t q = n - 1 - pos;
        switch (label[pos]) {
        case 'I':
            break;
        case 'X':
            ops[q] = Pauli::X;
            break;
        case 'Y':
            ops[q] = Pauli::Y;
            break;
        case 'Z':
            ops[q] = Pauli::Z;
            break;
        default:
            throw std::invalid_argument("PauliString: invalid character '" +
                                        std::string(1, label[pos]) +
                                        "' in label " + std::string(label));
        }
    }
    return PauliString(n, std::move(ops));
}

bool PauliString::is_diagonal() const noexcept {
    for (const auto &[q, p] : ops_) {
        if (p != Pauli::Z) {
            return false;
        }
    }
    return true;
}

std::string PauliString::label() const {
    std::string out(n_qubits_, 'I');
    for (const auto &[q, p] : ops_) {
        out[n_qubits_ - 1 - q] = p == Pauli::X ? 'X' : p == Pauli::Y ? 'Y' : 'Z';
    }
    return out;
}

bool PauliString::qubitwise_commutes(const PauliString &other) const {
    for (const auto &[q, p] : ops_) {
        const auto it = other.ops_.find(q);
        if (it != other.ops_.end() && it->second != p) {
            return false;
        }
    }
    return true;
}

void PauliString::apply_add(const StateVector &in, double coeff,
                            std::vector<Complex> &out) const {
    std::size_t flip = 0;
    std::size_t ymask = 0;
    std::size_t zmask = 0;
    for (const auto &[q, p] : ops_) {
        const std::size_t bit = std::size_t{1} << q;
        if (p != Pauli::Z) {
            flip |= bit;
        }
        if (p == Pauli::Y) {
            ymask |= bit;
        }
        if (p == Pauli::Z) {
            zmask |= bit;
        }
    }
    const auto ny = static_cast<int>(__builtin_popcountll(ymask));
    // i^ny from the Y factors before the per-bit signs.
    static constexpr Complex kIPow[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex base = kIPow[ny % 4] * coeff;
    const auto amps = in.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        // Y|1> = -i|0>, Z|1> = -|1>: a minus sign per set bit under Y or Z.
        const auto sign_bits = __builtin_popcountll(i & (ymask | zmask));
        const Complex v = (sign_bits & 1) != 0 ? -base * amps[i] : base * amps[i];
        out[i ^ flip] += v;
    }
}

PauliSum::PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0) {
        throw std::invalid_argument("PauliSum: n_qubits must be >= 1");
    }
}

PauliSum &PauliSum::add(double coefficient, PauliString string) {
    if (!std::isfinite(coefficient)) {
        throw std::invalid_argument("PauliSum: coefficient is not finite");
    }
    if (string.n_qubits() != n_qubits_) {
        throw std::invalid_argument(
            "PauliSum: term on " + std::to_string(string.n_qubits()) +
            " qubits added to a sum on " + std::to_string(n_qubits_));
    }
    terms_.push_back({coefficient, std::move(string)});
    return *this;
}

PauliSum &PauliSum::add(double coefficient, std::string_view label) {
    return add(coefficient, PauliString::from_label(label));
}

PauliSum &PauliSum::add_z(double coefficient, std::vector<std::size_t> qubits) {
    std::map<std::size_t, Pauli> ops;
    for (auto q : qubits) {
        ops[q] = Pauli::Z;
    }
    return add(coefficient, PauliString(n_qubits_, std::move(ops)));
}

PauliSum PauliSum::extended(std::size_t n_qubits) const {
    if (n_qubits < n_qubits_) {
        throw std::invalid_argument("PauliSum::extended: cannot shrink");
    }
    PauliSum out(n_qubits);
    for (const auto &t : terms_) {
        out.add(t.coefficient, PauliString(n_qubits, t.string.ops()));
    }
    return out;
}

StateVector PauliSum::apply(const StateVector &state) const {
    if (state.n_qubits() != n_qubits_) {
        throw std::invalid_argument(
            "PauliSum::apply: state has " + std::to_string(state.n_qubits()) +
            " qubits, observable has " + std::to_string(n_qubits_));
    }
    std::vector<Complex> out(state.dimension(), Complex{0.0, 0.0});
    for (const auto &t : terms_) {
        t.string.apply_add(state, t.coefficient, out);
    }
    return StateVector(n_qubits_, std::move(out), false);
}

ComplexMatrix dense_matrix(const PauliSum &obs) {
    constexpr std::size_t kMaxDenseQubits = 12;
    if (obs.n_qubits() > kMaxDenseQubits) {
        throw std::invalid_argument("dense_matrix: " +
                                    std::to_string(obs.n_qubits()) +
                                    " qubits exceeds the limit of 12");
    }
    const std::size_t dim = std::size_t{1} << obs.n_qubits();
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                          static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<Complex> basis(dim, Complex{0.0, 0.0});
        basis[col] = 1.0;
        const auto image = obs.apply(StateVector(obs.n_qubits(), std::move(basis)));
        for (std::size_t row = 0; row < dim; ++row) {
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                image[row];
        }
    }
    return m;
}

PauliSum read_hamiltonian(std::istream &in) {
    std::vector<std::pair<double, std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string coeff_text;
        std::string label;
        if (!(ls >> coeff_text)) {
            continue;
        }
        std::string extra;
        if (!(ls >> label) || (ls >> extra)) {
            throw std::invalid_argument("Hamiltonian line " +
                                        std::to_string(lineno) +
                                        ": expected '<coefficient> <label>'");
        }
        double coeff = 0.0;
        try {
            std::size_t used = 0;
            coeff = std::stod(coeff_text, &used);
            if (used != coeff_text.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("Hamiltonian line " +
                                        std::to_string(lineno) +
                                        ": bad coefficient '" + coeff_text + "'");
        }
        rows.emplace_back(coeff, label);
    }
    if (rows.empty()) {
        throw std::invalid_argument("Hamiltonian: no terms");
    }
    PauliSum out(rows.front().second.size());
    for (const auto &[c, label] : rows) {
        if (label.size() != out.n_qubits()) {
            throw std::invalid_argument("Hamiltonian: label " + label +
                                        " length differs from first term");
        }
        out.add(c, label);
    }
    return out;
}

PauliSum read_hamiltonian_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open Hamiltonian file " + path);
    }
    return read_hamiltonian(in);
}

} // namespace qnspsa
