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
#include "qnspsa/simcore/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qnspsa {

std::string_view gate_name(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::RZZ:
        return "RZZ";
    case GateKind::H:
        return "H";
    case GateKind::X:
        return "X";
    case GateKind::CX:
        return "CX";
    case GateKind::CZ:
        return "CZ";
    case GateKind::CRY:
        return "CRY";
    case GateKind::GlobalPhase:
        return "GlobalPhase";
    }
    return "?";
}

std::size_t gate_arity(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
    case GateKind::X:
        return 1;
    case GateKind::RZZ:
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::CRY:
        return 2;
    case GateKind::GlobalPhase:
        return 0;
    }
    return 0;
}

bool gate_is_rotation(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::RZZ:
    case GateKind::CRY:
    case GateKind::GlobalPhase:
        return true;
    default:
        return false;
    }
}

Circuit::Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0) {
        throw std::invalid_argument("Circuit: n_qubits must be >= 1");
    }
}

Circuit &Circuit::add(Gate gate) {
    const auto name = std::string(gate_name(gate.kind));
    if (gate.qubits.size() != gate_arity(gate.kind)) {
        throw std::invalid_argument("Circuit: gate " + name + " expects " +
                                    std::to_string(gate_arity(gate.kind)) +
                                    " qubit operands");
    }
    for (auto q : gate.qubits) {
        if (q >= n_qubits_) {
            throw std::out_of_range("Circuit: gate " + name + " qubit " +
                                    std::to_string(q) + " >= n_qubits " +
                                    std::to_string(n_qubits_));
        }
    }
    if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1]) {
        throw std::invalid_argument("Circuit: gate " + name +
                                    " needs distinct qubits");
    }
    if (!gate_is_rotation(gate.kind) && gate.angle.param) {
        throw std::invalid_argument("Circuit: gate " + name +
                                    " takes no angle");
    }
    if (gate.angle.param) {
        n_params_ = std::max(n_params_, *gate.angle.param + 1);
    }
    gates_.push_back(std::move(gate));
    return *this;
}

void Circuit::validate() const {
    std::vector<bool> used(n_params_, false);
    for (const auto &g : gates_) {
        if (g.angle.param) {
            used[*g.angle.param] = true;
        }
    }
    for (std::size_t i = 0; i < n_params_; ++i) {
        if (!used[i]) {
            throw std::invalid_argument("Circuit: parameter " +
                                        std::to_string(i) +
                                        " is not used by any gate");
        }
    }
}

std::vector<std::size_t> Circuit::gates_using(std::size_t index) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < gates_.size(); ++j) {
        if (gates_[j].angle.param && *gates_[j].angle.param == index) {
            out.push_back(j);
        }
    }
    return out;
}

} // namespace qnspsa
