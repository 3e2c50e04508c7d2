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
#include "qnspsa/expcli/builders.hpp"

#include <limits>
#include <stdexcept>

namespace qnspsa {

namespace {

void nearest_neighbour_cz(Circuit &c) {
    const auto n = c.n_qubits();
    for (std::size_t start = 0; start < 2; ++start) {
        for (std::size_t q = start; q + 1 < n; q += 2) {
            c.cz(q, q + 1);
        }
    }
}

void random_rotation_layer(Circuit &c, std::size_t &param, Rng &rng) {
    for (std::size_t q = 0; q < c.n_qubits(); ++q) {
        const auto axis = static_cast<int>(uniform01(rng) * 3.0);
        const auto angle = Angle::parameter(param++);
        switch (axis) {
        case 0:
            c.rx(q, angle);
            break;
        case 1:
            c.ry(q, angle);
            break;
        default:
            c.rz(q, angle);
            break;
        }
    }
}

} // namespace

Instance build_two_design(std::size_t n_qubits, std::size_t reps,
                          std::uint64_t seed) {
    if (n_qubits < 2 || reps < 1) {
        throw std::invalid_argument("two-design needs n_qubits >= 2 and reps >= 1");
    }
    Rng rng = make_stream(seed, 0);
    Circuit c(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        c.ry(q, Angle::fixed(kPi / 4.0));
    }
    std::size_t param = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        random_rotation_layer(c, param, rng);
        nearest_neighbour_cz(c);
    }
    random_rotation_layer(c, param, rng);

    PauliSum obs(n_qubits);
    const std::size_t mid = n_qubits / 2;
    obs.add_z(1.0, {mid - 1, mid});
    return {std::move(c), std::move(obs)};
}

Instance build_convergence_problem() {
    Circuit c(2);
    c.global_phase(Angle::parameter(0));
    c.rx(1, Angle::parameter(1));
    c.cry(1, 0, Angle::parameter(2));
    PauliSum h(2);
    h.add(1.5, "II");
    h.add(0.5, "IZ");
    h.add(-1.0, "ZZ");
    return {std::move(c), std::move(h)};
}

PauliSum maxcut_hamiltonian() {
    PauliSum h(5);
    h.add_z(1.0, {3, 4});
    h.add_z(2.5, {2, 4});
    h.add_z(2.5, {2, 3});
    h.add_z(-0.5, {1, 4});
    h.add_z(-0.5, {1, 2});
    h.add_z(-4.5, {0, 4});
    h.add_z(3.5, {0, 2});
    return h;
}

Circuit build_qaoa(const PauliSum &cost, std::size_t layers, double mixer_weight) {
    if (layers < 1) {
        throw std::invalid_argument("QAOA needs at least one layer");
    }
    const auto n = cost.n_qubits();
    Circuit c(n);
    for (std::size_t q = 0; q < n; ++q) {
        c.h(q);
    }
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t gamma = 2 * l;
        const std::size_t beta = 2 * l + 1;
        for (const auto &term : cost.terms()) {
            if (!term.string.is_diagonal()) {
                throw std::invalid_argument("QAOA cost term " + term.string.label() +
                                            " is not diagonal");
            }
            const auto &ops = term.string.ops();
            if (ops.empty()) {
                continue;
            }
            const double scale = 2.0 * term.coefficient;
            if (ops.size() == 1) {
                c.rz(ops.begin()->first, Angle::parameter(gamma, scale));
            } else if (ops.size() == 2) {
                c.rzz(ops.begin()->first, std::next(ops.begin())->first,
                      Angle::parameter(gamma, scale));
            } else {
                throw std::invalid_argument("QAOA cost term " + term.string.label() +
                                            " acts on more than two qubits");
            }
        }
        for (std::size_t q = 0; q < n; ++q) {
            c.rx(q, Angle::parameter(beta, 2.0 * mixer_weight));
        }
    }
    return c;
}

Instance build_maxcut(std::size_t layers) {
    auto h = maxcut_hamiltonian();
    auto c = build_qaoa(h, layers, 1.0 / 20.0);
    return {std::move(c), std::move(h)};
}

Circuit build_hardware_efficient(std::size_t n_qubits, std::size_t reps) {
    if (n_qubits < 1) {
        throw std::invalid_argument("hardware-efficient ansatz needs qubits");
    }
    Circuit c(n_qubits);
    std::size_t param = 0;
    for (std::size_t q = 0; q < n_qubits; ++q) {
        c.ry(q, Angle::parameter(param++));
    }
    for (std::size_t r = 0; r < reps; ++r) {
        for (std::size_t q = 0; q + 1 < n_qubits; ++q) {
            c.cz(q, q + 1);
        }
        for (std::size_t q = 0; q < n_qubits; ++q) {
            c.ry(q, Angle::parameter(param++));
        }
    }
    return c;
}

double diagonal_minimum(const PauliSum &obs) {
    const auto n = obs.n_qubits();
    if (n > 24) {
        throw std::invalid_argument("diagonal_minimum: more than 24 qubits");
    }
    std::vector<std::pair<double, std::uint64_t>> terms;
    for (const auto &term : obs.terms()) {
        if (!term.string.is_diagonal()) {
            throw std::invalid_argument("diagonal_minimum: term " +
                                        term.string.label() + " is not diagonal");
        }
        std::uint64_t mask = 0;
        for (const auto &[q, p] : term.string.ops()) {
            mask |= std::uint64_t{1} << q;
        }
        terms.emplace_back(term.coefficient, mask);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        double e = 0.0;
        for (const auto &[coeff, mask] : terms) {
            e += (__builtin_popcountll(x & mask) & 1) != 0 ? -coeff : coeff;
        }
        best = std::min(best, e);
    }
    return best;
}

Circuit random_circuit(std::size_t n_qubits, std::size_t n_params, Rng &rng) {
    if (n_qubits < 2) {
        throw std::invalid_argument("random_circuit: needs at least 2 qubits");
    }
    auto pick = [&](std::size_t n) {
        return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
    };
    auto pick_pair = [&]() {
        const auto a = pick(n_qubits);
        auto b = pick(n_qubits - 1);
        if (b >= a) {
            ++b;
        }
        return std::pair{a, b};
    };
    Circuit c(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        c.h(q);
    }
    auto add_rotation = [&](std::size_t param) {
        const auto a = Angle::parameter(param);
        switch (pick(5)) {
        case 0:
            c.rx(pick(n_qubits), a);
            break;
        case 1:
            c.ry(pick(n_qubits), a);
            break;
        case 2:
            c.rz(pick(n_qubits), a);
            break;
        case 3: {
            const auto [q0, q1] = pick_pair();
            c.rzz(q0, q1, a);
            break;
        }
        default: {
            const auto [q0, q1] = pick_pair();
            c.cry(q0, q1, a);
            break;
        }
        }
    };
    for (std::size_t p = 0; p < n_params; ++p) {
        add_rotation(p);
        if (uniform01(rng) < 0.5) {
            const auto [q0, q1] = pick_pair();
            if (uniform01(rng) < 0.5) {
                c.cx(q0, q1);
            } else {
                c.cz(q0, q1);
            }
        }
    }
    if (n_params >= 2) {
        add_rotation(0);
    }
    return c;
}

Vector random_point(std::size_t n, Rng &rng, double lo, double hi) {
    Vector out(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        out[i] = uniform(rng, lo, hi);
    }
    return out;
}

} // namespace qnspsa
