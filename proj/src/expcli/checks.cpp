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
#include "qnspsa/expcli/checks.hpp"

#include <algorithm>
#include <cmath>

#include "qnspsa/expcli/builders.hpp"
#include "qnspsa/metrics/metrics.hpp"
#include "qnspsa/optim/optimizer.hpp"

namespace qnspsa {

QfimCheckResult qfim_check(int n_circuits, std::size_t max_qubits,
                           std::size_t max_params, double fd_step,
                           double tolerance, std::uint64_t seed) {
    QfimCheckResult out;
    out.tolerance = tolerance;
    Rng rng = make_stream(seed, 11);
    for (int i = 0; i < n_circuits; ++i) {
        const auto n = 2 + static_cast<std::size_t>(
                               uniform01(rng) * static_cast<double>(max_qubits - 1));
        const auto d = 1 + static_cast<std::size_t>(
                               uniform01(rng) * static_cast<double>(max_params));
        const auto circuit = random_circuit(n, d, rng);
        const auto theta = random_point(d, rng);
        const Matrix exact = metric_analytic(circuit, theta);
        const Matrix fd = metric_fd_hessian(circuit, theta, fd_step);
        const double dev = (exact - fd).cwiseAbs().maxCoeff();
        out.circuits.push_back({n, d, dev});
        out.max_abs_deviation = std::max(out.max_abs_deviation, dev);
    }
    out.passed = out.max_abs_deviation <= tolerance;
    return out;
}

namespace {

/// Every vector in {-1, +1}^dim.
std::vector<Vector> all_signs(Eigen::Index dim) {
    std::vector<Vector> out;
    for (unsigned mask = 0; mask < (1U << dim); ++mask) {
        Vector v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            v[i] = ((mask >> i) & 1U) != 0 ? -1.0 : 1.0;
        }
        out.push_back(v);
    }
    return out;
}

EstimatorCheck make_check(std::string name, double error, double tol) {
    return {std::move(name), error, tol, error <= tol};
}

} // namespace

std::vector<EstimatorCheck> estimator_checks() {
    constexpr double tol = 1e-12;
    std::vector<EstimatorCheck> out;

    {
        // f = t1^2 + t1 t2 has Hessian [[2, 1], [1, 0]].
        const ScalarLossFn f = [](const Vector &t) { return t[0] * t[0] + t[0] * t[1]; };
        Vector theta(2);
        theta << 0.3, -0.7;
        Matrix mean = Matrix::Zero(2, 2);
        const auto signs = all_signs(2);
        for (const auto &a : signs) {
            for (const auto &b : signs) {
                mean += hessian_point_sample(f, theta, 0.1, {a, b});
            }
        }
        mean /= static_cast<double>(signs.size() * signs.size());
        Matrix expected(2, 2);
        expected << 2.0, 1.0, 1.0, 0.0;
        out.push_back(make_check("2spsa_hessian_mean_16_pairs",
                                 (mean - expected).cwiseAbs().maxCoeff(), tol));
    }
    {
        Vector c(4);
        c << 0.5, -1.25, 2.0, 0.75;
        const ScalarLoss f = [&](const Vector &t) { return c.dot(t) + 3.0; };
        Vector theta(4);
        theta << 0.1, 0.2, -0.3, 0.4;
        Vector mean = Vector::Zero(4);
        const auto signs = all_signs(4);
        for (const auto &d : signs) {
            mean += spsa_gradient(f, theta, 0.05, d);
        }
        mean /= static_cast<double>(signs.size());
        out.push_back(make_check("spsa_gradient_mean_linear",
                                 (mean - c).cwiseAbs().maxCoeff(), tol));
    }
    {
        // F(a, b) = 1 - (b - a)^T G (b - a) has -1/2 Hessian G in b.
        Matrix g(3, 3);
        g << 0.5, 0.1, -0.2, 0.1, 0.3, 0.05, -0.2, 0.05, 0.4;
        const FidelityFn fid = [&](const Vector &a, const Vector &b) {
            const Vector d = b - a;
            return 1.0 - d.dot(g * d);
        };
        Vector theta(3);
        theta << 1.0, -0.5, 0.25;
        Matrix mean = Matrix::Zero(3, 3);
        const auto signs = all_signs(3);
        for (const auto &a : signs) {
            for (const auto &b : signs) {
                mean += metric_point_sample(fid, theta, 0.01, {a, b});
            }
        }
        mean /= static_cast<double>(signs.size() * signs.size());
        out.push_back(make_check("qnspsa_metric_mean_quadratic_fidelity",
                                 (mean - g).cwiseAbs().maxCoeff(), 1e-9));
    }
    return out;
}

} // namespace qnspsa
