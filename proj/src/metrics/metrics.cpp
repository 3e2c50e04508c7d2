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
#include "qnspsa/metrics/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnspsa {

Matrix metric_analytic(const Circuit &circuit, const Vector &theta) {
    const auto psi = run(circuit, theta);
    const auto dpsi = derivative_states(circuit, theta);
    const auto d = static_cast<Eigen::Index>(dpsi.size());
    std::vector<Complex> overlap(dpsi.size());
    for (std::size_t i = 0; i < dpsi.size(); ++i) {
        overlap[i] = dpsi[i].inner(psi); // <d_i psi|psi>
    }
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i; j < d; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            const Complex value =
                dpsi[ui].inner(dpsi[uj]) - overlap[ui] * std::conj(overlap[uj]);
            g(i, j) = value.real();
            g(j, i) = value.real();
        }
    }
    return g;
}

Matrix metric_fd_hessian(const Circuit &circuit, const Vector &theta,
                         double fd_step) {
    if (!(fd_step > 0.0)) {
        throw std::invalid_argument("metric_fd_hessian: fd_step must be > 0");
    }
    const auto d = theta.size();
    const double h = fd_step;
    auto f = [&](const Vector &shifted) {
        return fidelity(circuit, theta, shifted);
    };
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        Vector p = theta;
        Vector m = theta;
        p[i] += h;
        m[i] -= h;
        const double second = (f(p) - 2.0 + f(m)) / (h * h);
        g(i, i) = -0.5 * second;
        for (Eigen::Index j = i + 1; j < d; ++j) {
            Vector pp = theta;
            Vector pm = theta;
            Vector mp = theta;
            Vector mm = theta;
            pp[i] += h;
            pp[j] += h;
            pm[i] += h;
            pm[j] -= h;
            mp[i] -= h;
            mp[j] += h;
            mm[i] -= h;
            mm[j] -= h;
            const double mixed = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
            g(i, j) = -0.5 * mixed;
            g(j, i) = g(i, j);
        }
    }
    return g;
}

PerturbationPair PerturbationPair::draw(Rng &rng, Eigen::Index dim) {
    PerturbationPair pair;
    pair.first = rademacher(rng, dim);
    pair.second = rademacher(rng, dim);
    return pair;
}

namespace {

void check_pair(const Vector &theta, double epsilon,
                const PerturbationPair &pair) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("point sample: epsilon must be > 0");
    }
    if (pair.first.size() != theta.size() || pair.second.size() != theta.size()) {
        throw std::invalid_argument("point sample: direction size mismatch");
    }
}

Matrix symmetric_outer(const PerturbationPair &pair) {
    return 0.5 * (pair.first * pair.second.transpose() +
                  pair.second * pair.first.transpose());
}

} // namespace

Matrix metric_point_sample(const FidelityFn &fidelity_fn, const Vector &theta,
                           double epsilon, const PerturbationPair &pair) {
    check_pair(theta, epsilon, pair);
    const Vector d1 = epsilon * pair.first;
    const Vector d2 = epsilon * pair.second;
    const double delta = fidelity_fn(theta, theta + d1 + d2) -
                         fidelity_fn(theta, theta + d1) -
                         fidelity_fn(theta, theta - d1 + d2) +
                         fidelity_fn(theta, theta - d1);
    return -0.5 * (delta / (2.0 * epsilon * epsilon)) * symmetric_outer(pair);
}

Matrix metric_point_sample(const Circuit &circuit, const Vector &theta,
                           double epsilon, const PerturbationPair &pair,
                           EvalMode mode, Rng &rng) {
    if (mode.exact()) {
        // The reference state is shared by all four overlaps.
        const auto psi = run(circuit, theta);
        return metric_point_sample(
            [&](const Vector &, const Vector &shifted) {
                return std::norm(psi.inner(run(circuit, shifted)));
            },
            theta, epsilon, pair);
    }
    return metric_point_sample(
        [&](const Vector &a, const Vector &b) {
            return fidelity_sampled(circuit, a, b, mode.shots, rng);
        },
        theta, epsilon, pair);
}

Matrix hessian_point_sample(const ScalarLossFn &loss, const Vector &theta,
                            double epsilon, const PerturbationPair &pair) {
    check_pair(theta, epsilon, pair);
    const Vector d1 = epsilon * pair.first;
    const Vector d2 = epsilon * pair.second;
    const double delta = loss(theta + d1 + d2) - loss(theta + d1) -
                         loss(theta - d1 + d2) + loss(theta - d1);
    return (delta / (2.0 * epsilon * epsilon)) * symmetric_outer(pair);
}

MetricEstimate MetricEstimate::identity(Eigen::Index dim, int resamplings) {
    return MetricEstimate{Matrix::Identity(dim, dim), 0, resamplings};
}

MetricEstimate smooth(const MetricEstimate &previous, const Matrix &sample) {
    if (sample.rows() != previous.matrix.rows() ||
        sample.cols() != previous.matrix.cols()) {
        throw std::invalid_argument("smooth: dimension mismatch");
    }
    const double k = previous.iteration + 1;
    MetricEstimate next = previous;
    next.iteration = previous.iteration + 1;
    next.matrix = (k / (k + 1.0)) * previous.matrix + (1.0 / (k + 1.0)) * sample;
    return next;
}

Matrix regularize(const Matrix &g, double beta, bool normalized) {
    if (g.rows() != g.cols()) {
        throw std::invalid_argument("regularize: matrix is not square");
    }
    if (!g.allFinite()) {
        throw std::runtime_error("regularize: non-finite matrix entries");
    }
    if (beta < 0.0) {
        throw std::invalid_argument("regularize: beta must be >= 0");
    }
    const Matrix sym = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("regularize: eigendecomposition failed");
    }
    Vector values = eig.eigenvalues().cwiseAbs().array() + beta;
    if (normalized) {
        values /= (1.0 + beta);
    }
    const Matrix &v = eig.eigenvectors();
    Matrix out = v * values.asDiagonal() * v.transpose();
    return 0.5 * (out + out.transpose());
}

} // namespace qnspsa
