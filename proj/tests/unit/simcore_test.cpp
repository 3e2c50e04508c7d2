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
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qnspsa/expcli/builders.hpp"
#include "qnspsa/simcore/simulator.hpp"

namespace qnspsa {
namespace {

double sup_distance(const oracle::CVec &a, const oracle::CVec &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

StateVector bell_pair() {
    Circuit c(2);
    c.h(0).cx(0, 1);
    return run(c, Vector());
}

TEST(Run, EmptyCircuitIsZeroState) {
    const auto s = run(Circuit(1), Vector());
    EXPECT_EQ(s[0], Complex(1.0, 0.0));
    EXPECT_EQ(s[1], Complex(0.0, 0.0));
}

TEST(Run, FullRotationFlipsQubit) {
    Circuit c(1);
    c.ry(0, Angle::parameter(0));
    const auto s = run(c, Vector::Constant(1, kPi));
    EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s[1] - Complex(1.0, 0.0)), 0.0, 1e-12);
}

TEST(Run, FixedRyLayerMatchesKroneckerProduct) {
    Circuit c(5);
    for (std::size_t q = 0; q < 5; ++q) {
        c.ry(q, Angle::fixed(kPi / 4));
    }
    oracle::CVec expected = oracle::CVec::Ones(1);
    oracle::CVec single(2);
    single << std::cos(kPi / 8), std::sin(kPi / 8);
    for (int q = 0; q < 5; ++q) {
        expected = oracle::kron(expected, single);
    }
    EXPECT_LT(sup_distance(oracle::to_eigen(run(c, Vector())), expected), 1e-12);
}

TEST(Run, MatchesDenseOracleOnRandomCircuits) {
    Rng rng = make_stream(101, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const std::size_t d = 1 + trial % 8;
        const auto c = random_circuit(n, d, rng);
        const auto theta = random_point(c.n_params(), rng);
        EXPECT_LT(sup_distance(oracle::to_eigen(run(c, theta)), oracle::run(c, theta)), 1e-12)
            << "trial " << trial;
    }
}

TEST(Run, EveryGateKindMatchesOracle) {
    Circuit c(3);
    c.h(0).x(1).rx(2, Angle::parameter(0)).ry(0, Angle::parameter(1))
        .rz(1, Angle::parameter(2)).rzz(0, 2, Angle::parameter(3)).cx(2, 1)
        .cz(0, 1).cry(1, 0, Angle::parameter(4)).global_phase(Angle::parameter(5));
    Vector theta(6);
    theta << 0.3, -1.1, 2.0, 0.7, -0.4, 1.3;
    EXPECT_LT(sup_distance(oracle::to_eigen(run(c, theta)), oracle::run(c, theta)), 1e-12);
}

TEST(Run, NormPreserved) {
    Rng rng = make_stream(102, 0);
    const auto c = random_circuit(4, 8, rng);
    const auto s = run(c, random_point(c.n_params(), rng));
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
    EXPECT_TRUE(s.normalized());
}

TEST(Run, RejectsParameterLengthMismatch) {
    Circuit c(1);
    c.ry(0, Angle::parameter(0));
    EXPECT_THROW(run(c, Vector::Zero(2)), std::invalid_argument);
}

TEST(Circuit, RejectsQubitOutOfRange) {
    Circuit c(2);
    EXPECT_THROW(c.h(2), std::out_of_range);
    EXPECT_THROW(c.cx(0, 0), std::invalid_argument);
}

TEST(Circuit, ValidateRejectsUnusedParameter) {
    Circuit c(1);
    c.ry(0, Angle::parameter(1));
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Unitarity, GateThenInverseIsIdentity) {
    Rng rng = make_stream(103, 0);
    using K = GateKind;
    const std::vector<Gate> gates = {
        {K::RX, {1}, Angle::parameter(0)},  {K::RY, {0}, Angle::parameter(0)},
        {K::RZ, {2}, Angle::parameter(0)},  {K::RZZ, {0, 2}, Angle::parameter(0)},
        {K::H, {1}, {}},                    {K::X, {0}, {}},
        {K::CX, {0, 2}, {}},                {K::CZ, {2, 1}, {}},
        {K::CRY, {1, 0}, Angle::parameter(0)}, {K::GlobalPhase, {}, Angle::parameter(0)},
    };
    const auto prep = random_circuit(3, 6, rng);
    const auto start = run(prep, random_point(prep.n_params(), rng));
    for (const auto &g : gates) {
        const Vector theta = random_point(1, rng);
        StateVector s = start;
        apply_gate(s, g, theta);
        apply_inverse_gate(s, g, theta);
        EXPECT_LT(sup_distance(oracle::to_eigen(s), oracle::to_eigen(start)), 1e-10)
            << gate_name(g.kind);
    }
}

TEST(Fidelity, SelfOverlapIsOne) {
    Rng rng = make_stream(104, 0);
    const auto c = random_circuit(3, 5, rng);
    const auto theta = random_point(c.n_params(), rng);
    EXPECT_NEAR(fidelity(c, theta, theta), 1.0, 1e-12);
}

TEST(Fidelity, SingleQubitClosedForms) {
    Circuit c(1);
    c.ry(0, Angle::parameter(0));
    const Vector zero = Vector::Zero(1);
    EXPECT_NEAR(fidelity(c, zero, Vector::Constant(1, kPi)), 0.0, 1e-12);
    EXPECT_NEAR(fidelity(c, zero, Vector::Constant(1, kPi / 2)), 0.5, 1e-12);
    const auto a = oracle::run(c, zero);
    const auto b = oracle::run(c, Vector::Constant(1, kPi / 2));
    EXPECT_NEAR(std::norm(a.dot(b)), 0.5, 1e-12);
}

TEST(Fidelity, Symmetric) {
    Rng rng = make_stream(105, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = random_circuit(3, 6, rng);
        const auto a = random_point(c.n_params(), rng);
        const auto b = random_point(c.n_params(), rng);
        EXPECT_NEAR(fidelity(c, a, b), fidelity(c, b, a), 1e-10);
    }
}

TEST(Fidelity, SampledComputeUncomputeConverges) {
    Rng rng = make_stream(106, 0);
    const auto c = random_circuit(3, 6, rng);
    const auto a = random_point(c.n_params(), rng);
    Vector b = a;
    b[0] += 0.4;
    const double exact = fidelity(c, a, b);
    const long shots = 100000;
    const double sigma = std::sqrt(exact * (1 - exact) / shots);
    Rng shots_rng = make_stream(106, 1);
    EXPECT_NEAR(fidelity_sampled(c, a, b, shots, shots_rng), exact, 5 * sigma + 1e-12);
}

TEST(DerivativeState, SingleRyAtZero) {
    Circuit c(1);
    c.ry(0, Angle::parameter(0));
    const auto d = derivative_state(c, Vector::Zero(1), 0);
    EXPECT_FALSE(d.normalized());
    EXPECT_NEAR(std::abs(d[0]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(d[1] - Complex(0.5, 0.0)), 0.0, 1e-12);
    EXPECT_NEAR(d.norm_squared(), 0.25, 1e-12);
    const auto fd = oracle::fd_state(c, Vector::Zero(1), 0, 1e-5);
    EXPECT_LT(sup_distance(oracle::to_eigen(d), fd), 1e-8);
}

TEST(DerivativeState, GlobalPhase) {
    Circuit c(1);
    c.global_phase(Angle::parameter(0));
    const double a = 0.9;
    const auto d = derivative_state(c, Vector::Constant(1, a), 0);
    const Complex expected = Complex(0, 1) * std::exp(Complex(0, a));
    EXPECT_NEAR(std::abs(d[0] - expected), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(d[1]), 0.0, 1e-12);
}

TEST(DerivativeState, SharedParameterSumsInsertions) {
    Circuit c(2);
    c.h(0).h(1).rz(0, Angle::parameter(0)).cx(0, 1).rz(1, Angle::parameter(0));
    const Vector theta = Vector::Constant(1, 0.37);
    const auto d = derivative_state(c, theta, 0);
    EXPECT_LT(sup_distance(oracle::to_eigen(d), oracle::fd_state(c, theta, 0, 1e-5)), 1e-8);
}

TEST(DerivativeState, MatchesFiniteDifferencesOnRandomCircuits) {
    Rng rng = make_stream(107, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const std::size_t p = 1 + (trial * 3) % 8;
        const auto c = random_circuit(n, p, rng);
        const auto theta = random_point(c.n_params(), rng);
        for (std::size_t i = 0; i < c.n_params(); ++i) {
            const auto d = derivative_state(c, theta, i);
            const auto fd = oracle::fd_state(c, theta, static_cast<Eigen::Index>(i), 1e-5);
            EXPECT_LT(sup_distance(oracle::to_eigen(d), fd), 1e-7)
                << "trial " << trial << " param " << i;
        }
    }
}

TEST(DerivativeState, RejectsBadIndex) {
    Circuit c(1);
    c.ry(0, Angle::parameter(0));
    EXPECT_THROW(derivative_state(c, Vector::Zero(1), 1), std::out_of_range);
}

TEST(SampleCounts, DeterministicOutcome) {
    Rng rng = make_stream(1, 0);
    const auto counts = sample_counts(StateVector(1), 100, rng);
    ASSERT_EQ(counts.size(), 1U);
    EXPECT_EQ(counts.at(0), 100);
}

TEST(SampleCounts, BellStateWithinFiveSigma) {
    Rng rng = make_stream(2, 0);
    const auto counts = sample_counts(bell_pair(), 8192, rng);
    long total = 0;
    for (const auto &[index, n] : counts) {
        EXPECT_TRUE(index == 0 || index == 3) << index;
        total += n;
    }
    EXPECT_EQ(total, 8192);
    const double sigma = std::sqrt(8192 * 0.25);
    EXPECT_NEAR(static_cast<double>(counts.at(0)), 4096.0, 5 * sigma);
    EXPECT_NEAR(static_cast<double>(counts.at(3)), 4096.0, 5 * sigma);
}

TEST(SampleCounts, UniformLargeShotLimit) {
    Circuit c(2);
    c.h(0).h(1);
    Rng rng = make_stream(3, 0);
    const long shots = 1000000;
    const auto counts = sample_counts(run(c, Vector()), shots, rng);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(static_cast<double>(counts.at(i)) / shots, 0.25, 0.005);
    }
}

TEST(SampleCounts, ReproducibleUnderSeed) {
    Rng rng = make_stream(108, 0);
    const auto c = random_circuit(3, 5, rng);
    const auto s = run(c, random_point(c.n_params(), rng));
    Rng a = make_stream(9, 3);
    Rng b = make_stream(9, 3);
    EXPECT_EQ(sample_counts(s, 5000, a), sample_counts(s, 5000, b));
}

TEST(SampleCounts, RejectsUnnormalizedState) {
    StateVector s(1, {Complex(1.0, 0.0), Complex(1.0, 0.0)}, false);
    Rng rng = make_stream(0, 0);
    EXPECT_THROW(sample_counts(s, 10, rng), std::invalid_argument);
}

TEST(ReducedProbabilities, BellMarginalIsMixed) {
    const std::vector<std::size_t> keep{0};
    const auto p = reduced_probabilities(bell_pair(), keep);
    ASSERT_EQ(p.size(), 2U);
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    EXPECT_NEAR(p[1], 0.5, 1e-12);
}

TEST(ReducedProbabilities, ProductStateBitOrder) {
    // |01> written highest qubit first: qubit 1 is 0, qubit 0 is 1.
    Circuit c(2);
    c.x(0);
    const std::vector<std::size_t> keep{1};
    const auto p = reduced_probabilities(run(c, Vector()), keep);
    EXPECT_NEAR(p[0], 1.0, 1e-12);
    EXPECT_NEAR(p[1], 0.0, 1e-12);
    const std::vector<std::size_t> keep0{0};
    const auto p0 = reduced_probabilities(run(c, Vector()), keep0);
    EXPECT_NEAR(p0[1], 1.0, 1e-12);
}

TEST(ReducedProbabilities, TwoBellPairsSystemIsUniform) {
    Circuit c(4);
    c.h(0).h(1).cx(0, 2).cx(1, 3);
    const std::vector<std::size_t> keep{0, 1};
    const auto p = reduced_probabilities(run(c, Vector()), keep);
    double total = 0;
    for (double x : p) {
        EXPECT_NEAR(x, 0.25, 1e-12);
        total += x;
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(ReducedProbabilities, RejectsInvalidKeep) {
    const auto s = bell_pair();
    EXPECT_THROW(reduced_probabilities(s, std::vector<std::size_t>{}), std::invalid_argument);
    EXPECT_THROW(reduced_probabilities(s, std::vector<std::size_t>{2}), std::out_of_range);
    EXPECT_THROW(reduced_probabilities(s, std::vector<std::size_t>{0, 0}),
                 std::invalid_argument);
}

} // namespace
} // namespace qnspsa
