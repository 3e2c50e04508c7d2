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
 * @file common.hpp
 * Numeric aliases and the seeded random streams shared by every module.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace qnspsa {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// All randomness goes through this engine; distributions below are written
/// out by hand so traces do not depend on the standard library vendor.
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng &rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Vector with independent entries drawn uniformly from {-1, +1}.
inline Vector rademacher(Rng &rng, Eigen::Index dim) {
    Vector out(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        out[i] = (rng() >> 63) != 0U ? 1.0 : -1.0;
    }
    return out;
}

/// Independent sub-stream `tag` of a base seed.
inline Rng make_stream(std::uint64_t seed, std::uint64_t tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag),
                      static_cast<std::uint32_t>(tag >> 32)};
    return Rng(seq);
}

} // namespace qnspsa
