// Copyright 2026 The qlogic Authors
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

#pragma once

#include <cstdint>
#include <random>

#include "qlogic/algebra.hpp"
#include "qlogic/numerics.hpp"

namespace qlogic {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; mixes (seed, stream) into an independent sub-seed
/// so that trial i draws the same numbers however trials are scheduled.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Random self-adjoint element of alg (real Gaussian coefficients over the
/// self-adjoint spanning set).
inline Matrix random_self_adjoint(const AlgebraBasis& alg, Rng& rng) {
    std::normal_distribution<double> normal;
    Matrix h = zero(alg.ambient_dim());
    for (const auto& s : alg.self_adjoint_span()) h += normal(rng) * s;
    return 0.5 * (h + h.adjoint());
}

/// Random element of alg with complex Gaussian coefficients.
inline Matrix random_element(const AlgebraBasis& alg, Rng& rng) {
    std::normal_distribution<double> normal;
    Matrix w = zero(alg.ambient_dim());
    for (const auto& b : alg.basis()) {
        const double re = normal(rng);
        const double im = normal(rng);
        w += Complex(re, im) * b;
    }
    return w;
}

/// Haar-ish random unit vector in C^d.
inline Vector random_unit_vector(Eigen::Index d, Rng& rng) {
    std::normal_distribution<double> normal;
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v / v.norm();
}

}  // namespace qlogic
