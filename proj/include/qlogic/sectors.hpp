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

/**
 * @file sectors.hpp
 * @brief Superselection sectors: the block form  (+)_i M_{n_i} (x) 1_{m_i}.
 *
 * Every unital *-subalgebra of M_d is unitarily equivalent to a direct sum of
 * full matrix algebras, each repeated with some multiplicity. The summands
 * are cut out by the minimal projectors of the center. Only type I_n factors
 * occur at this scale.
 *
 * The Murray-von Neumann dimension is reported per sector: for a projector p
 * in the algebra, entry i is rank(z_i p) / m_i, i.e. the rank of p inside the
 * i-th matrix block. For a factor this is the usual integer-valued dimension
 * function; for several sectors the vector is the natural extension, and two
 * projectors are equivalent exactly when their vectors agree.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlogic/algebra.hpp"
#include "qlogic/error.hpp"
#include "qlogic/numerics.hpp"
#include "qlogic/random.hpp"

namespace qlogic {

struct Sector {
    Matrix central_projector;
    int block_size = 0;    ///< n_i
    int multiplicity = 0;  ///< m_i
    /// d x (n_i m_i); column j * m_i + k is the image of e_j (x) e_k.
    Matrix isometry;
};

struct SectorDecomposition {
    Eigen::Index ambient_dim = 0;
    std::vector<Sector> sectors;
};

namespace detail {

// Fixed seeds keep the randomized diagonalizations reproducible.
inline constexpr std::uint64_t kCenterSeed = 0x5EC7'0125'CE17'0001ull;
inline constexpr std::uint64_t kBlockSeed = 0x5EC7'0125'B10C'0002ull;
inline constexpr int kMaxAttempts = 5;
// Spectral gaps below this (relative) but above rank_tol make a clustering
// ambiguous; the caller retries with a fresh random combination.
inline constexpr double kAmbiguityCeiling = 1e-4;

inline Eigen::Index first_support_index(const Matrix& p) {
    for (Eigen::Index i = 0; i < p.rows(); ++i)
        if (std::abs(p(i, i)) > 1e-6) return i;
    return p.rows();
}

inline int rounded_trace(const Matrix& p) { return static_cast<int>(std::lround(p.trace().real())); }

/// Sum over the multiplicity index: (j*m + k, l*m + k) summed over k.
inline Matrix partial_trace_multiplicity(const Matrix& y, int n, int m) {
    Matrix x = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < m; ++k) x(j, l) += y(j * m + k, l * m + k);
    return x;
}

/// Largest deviation of y from (its reduced block) (x) 1_m.
inline double tensor_identity_residual(const Matrix& y, int n, int m) {
    const Matrix x = partial_trace_multiplicity(y, n, m) / static_cast<double>(m);
    return (y - kron(x, identity(m))).norm();
}

/// Matrix units for one block: an isometry W with W* a W = X (x) 1_m for all
/// a in the compressed algebra, or nullopt if this random draw was degenerate.
inline std::optional<Matrix> block_isometry(const AlgebraBasis& block, const Matrix& z, int n, int m,
                                            Rng& rng, const Tolerance& tol) {
    const Eigen::Index d = block.ambient_dim();
    const Matrix range = column_space(z, tol);
    const Matrix h = random_self_adjoint(block, rng);
    const Matrix hz = range.adjoint() * h * range;
    const Eigensystem eig = hermitian_eig(0.5 * (hz + hz.adjoint()), tol);
    const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    const double gap = tol.rank_tol * scale;
    if (largest_gap_below(eig.values, kAmbiguityCeiling * scale) > gap) return std::nullopt;
    const auto clusters = cluster_spectrum(eig.values, gap);
    if (static_cast<int>(clusters.size()) != n) return std::nullopt;
    std::vector<Matrix> eigenspaces;
    for (const auto& [b, e] : clusters) {
        if (e - b != m) return std::nullopt;
        eigenspaces.push_back(range * eig.vectors.middleCols(b, e - b));
    }

    const Matrix w = random_element(block, rng);
    const Matrix& first = eigenspaces.front();
    Matrix isometry(d, static_cast<Eigen::Index>(n) * m);
    for (int j = 0; j < n; ++j) {
        const Matrix& ej = eigenspaces[static_cast<std::size_t>(j)];
        const Matrix transfer = ej * ej.adjoint() * w * first * first.adjoint();
        const double c = operator_norm(transfer);
        if (c < 1e-6) return std::nullopt;
        isometry.middleCols(static_cast<Eigen::Index>(j) * m, m) = transfer * first / c;
    }
    return isometry;
}

}  // namespace detail

/// Pairwise orthogonal projectors summing to 1, each minimal in center(alg).
///
/// A random real combination of a self-adjoint spanning set of the center is
/// diagonalized; its eigenvalue clusters are the joint eigenspaces. The draw
/// is accepted only if the cluster count equals dim(center), which is exact
/// for a commutative finite-dimensional C*-algebra.
inline std::vector<Matrix> minimal_central_projectors(const AlgebraBasis& alg, const Tolerance& tol = {}) {
    const AlgebraBasis z = center(alg, tol);
    const auto herm = z.self_adjoint_span();
    const Eigen::Index d = alg.ambient_dim();
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);

    for (int attempt = 0; attempt < detail::kMaxAttempts; ++attempt) {
        Rng rng(derive_seed(detail::kCenterSeed, static_cast<std::uint64_t>(attempt)));
        Matrix h = zero(d);
        for (const auto& s : herm) h += coeff(rng) * s;
        const Eigensystem eig = hermitian_eig(0.5 * (h + h.adjoint()), tol);
        const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
        const double gap = tol.rank_tol * scale;
        if (largest_gap_below(eig.values, detail::kAmbiguityCeiling * scale) > gap) continue;
        const auto clusters = cluster_spectrum(eig.values, gap);
        if (clusters.size() != z.dim()) continue;

        std::vector<Matrix> projectors;
        bool ok = true;
        for (const auto& [b, e] : clusters) {
            Matrix p = projector_onto(eig.vectors.middleCols(b, e - b), d);
            if (!contains(z, p, tol)) {
                ok = false;
                break;
            }
            projectors.push_back(std::move(p));
        }
        if (!ok) continue;
        std::stable_sort(projectors.begin(), projectors.end(), [](const Matrix& a, const Matrix& b) {
            return detail::first_support_index(a) < detail::first_support_index(b);
        });
        return projectors;
    }
    throw Error(ErrorKind::CenterDiagonalizationFailed,
                "joint spectrum of the center could not be separated at rank_tol");
}

inline SectorDecomposition block_decomposition(const AlgebraBasis& alg, const Tolerance& tol = {}) {
    const Eigen::Index d = alg.ambient_dim();
    SectorDecomposition out;
    out.ambient_dim = d;
    std::uint64_t stream = 0;
    for (const Matrix& z : minimal_central_projectors(alg, tol)) {
        std::vector<Matrix> compressed;
        compressed.reserve(alg.dim());
        for (const auto& b : alg.basis()) compressed.push_back(z * b * z);
        const AlgebraBasis block = AlgebraBasis::span_of(compressed, d, tol);

        const int block_dim = static_cast<int>(block.dim());
        const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(block_dim))));
        const int rank = detail::rounded_trace(z);
        if (n < 1 || n * n != block_dim || rank % n != 0)
            throw Error(ErrorKind::CenterDiagonalizationFailed,
                        "compressed algebra of dimension " + std::to_string(block_dim) + " on rank " +
                            std::to_string(rank) + " is not a full matrix block");
        const int m = rank / n;

        std::optional<Matrix> isometry;
        for (int attempt = 0; attempt < detail::kMaxAttempts && !isometry; ++attempt) {
            Rng rng(derive_seed(detail::kBlockSeed, stream++));
            isometry = detail::block_isometry(block, z, n, m, rng, tol);
            if (!isometry) continue;
            double worst = 0.0;
            for (const auto& b : alg.basis())
                worst = std::max(worst, detail::tensor_identity_residual(isometry->adjoint() * b * *isometry, n, m));
            const Matrix gram = isometry->adjoint() * *isometry;
            if (worst > 1e-8 || (gram - identity(gram.rows())).norm() > 1e-8) isometry.reset();
        }
        if (!isometry)
            throw Error(ErrorKind::CenterDiagonalizationFailed, "could not build matrix units for a sector");
        out.sectors.push_back({z, n, m, std::move(*isometry)});
    }
    return out;
}

inline bool is_factor(const AlgebraBasis& alg, const Tolerance& tol = {}) {
    return center(alg, tol).dim() == 1;
}

/// Per-sector reduced rank of a projector in alg.
inline std::vector<int> mvn_dimension(const AlgebraBasis& alg, const SectorDecomposition& sectors,
                                      const Matrix& p, const Tolerance& tol = {}) {
    check_projector(p, tol);
    if (!contains(alg, p, tol)) throw Error(ErrorKind::NotInAlgebra, "projector is not in the algebra");
    std::vector<int> dims;
    dims.reserve(sectors.sectors.size());
    for (const auto& s : sectors.sectors) {
        const int r = rank_of(s.central_projector * p, tol, 1.0);
        if (r % s.multiplicity != 0)
            throw Error(ErrorKind::NotInAlgebra, "sector rank is not a multiple of the multiplicity");
        dims.push_back(r / s.multiplicity);
    }
    return dims;
}

inline std::vector<int> mvn_dimension(const AlgebraBasis& alg, const Matrix& p, const Tolerance& tol = {}) {
    return mvn_dimension(alg, block_decomposition(alg, tol), p, tol);
}

inline bool projectors_equivalent(const AlgebraBasis& alg, const SectorDecomposition& sectors, const Matrix& p,
                                  const Matrix& q, const Tolerance& tol = {}) {
    return mvn_dimension(alg, sectors, p, tol) == mvn_dimension(alg, sectors, q, tol);
}

inline bool projectors_equivalent(const AlgebraBasis& alg, const Matrix& p, const Matrix& q,
                                  const Tolerance& tol = {}) {
    return projectors_equivalent(alg, block_decomposition(alg, tol), p, q, tol);
}

/// Explicit partial isometry V in alg with V*V = p and VV* = q, taken as the
/// polar part of q w p for a random w in alg. Returns nullopt when no draw
/// produces one, which for inequivalent projectors is always. Used as an
/// independent check on `projectors_equivalent`.
inline std::optional<Matrix> equivalence_partial_isometry(const AlgebraBasis& alg, const Matrix& p,
                                                          const Matrix& q, const Tolerance& tol = {},
                                                          std::uint64_t seed = 0) {
    check_projector(p, tol);
    check_projector(q, tol);
    for (int attempt = 0; attempt < detail::kMaxAttempts; ++attempt) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        const Matrix t = q * random_element(alg, rng) * p;
        Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RealVector& s = svd.singularValues();
        const double cut = tol.rank_tol * std::max(1.0, s.size() ? s(0) : 0.0);
        const Eigen::Index r = (s.array() > cut).count();
        const Matrix v = svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint();
        if ((v.adjoint() * v - p).norm() <= 1e-8 && (v * v.adjoint() - q).norm() <= 1e-8 && contains(alg, v, tol))
            return v;
    }
    return std::nullopt;
}

}  // namespace qlogic
