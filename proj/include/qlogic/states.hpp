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
 * @file states.hpp
 * @brief States as density matrices, and their restriction to propositions.
 *
 * A state is always carried by a density matrix on the ambient C^d; the
 * functional it induces on a subalgebra is a -> tr(rho a). Extending a state
 * from an algebra to its envelope is therefore the identity on densities,
 * and two densities that agree on the algebra are only identified through
 * evaluation.
 *
 * Purity is relative to the algebra: a density that is mixed on C^d may
 * still be a pure state of a smaller algebra.
 */

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qlogic/algebra.hpp"
#include "qlogic/error.hpp"
#include "qlogic/logic.hpp"
#include "qlogic/numerics.hpp"
#include "qlogic/sectors.hpp"

namespace qlogic {

inline constexpr double kAdditivityTol = 1e-7;
inline constexpr double kComplementTol = 1e-9;
inline constexpr double kMultiplicativityTol = 1e-8;

class StateFunctional {
public:
    const Matrix& density() const { return rho_; }
    Eigen::Index dim() const { return rho_.rows(); }

private:
    explicit StateFunctional(Matrix rho) : rho_(std::move(rho)) {}
    friend StateFunctional make_state(const Matrix& rho, const Tolerance& tol);

    Matrix rho_;
};

inline StateFunctional make_state(const Matrix& rho, const Tolerance& tol = {}) {
    require_square(rho, "density");
    if (operator_norm(rho - rho.adjoint()) > tol.eq_tol)
        throw Error(ErrorKind::NotHermitian, "density is not self-adjoint");
    const Matrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
    const double lowest = eig.eigenvalues().minCoeff();
    if (lowest < -tol.rank_tol)
        throw Error(ErrorKind::NotPositive, "density has eigenvalue " + std::to_string(lowest));
    const double trace = h.trace().real();
    if (std::abs(trace - 1.0) > tol.eq_tol)
        throw Error(ErrorKind::NotNormalized, "density has trace " + std::to_string(trace));
    return StateFunctional(h);
}

/// Vector state |v><v| / <v, v>.
inline StateFunctional vector_state(const Vector& v, const Tolerance& tol = {}) {
    return make_state(outer(v / v.norm()), tol);
}

inline Complex evaluate(const StateFunctional& state, const Matrix& a) {
    if (a.rows() != state.dim() || a.cols() != state.dim())
        throw Error(ErrorKind::DimensionMismatch, "observable and state dimensions differ");
    return (state.density() * a).trace();
}

/// A state seen only through its values on the projectors of an algebra.
class LogicalState {
public:
    LogicalState(StateFunctional underlying, AlgebraBasis domain, Tolerance tol)
        : underlying_(std::move(underlying)), domain_(std::move(domain)), tol_(tol) {}

    const StateFunctional& underlying() const { return underlying_; }
    const AlgebraBasis& domain() const { return domain_; }

    /// Probability that proposition p is true. Out-of-range values are an
    /// error, never clamped.
    double operator()(const Projector& p) const {
        if (!contains(domain_, p.matrix(), tol_))
            throw Error(ErrorKind::NotInAlgebra, "proposition is not a projector of the domain");
        const double v = evaluate(underlying_, p.matrix()).real();
        if (v < -tol_.eq_tol || v > 1.0 + tol_.eq_tol)
            throw Error(ErrorKind::PreconditionFailed, "logical value " + std::to_string(v) + " outside [0, 1]");
        return v;
    }

private:
    StateFunctional underlying_;
    AlgebraBasis domain_;
    Tolerance tol_;
};

/// p -> tr(rho p) on the projectors of the envelope of alg.
inline LogicalState restrict_logical(const StateFunctional& state, const AlgebraBasis& alg,
                                     const Tolerance& tol = {}) {
    if (state.dim() != alg.ambient_dim())
        throw Error(ErrorKind::DimensionMismatch, "state and algebra dimensions differ");
    return LogicalState(state, baire_envelope(alg, tol), tol);
}

/// phi(join of family) = sum of phi(member), and phi(p') = 1 - phi(p) for
/// every member. An orthogonal family in C^d has at most d nonzero members,
/// so finite families already cover the countable case.
inline bool check_sigma_orthoadditive(const LogicalState& ls, const std::vector<Projector>& family,
                                      const Tolerance& tol = {}) {
    const Eigen::Index d = ls.domain().ambient_dim();
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (family[i].dim() != d) throw Error(ErrorKind::DimensionMismatch, "family member has wrong size");
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (!orthogonal(family[i], family[j], tol))
                throw Error(ErrorKind::NotOrthogonalFamily,
                            "members " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
    }
    Projector total = Projector::zero(d);
    double sum = 0.0;
    for (const auto& p : family) {
        total = join(total, p, tol);
        const double v = ls(p);
        sum += v;
        if (std::abs(ls(orthocomplement(p)) - (1.0 - v)) > kComplementTol) return false;
    }
    return std::abs(ls(total) - sum) <= kAdditivityTol;
}

/// Reduced density of `state` in each sector: W* rho W traced over the
/// multiplicity factor.
inline std::vector<Matrix> sector_reduced_densities(const StateFunctional& state, const SectorDecomposition& sectors) {
    std::vector<Matrix> out;
    out.reserve(sectors.sectors.size());
    for (const auto& s : sectors.sectors) {
        const Matrix compressed = s.isometry.adjoint() * state.density() * s.isometry;
        out.push_back(detail::partial_trace_multiplicity(compressed, s.block_size, s.multiplicity));
    }
    return out;
}

inline bool is_pure(const StateFunctional& state, const SectorDecomposition& sectors, const Tolerance& tol = {}) {
    int carrying = 0;
    bool rank_one = false;
    for (const Matrix& reduced : sector_reduced_densities(state, sectors)) {
        const double weight = reduced.trace().real();
        if (weight <= tol.rank_tol) continue;
        ++carrying;
        rank_one = rank_of(reduced, tol) == 1;
    }
    return carrying == 1 && rank_one;
}

inline bool is_pure(const StateFunctional& state, const AlgebraBasis& alg, const Tolerance& tol = {}) {
    return is_pure(state, block_decomposition(alg, tol), tol);
}

/// The characters of a commutative algebra, one per joint eigenspace, each
/// realized as the normalized projector onto that eigenspace.
inline std::vector<StateFunctional> dirac_characters(const AlgebraBasis& alg, const Tolerance& tol = {}) {
    if (!is_commutative(alg, tol)) throw Error(ErrorKind::NotCommutative, "characters need a commutative algebra");
    std::vector<StateFunctional> out;
    for (const Matrix& z : minimal_central_projectors(alg, tol)) out.push_back(make_state(z / z.trace(), tol));
    return out;
}

/// True iff no nonzero positive element of alg is annihilated by every state
/// in the family. With R the sum of the densities, a*a is annihilated iff
/// tr(R a*a) = ||a R^{1/2}||^2 = 0 iff aR = 0, a linear condition on a.
inline bool is_separating(const std::vector<StateFunctional>& family, const AlgebraBasis& alg,
                          const Tolerance& tol = {}) {
    const Eigen::Index d = alg.ambient_dim();
    Matrix total = zero(d);
    for (const auto& s : family) {
        if (s.dim() != d) throw Error(ErrorKind::DimensionMismatch, "state and algebra dimensions differ");
        total += s.density();
    }
    Matrix images(d * d, static_cast<Eigen::Index>(alg.dim()));
    for (std::size_t j = 0; j < alg.dim(); ++j) images.col(static_cast<Eigen::Index>(j)) = vec(alg.basis()[j] * total);
    return null_space(images, tol, 1.0).cols() == 0;
}

}  // namespace qlogic
