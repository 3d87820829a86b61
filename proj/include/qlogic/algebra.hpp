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
 * @file algebra.hpp
 * @brief Unital *-subalgebras of M_d: closure, commutant, envelope, center.
 *
 * An algebra is stored as a Hilbert-Schmidt orthonormal basis, kept both as
 * a list of d x d matrices and as the d^2 x k "frame" of their vectorizations.
 *
 * In finite dimension every unital *-closed matrix algebra is already a von
 * Neumann algebra, so its monotone sequential (Baire) envelope coincides with
 * its bicommutant and with the algebra itself. `baire_envelope` computes the
 * bicommutant literally; comparing it against the closure is a consistency
 * check on the closure and commutant code rather than a new object. The
 * algebra is always taken in its defining representation on C^d.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qlogic/error.hpp"
#include "qlogic/numerics.hpp"

namespace qlogic {

struct GeneratorSet {
    Eigen::Index ambient_dim = 0;
    std::vector<Matrix> generators;

    void validate() const {
        if (ambient_dim < 1)
            throw Error(ErrorKind::InvalidArgument, "generator set needs dim >= 1");
        if (generators.empty())
            throw Error(ErrorKind::InvalidArgument, "generator set is empty");
        for (const auto& g : generators) {
            require_square(g, "generator");
            if (g.rows() != ambient_dim)
                throw Error(ErrorKind::DimensionMismatch,
                            "generator of size " + std::to_string(g.rows()) +
                                " in a set of dim " + std::to_string(ambient_dim));
        }
    }
};

namespace detail {

/// Grows a Hilbert-Schmidt orthonormal frame one candidate at a time
/// (Gram-Schmidt with one re-orthogonalization pass).
class SpanBuilder {
public:
    SpanBuilder(Eigen::Index d, double rank_tol) : d_(d), rank_tol_(rank_tol), frame_(d * d, 0) {}

    /// Returns true when `m` contributed a new direction.
    bool add(const Matrix& m) {
        Vector v = vec(m);
        const double n = v.norm();
        if (n == 0.0) return false;
        v /= n;
        for (int pass = 0; pass < 2; ++pass) {
            if (frame_.cols() > 0) v -= frame_ * (frame_.adjoint() * v);
        }
        const double residual = v.norm();
        if (residual <= rank_tol_) return false;
        frame_.conservativeResize(Eigen::NoChange, frame_.cols() + 1);
        frame_.col(frame_.cols() - 1) = v / residual;
        return true;
    }

    Matrix element(Eigen::Index k) const { return unvec(frame_.col(k), d_); }
    Eigen::Index size() const { return frame_.cols(); }
    Matrix take() && { return std::move(frame_); }

private:
    Eigen::Index d_;
    double rank_tol_;
    Matrix frame_;
};

}  // namespace detail

class AlgebraBasis {
public:
    /// Wraps a frame whose columns are already orthonormal in C^{d^2}.
    static AlgebraBasis from_frame(Matrix frame, Eigen::Index d) {
        if (frame.rows() != d * d)
            throw Error(ErrorKind::DimensionMismatch, "frame rows must equal d^2");
        AlgebraBasis a;
        a.d_ = d;
        a.frame_ = std::move(frame);
        a.basis_.reserve(static_cast<std::size_t>(a.frame_.cols()));
        for (Eigen::Index k = 0; k < a.frame_.cols(); ++k) a.basis_.push_back(unvec(a.frame_.col(k), d));
        const Vector unit = vec(identity(d)) / std::sqrt(static_cast<double>(d));
        const Vector residual = unit - a.frame_ * (a.frame_.adjoint() * unit);
        a.contains_unit_ = residual.norm() <= 1e-8;
        return a;
    }

    /// Orthonormalizes the span of arbitrary d x d matrices. The caller is
    /// responsible for the span actually being an algebra.
    static AlgebraBasis span_of(const std::vector<Matrix>& mats, Eigen::Index d, const Tolerance& tol) {
        detail::SpanBuilder span(d, tol.rank_tol);
        for (const auto& m : mats) {
            require_same_dim(m, identity(d));
            span.add(m);
        }
        return from_frame(std::move(span).take(), d);
    }

    Eigen::Index ambient_dim() const { return d_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Matrix>& basis() const { return basis_; }
    const Matrix& frame() const { return frame_; }
    bool contains_unit() const { return contains_unit_; }

    /// Hilbert-Schmidt orthogonal projection of m onto the span.
    Matrix project(const Matrix& m) const {
        if (frame_.cols() == 0) return zero(d_);
        return unvec(frame_ * (frame_.adjoint() * vec(m)), d_);
    }

    /// Real-linear spanning set of the self-adjoint part.
    std::vector<Matrix> self_adjoint_span() const {
        std::vector<Matrix> out;
        out.reserve(2 * basis_.size());
        for (const auto& b : basis_) {
            out.push_back(0.5 * (b + b.adjoint()));
            out.push_back((b - b.adjoint()) / Complex(0.0, 2.0));
        }
        return out;
    }

private:
    AlgebraBasis() = default;

    Eigen::Index d_ = 0;
    Matrix frame_;
    std::vector<Matrix> basis_;
    bool contains_unit_ = false;
};

inline bool contains(const AlgebraBasis& alg, const Matrix& m, const Tolerance& tol = {}) {
    if (m.rows() != alg.ambient_dim() || m.cols() != alg.ambient_dim())
        throw Error(ErrorKind::DimensionMismatch, "matrix and algebra dimensions differ");
    const double residual = (m - alg.project(m)).norm();
    return residual <= tol.eq_tol * (1.0 + operator_norm(m));
}

/// Largest Hilbert-Schmidt residual of any basis element of either algebra
/// projected onto the other. Zero means the spans coincide.
inline double subspace_residual(const AlgebraBasis& a, const AlgebraBasis& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw Error(ErrorKind::DimensionMismatch, "algebras live in different ambient spaces");
    auto one_way = [](const AlgebraBasis& from, const AlgebraBasis& onto) {
        double worst = 0.0;
        for (const auto& m : from.basis()) worst = std::max(worst, (m - onto.project(m)).norm());
        return worst;
    };
    return std::max(one_way(a, b), one_way(b, a));
}

inline bool subspace_equal(const AlgebraBasis& a, const AlgebraBasis& b, const Tolerance& tol = {}) {
    return subspace_residual(a, b) <= tol.eq_tol;
}

/// Smallest unital *-algebra containing the generators.
///
/// Breadth-first over words in the generators and their adjoints: every
/// round multiplies the directions discovered in the previous round by each
/// letter on the right. A round that contributes nothing new means the span
/// is closed. `word_cap` of 0 selects the default 2 d^2.
inline AlgebraBasis close(const GeneratorSet& gens, const Tolerance& tol = {}, int word_cap = 0) {
    tol.validate();
    gens.validate();
    const Eigen::Index d = gens.ambient_dim;
    if (word_cap <= 0) word_cap = static_cast<int>(2 * d * d);

    std::vector<Matrix> letters;
    for (const auto& g : gens.generators) {
        const double n = g.norm();
        if (n == 0.0) continue;
        letters.push_back(g / n);
        letters.push_back(g.adjoint() / n);
    }

    detail::SpanBuilder span(d, tol.rank_tol);
    span.add(identity(d));

    std::vector<Matrix> frontier;
    for (const auto& l : letters) {
        if (span.add(l)) frontier.push_back(span.element(span.size() - 1));
    }
    int word_length = 1;
    while (!frontier.empty()) {
        if (word_length >= word_cap)
            throw Error(ErrorKind::ClosureNotReached,
                        "new directions still appear at word length " + std::to_string(word_length));
        ++word_length;
        std::vector<Matrix> next;
        for (const auto& f : frontier) {
            for (const auto& l : letters) {
                if (span.add(f * l)) next.push_back(span.element(span.size() - 1));
            }
        }
        frontier = std::move(next);
    }
    return AlgebraBasis::from_frame(std::move(span).take(), d);
}

/// {x in M_d : xa = ax for all a in alg}, as the kernel of the stacked
/// commutator maps x -> xa - ax.
inline AlgebraBasis commutant(const AlgebraBasis& alg, const Tolerance& tol = {}) {
    tol.validate();
    const Eigen::Index d = alg.ambient_dim();
    const Matrix id = identity(d);
    StackedSystem system(d * d);
    for (const auto& a : alg.basis()) system.append(kron(a.transpose(), id) - kron(id, a));
    // Basis elements have unit Hilbert-Schmidt norm, so the commutator map
    // has natural scale 1.
    return AlgebraBasis::from_frame(system.null_space(tol, 1.0), d);
}

/// The bicommutant. See the file comment for why this equals the closure.
inline AlgebraBasis baire_envelope(const AlgebraBasis& alg, const Tolerance& tol = {}) {
    return commutant(commutant(alg, tol), tol);
}

/// alg intersected with its commutant, computed as an intersection of spans.
inline AlgebraBasis center(const AlgebraBasis& alg, const Tolerance& tol = {}) {
    const AlgebraBasis comm = commutant(alg, tol);
    const Matrix& a = alg.frame();
    const Matrix& c = comm.frame();
    // Coefficients x with a x lying in span(c): kernel of (1 - c c*) a.
    const Matrix outside = a - c * (c.adjoint() * a);
    const Matrix coeffs = null_space(outside, tol, 1.0);
    return AlgebraBasis::from_frame(a * coeffs, alg.ambient_dim());
}

inline bool is_commutative(const AlgebraBasis& alg, const Tolerance& tol = {}) {
    const auto& b = alg.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (operator_norm(b[i] * b[j] - b[j] * b[i]) > tol.eq_tol) return false;
    return true;
}

}  // namespace qlogic
