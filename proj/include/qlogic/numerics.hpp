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
 * @file numerics.hpp
 * @brief Dense complex linear algebra shared by every other module.
 *
 * Matrices are plain `Eigen::MatrixXcd` values. All functions are pure, so
 * they may be called concurrently. The only place numerical thresholds live
 * is `Tolerance`; callers thread one instance through every operation.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qlogic/error.hpp"

namespace qlogic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Thresholds used across the library.
///
/// `eq_tol` is the absolute threshold for "these two matrices are equal",
/// `rank_tol` is relative to the largest singular value, `conv_tol` bounds
/// the step size at which an iteration is considered settled.
struct Tolerance {
    double eq_tol = 1e-9;
    double rank_tol = 1e-8;
    double conv_tol = 1e-10;
    int max_iter = 10'000;

    void validate() const {
        auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
        if (!in_unit(eq_tol) || !in_unit(rank_tol) || !in_unit(conv_tol))
            throw Error(ErrorKind::InvalidArgument, "tolerances must lie in (0, 1)");
        if (max_iter < 1)
            throw Error(ErrorKind::InvalidArgument, "max_iter must be at least 1");
    }
};

// ---------------------------------------------------------------------------
// Construction helpers

inline Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }
inline Matrix zero(Eigen::Index d) { return Matrix::Zero(d, d); }

inline Matrix diagonal(const std::vector<Complex>& entries) {
    const auto d = static_cast<Eigen::Index>(entries.size());
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
    return m;
}

inline Matrix diagonal(std::initializer_list<double> entries) {
    std::vector<Complex> c(entries.begin(), entries.end());
    return diagonal(c);
}

/// e_{ij}: the matrix with a single 1 at (i, j), zero-based.
inline Matrix matrix_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
    Matrix m = Matrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

inline Matrix outer(const Vector& v) { return v * v.adjoint(); }

/// Orthogonal projector onto the span of the (orthonormal) columns.
inline Matrix projector_onto(const Matrix& orthonormal_columns, Eigen::Index d) {
    if (orthonormal_columns.cols() == 0) return zero(d);
    return orthonormal_columns * orthonormal_columns.adjoint();
}

inline bool is_finite(const Matrix& m) { return m.allFinite(); }

inline void require_square(const Matrix& m, const char* what) {
    if (m.rows() < 1 || m.rows() != m.cols())
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + " must be a non-empty square matrix");
    if (!is_finite(m))
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
}

inline void require_same_dim(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch,
                    "dimension " + std::to_string(a.rows()) + " vs " + std::to_string(b.rows()));
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

/// Column-major flattening, so that vec(A X B) = (B^T kron A) vec(X).
inline Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Eigen::Index d) {
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

// ---------------------------------------------------------------------------
// Spectral operations

inline Matrix adjoint(const Matrix& m) { return m.adjoint(); }

inline double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    const Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

struct Eigensystem {
    RealVector values;  ///< descending
    Matrix vectors;     ///< orthonormal columns, matching `values`
};

inline Eigensystem hermitian_eig(const Matrix& m, const Tolerance& tol = {}) {
    require_square(m, "hermitian_eig input");
    const double skew = operator_norm(m - m.adjoint());
    if (skew > tol.eq_tol)
        throw Error(ErrorKind::NotHermitian,
                    "||m - m*|| = " + std::to_string(skew) + " exceeds eq_tol");
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    // Eigen returns ascending order.
    return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

inline RealVector singular_values(const Matrix& m) {
    if (m.size() == 0) return {};
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
}

/// Number of singular values above rank_tol * max(scale_floor, s_max).
/// With the default floor of 0 the cutoff is purely relative.
inline int rank_of(const Matrix& m, const Tolerance& tol = {}, double scale_floor = 0.0) {
    const RealVector s = singular_values(m);
    if (s.size() == 0) return 0;
    const double scale = std::max(scale_floor, s(0));
    if (scale == 0.0) return 0;
    return static_cast<int>((s.array() > tol.rank_tol * scale).count());
}

/// Throws NotProjector unless m is a self-adjoint idempotent with spectrum
/// in {0, 1}, all within eq_tol.
inline void check_projector(const Matrix& m, const Tolerance& tol = {}) {
    require_square(m, "projector");
    if (operator_norm(m - m.adjoint()) > tol.eq_tol)
        throw Error(ErrorKind::NotProjector, "matrix is not self-adjoint");
    if (operator_norm(m * m - m) > tol.eq_tol)
        throw Error(ErrorKind::NotProjector, "matrix is not idempotent");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    for (double v : solver.eigenvalues())
        if (std::min(std::abs(v), std::abs(v - 1.0)) > tol.eq_tol)
            throw Error(ErrorKind::NotProjector, "eigenvalue " + std::to_string(v) + " not in {0, 1}");
}

inline bool is_projector(const Matrix& m, const Tolerance& tol = {}) {
    try {
        check_projector(m, tol);
        return true;
    } catch (const Error&) {
        return false;
    }
}

/// Orthonormal basis of ker(m) as the columns of the result. Works for
/// rectangular `m`; the kernel lives in C^{m.cols()}.
///
/// Singular values at or below rank_tol * max(scale_floor, s_max) count as
/// zero. The default floor of 0 gives a purely relative cutoff; callers whose
/// operator has a known natural scale pass it so that an all-noise matrix is
/// not mistaken for a full-rank one.
inline Matrix null_space(const Matrix& m, const Tolerance& tol = {}, double scale_floor = 0.0) {
    const Eigen::Index n = m.cols();
    if (m.rows() == 0) return Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    const double scale = std::max(scale_floor, s.size() > 0 ? s(0) : 0.0);
    int rank = 0;
    if (scale > 0.0) rank = static_cast<int>((s.array() > tol.rank_tol * scale).count());
    return svd.matrixV().rightCols(n - rank);
}

/// Orthonormal basis of the range of m.
inline Matrix column_space(const Matrix& m, const Tolerance& tol = {}) {
    if (m.size() == 0) return Matrix(m.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const RealVector& s = svd.singularValues();
    int rank = 0;
    if (s.size() > 0 && s(0) > 0.0)
        rank = static_cast<int>((s.array() > tol.rank_tol * s(0)).count());
    return svd.matrixU().leftCols(rank);
}

/// Accumulates a tall linear system block by block and keeps only its R
/// factor, so the kernel of a stack of many blocks can be found without
/// materializing the stack. Singular values of R equal those of the stack.
class StackedSystem {
public:
    explicit StackedSystem(Eigen::Index cols) : r_(0, cols) {}

    void append(const Matrix& block) {
        if (block.cols() != r_.cols())
            throw Error(ErrorKind::DimensionMismatch, "stacked block has wrong column count");
        Matrix stacked(r_.rows() + block.rows(), r_.cols());
        stacked << r_, block;
        if (stacked.rows() <= stacked.cols()) {
            r_ = std::move(stacked);
            return;
        }
        Eigen::HouseholderQR<Matrix> qr(stacked);
        r_ = qr.matrixQR().topRows(r_.cols()).triangularView<Eigen::Upper>();
    }

    Matrix null_space(const Tolerance& tol, double scale_floor = 0.0) const {
        return qlogic::null_space(r_, tol, scale_floor);
    }

private:
    Matrix r_;
};

/// Half-open index ranges of a descending spectrum, split wherever two
/// neighbours differ by more than `gap`.
inline std::vector<std::pair<Eigen::Index, Eigen::Index>> cluster_spectrum(const RealVector& values,
                                                                           double gap) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= values.size(); ++i) {
        if (i == values.size() || values(i - 1) - values(i) > gap) {
            clusters.emplace_back(start, i);
            start = i;
        }
    }
    return clusters;
}

/// Largest gap between neighbours that is still smaller than `ceiling`, or 0.
/// Used to detect spectra whose clustering depends on the threshold choice.
inline double largest_gap_below(const RealVector& values, double ceiling) {
    double worst = 0.0;
    for (Eigen::Index i = 1; i < values.size(); ++i) {
        const double g = values(i - 1) - values(i);
        if (g < ceiling) worst = std::max(worst, g);
    }
    return worst;
}

}  // namespace qlogic
