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
 * @file logic.hpp
 * @brief The lattice of projectors of an algebra.
 *
 * Propositions are orthogonal projectors. Negation is p -> 1 - p, the meet
 * is the projector onto the intersection of ranges, obtained as the limit of
 * (p q p)^n, and the join follows by De Morgan. Every meet is computed twice:
 * by the limit (the defining formula) and by a null-space solve (the
 * reference result). The two must agree.
 *
 * A finite lattice of projectors is always complete, so sigma-completeness
 * needs no separate treatment here.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlogic/algebra.hpp"
#include "qlogic/error.hpp"
#include "qlogic/numerics.hpp"
#include "qlogic/parallel.hpp"
#include "qlogic/random.hpp"
#include "qlogic/sectors.hpp"

namespace qlogic {

/// Residual thresholds for the lattice identities.
inline constexpr double kLawTol = 1e-7;
inline constexpr double kMeetAgreementTol = 1e-8;
inline constexpr double kUnsymmetrizedMeetTol = 1e-6;
inline constexpr double kRoundingGap = 0.1;

class Projector {
public:
    /// Validates m (self-adjoint, idempotent, spectrum in {0, 1}).
    explicit Projector(const Matrix& m, const Tolerance& tol = {})
        : m_(0.5 * (m + m.adjoint())), c_(qlogic::identity(m.rows()) - m_) {
        check_projector(m, tol);
    }

    /// Projector onto the span of orthonormal columns; valid by construction.
    static Projector onto(const Matrix& orthonormal_columns, Eigen::Index d) {
        return Projector(Trusted{}, projector_onto(orthonormal_columns, d));
    }
    static Projector zero(Eigen::Index d) { return Projector(Trusted{}, qlogic::zero(d)); }
    static Projector identity(Eigen::Index d) { return Projector(Trusted{}, qlogic::identity(d)); }

    const Matrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    int rank() const { return static_cast<int>(std::lround(m_.trace().real())); }

    /// 1 - p; the complement of the complement is bit-identical to p.
    Projector complement() const { return Projector(c_, m_); }

private:
    struct Trusted {};
    Projector(Trusted, Matrix m) : m_(std::move(m)), c_(qlogic::identity(m_.rows()) - m_) {}
    Projector(Matrix m, Matrix c) : m_(std::move(m)), c_(std::move(c)) {}

    Matrix m_;
    Matrix c_;
};

inline void require_same_dim(const Projector& p, const Projector& q) {
    if (p.dim() != q.dim()) throw Error(ErrorKind::DimensionMismatch, "projectors act on different spaces");
}

inline Projector orthocomplement(const Projector& p) { return p.complement(); }

/// Reference meet: projector onto ker(1 - p) intersected with ker(1 - q).
inline Projector meet_oracle(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    require_same_dim(p, q);
    const Eigen::Index d = p.dim();
    Matrix stacked(2 * d, d);
    stacked << identity(d) - p.matrix(), identity(d) - q.matrix();
    return Projector::onto(null_space(stacked, tol, 1.0), d);
}

/// The first `count` iterates s_n = (p q p)^n, n = 1..count.
inline std::vector<Matrix> meet_iterates(const Projector& p, const Projector& q, int count) {
    require_same_dim(p, q);
    const Matrix step = p.matrix() * q.matrix() * p.matrix();
    std::vector<Matrix> out;
    Matrix s = 0.5 * (step + step.adjoint());
    for (int n = 0; n < count; ++n) {
        out.push_back(s);
        const Matrix next = s * step;
        s = 0.5 * (next + next.adjoint());
    }
    return out;
}

/// Meet as lim (p q p)^n, iterated until successive iterates differ by less
/// than conv_tol and then rounded to the nearest projector.
inline Projector meet_limit(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    require_same_dim(p, q);
    const Matrix raw = p.matrix() * q.matrix() * p.matrix();
    const Matrix step = 0.5 * (raw + raw.adjoint());
    Matrix s = step;
    double delta = 0.0;
    bool settled = false;
    for (int n = 0; n < tol.max_iter; ++n) {
        Matrix next = s * step;
        next = 0.5 * (next + next.adjoint());
        delta = (next - s).norm();
        s = std::move(next);
        if (delta < tol.conv_tol) {
            settled = true;
            break;
        }
    }
    if (!settled)
        throw Error(ErrorKind::ConvergenceFailed,
                    "(pqp)^n did not settle in " + std::to_string(tol.max_iter) +
                        " iterations; last step " + std::to_string(delta));

    Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
    const RealVector& values = eig.eigenvalues();  // ascending
    double below = 0.0;
    double above = 1.0;
    Eigen::Index first_kept = values.size();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i) >= 0.5) {
            if (first_kept == values.size()) first_kept = i;
            above = std::min(above, values(i));
        } else {
            below = std::max(below, values(i));
        }
    }
    if (above - below <= kRoundingGap)
        throw Error(ErrorKind::ConvergenceFailed, "limit spectrum not separated from 1/2: gap " +
                                                      std::to_string(above - below));
    return Projector::onto(eig.eigenvectors().rightCols(values.size() - first_kept), p.dim());
}

/// lim (p q)^n without symmetrization; kept as a looser cross-check.
inline Matrix meet_unsymmetrized(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    require_same_dim(p, q);
    const Matrix step = p.matrix() * q.matrix();
    Matrix s = step;
    for (int n = 0; n < tol.max_iter; ++n) {
        Matrix next = s * step;
        const double delta = (next - s).norm();
        s = std::move(next);
        if (delta < tol.conv_tol) return s;
    }
    throw Error(ErrorKind::ConvergenceFailed, "(pq)^n did not settle");
}

/// Meet, cross-checked: returns the null-space result after confirming that
/// the limit formula reproduces it.
inline Projector meet(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    Projector reference = meet_oracle(p, q, tol);
    const Projector limit = meet_limit(p, q, tol);
    const double gap = operator_norm(limit.matrix() - reference.matrix());
    if (gap > kMeetAgreementTol)
        throw Error(ErrorKind::ConvergenceFailed,
                    "limit and null-space meets differ by " + std::to_string(gap));
    return reference;
}

inline Projector join(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    return orthocomplement(meet(orthocomplement(p), orthocomplement(q), tol));
}

/// Projector onto range(p) + range(q), straight from a column-space solve.
inline Projector join_span_oracle(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    require_same_dim(p, q);
    Matrix side(p.dim(), 2 * p.dim());
    side << p.matrix(), q.matrix();
    return Projector::onto(column_space(side, tol), p.dim());
}

/// p <= q, decided as range containment ||qp - p|| <= eq_tol, which is
/// equivalent to p = p meet q.
inline bool leq(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    require_same_dim(p, q);
    return operator_norm(q.matrix() * p.matrix() - p.matrix()) <= tol.eq_tol;
}

inline bool orthogonal(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    return leq(p, orthocomplement(q), tol);
}

/// ||q - (p join (p' meet q))|| for p <= q.
inline double orthomodular_residual(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    if (!leq(p, q, tol)) throw Error(ErrorKind::PreconditionFailed, "orthomodular law needs p <= q");
    const Projector rhs = join(p, meet(orthocomplement(p), q, tol), tol);
    return operator_norm(q.matrix() - rhs.matrix());
}

inline bool check_orthomodular(const Projector& p, const Projector& q, const Tolerance& tol = {}) {
    return orthomodular_residual(p, q, tol) <= kLawTol;
}

/// ||p meet (q join r) - (p meet q) join (p meet r)||.
inline double distributive_residual(const Projector& p, const Projector& q, const Projector& r,
                                    const Tolerance& tol = {}) {
    const Projector lhs = meet(p, join(q, r, tol), tol);
    const Projector rhs = join(meet(p, q, tol), meet(p, r, tol), tol);
    return operator_norm(lhs.matrix() - rhs.matrix());
}

inline bool check_distributive(const Projector& p, const Projector& q, const Projector& r,
                               const Tolerance& tol = {}) {
    return distributive_residual(p, q, r, tol) <= kLawTol;
}

inline bool is_atom(const AlgebraBasis& alg, const SectorDecomposition& sectors, const Projector& p,
                    const Tolerance& tol = {}) {
    if (p.rank() == 0) throw Error(ErrorKind::PreconditionFailed, "the zero projector is not an atom candidate");
    const auto dims = mvn_dimension(alg, sectors, p.matrix(), tol);
    const auto nonzero = std::count_if(dims.begin(), dims.end(), [](int x) { return x != 0; });
    const auto ones = std::count(dims.begin(), dims.end(), 1);
    return nonzero == 1 && ones == 1;
}

inline bool is_atom(const AlgebraBasis& alg, const Projector& p, const Tolerance& tol = {}) {
    return is_atom(alg, block_decomposition(alg, tol), p, tol);
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

/// Eigenvectors of a random self-adjoint element, grouped into spectral
/// clusters; any union of clusters is a projector in the algebra.
struct SpectralSample {
    Matrix vectors;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
};

inline SpectralSample spectral_sample(const AlgebraBasis& alg, Rng& rng, const Tolerance& tol) {
    const Eigensystem eig = hermitian_eig(random_self_adjoint(alg, rng), tol);
    const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    return {eig.vectors, cluster_spectrum(eig.values, tol.rank_tol * scale)};
}

inline Projector union_of(const SpectralSample& s, const std::vector<std::size_t>& picks, Eigen::Index d) {
    Eigen::Index cols = 0;
    for (auto k : picks) cols += s.clusters[k].second - s.clusters[k].first;
    Matrix basis(d, cols);
    Eigen::Index at = 0;
    for (auto k : picks) {
        const auto [b, e] = s.clusters[k];
        basis.middleCols(at, e - b) = s.vectors.middleCols(b, e - b);
        at += e - b;
    }
    return Projector::onto(basis, d);
}

}  // namespace detail

/// Spectral projector of a random self-adjoint element of alg, cut at a
/// uniformly chosen position in its (clustered) spectrum.
inline Projector random_projector(const AlgebraBasis& alg, std::uint64_t seed, const Tolerance& tol = {}) {
    Rng rng(seed);
    const auto sample = detail::spectral_sample(alg, rng, tol);
    std::uniform_int_distribution<std::size_t> cut(0, sample.clusters.size());
    const std::size_t t = cut(rng);
    std::vector<std::size_t> picks(t);
    for (std::size_t k = 0; k < t; ++k) picks[k] = k;
    return detail::union_of(sample, picks, alg.ambient_dim());
}

/// Pairwise orthogonal projectors in alg: the spectral clusters of a random
/// element are each kept with probability 1/2, and the kept ones are dealt
/// out to between 1 and `max_members` family members.
inline std::vector<Projector> random_orthogonal_family(const AlgebraBasis& alg, std::uint64_t seed,
                                                       std::size_t max_members, const Tolerance& tol = {}) {
    Rng rng(seed);
    const auto sample = detail::spectral_sample(alg, rng, tol);
    std::bernoulli_distribution keep(0.5);
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < sample.clusters.size(); ++k)
        if (keep(rng)) kept.push_back(k);
    const std::size_t members =
        std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_members))(rng);
    std::vector<std::vector<std::size_t>> groups(members);
    std::uniform_int_distribution<std::size_t> deal(0, members - 1);
    for (auto k : kept) groups[deal(rng)].push_back(k);
    std::vector<Projector> family;
    family.reserve(members);
    for (const auto& g : groups) family.push_back(detail::union_of(sample, g, alg.ambient_dim()));
    return family;
}

/// Two orthogonal projectors in alg drawn from one spectral sample.
inline std::pair<Projector, Projector> random_orthogonal_pair(const AlgebraBasis& alg, std::uint64_t seed,
                                                              const Tolerance& tol = {}) {
    Rng rng(seed);
    const auto sample = detail::spectral_sample(alg, rng, tol);
    std::uniform_int_distribution<int> which(0, 2);
    std::vector<std::size_t> first, second;
    for (std::size_t k = 0; k < sample.clusters.size(); ++k) {
        const int w = which(rng);
        if (w == 0) first.push_back(k);
        if (w == 1) second.push_back(k);
    }
    return {detail::union_of(sample, first, alg.ambient_dim()),
            detail::union_of(sample, second, alg.ambient_dim())};
}

// ---------------------------------------------------------------------------
// Report

struct DistributivityCounterexample {
    std::array<Matrix, 3> triple;  ///< p, q, r
    double residual = 0.0;
    std::size_t trial = 0;
};

struct LatticeReport {
    double orthomodular_pass_rate = 0.0;
    double distributive_pass_rate = 0.0;
    bool distributive = true;
    std::optional<DistributivityCounterexample> counterexample;
    bool boolean_lattice = false;
    bool atomic = false;
    bool factor = false;
    /// factor with a single sector of multiplicity 1, i.e. the lattice of all
    /// subspaces of C^d.
    bool hilbertian = false;
    int sector_count = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    /// Distributivity trials that raised ConvergenceFailed; excluded from the
    /// pass rate.
    int convergence_failures = 0;
};

namespace detail {
inline constexpr std::uint64_t kOrthomodularStream = 1;
inline constexpr std::uint64_t kDistributiveStream = 2;
}  // namespace detail

/// Sub-seed of trial `index` for a given purpose; exposed so tests can redraw
/// exactly the projectors a report used.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index,
                                std::uint64_t slot) {
    return derive_seed(derive_seed(derive_seed(seed, purpose), index), slot);
}

inline LatticeReport lattice_report(const AlgebraBasis& alg, int trials, std::uint64_t seed,
                                    const Tolerance& tol = {}, unsigned workers = 1) {
    if (trials < 0) throw Error(ErrorKind::InvalidArgument, "trials must be non-negative");
    LatticeReport report;
    report.trials = trials;
    report.seed = seed;

    const SectorDecomposition sectors = block_decomposition(alg, tol);
    report.sector_count = static_cast<int>(sectors.sectors.size());
    report.factor = report.sector_count == 1;
    report.boolean_lattice = std::all_of(sectors.sectors.begin(), sectors.sectors.end(),
                                         [](const Sector& s) { return s.block_size == 1; });
    report.hilbertian = report.factor && sectors.sectors.front().multiplicity == 1;

    // Each block M_n (x) 1_m has the atom e_11 (x) 1_m; every nonzero projector
    // has a nonzero sector component and so dominates one of these.
    report.atomic = !sectors.sectors.empty();
    for (const auto& s : sectors.sectors) {
        const Projector atom = Projector::onto(s.isometry.leftCols(s.multiplicity), alg.ambient_dim());
        report.atomic = report.atomic && is_atom(alg, sectors, atom, tol);
    }

    const auto n = static_cast<std::size_t>(trials);
    std::vector<char> ortho_pass(n, 0);
    parallel_for(n, workers, [&](std::size_t i) {
        const Projector r = random_projector(alg, trial_seed(seed, detail::kOrthomodularStream, i, 0), tol);
        const Projector q = random_projector(alg, trial_seed(seed, detail::kOrthomodularStream, i, 1), tol);
        const Projector p = meet_oracle(r, q, tol);
        try {
            ortho_pass[i] = check_orthomodular(p, q, tol) ? 1 : 0;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ConvergenceFailed) throw;
        }
    });

    // 1 pass, 0 fail, -1 undecided
    std::vector<int> dist_verdict(n, -1);
    std::vector<double> dist_residual(n, 0.0);
    parallel_for(n, workers, [&](std::size_t i) {
        const Projector p = random_projector(alg, trial_seed(seed, detail::kDistributiveStream, i, 0), tol);
        const Projector q = random_projector(alg, trial_seed(seed, detail::kDistributiveStream, i, 1), tol);
        const Projector r = random_projector(alg, trial_seed(seed, detail::kDistributiveStream, i, 2), tol);
        try {
            dist_residual[i] = distributive_residual(p, q, r, tol);
            dist_verdict[i] = dist_residual[i] <= kLawTol ? 1 : 0;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ConvergenceFailed) throw;
        }
    });

    int ortho_ok = 0;
    for (char c : ortho_pass) ortho_ok += c;
    int decided = 0, dist_ok = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (dist_verdict[i] < 0) {
            ++report.convergence_failures;
            continue;
        }
        ++decided;
        dist_ok += dist_verdict[i];
        if (dist_verdict[i] == 0 && !report.counterexample) {
            report.counterexample = DistributivityCounterexample{
                {random_projector(alg, trial_seed(seed, detail::kDistributiveStream, i, 0), tol).matrix(),
                 random_projector(alg, trial_seed(seed, detail::kDistributiveStream, i, 1), tol).matrix(),
                 random_projector(alg, trial_seed(seed, detail::kDistributiveStream, i, 2), tol).matrix()},
                dist_residual[i],
                i};
        }
    }
    report.orthomodular_pass_rate = n ? static_cast<double>(ortho_ok) / static_cast<double>(n) : 1.0;
    report.distributive_pass_rate = decided ? static_cast<double>(dist_ok) / decided : 1.0;
    report.distributive = !report.counterexample.has_value();
    return report;
}

}  // namespace qlogic
