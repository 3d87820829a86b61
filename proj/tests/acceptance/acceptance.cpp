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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Every threshold used below is a named constant in this file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qlogic.hpp"

namespace {

using namespace qlogic;

constexpr double kOrthomodularTol = 1e-7;
constexpr double kOrthomodularSeconds = 30.0;
constexpr double kDistributiveTol = 1e-7;
constexpr double kCommutingMeetTol = 1e-10;
constexpr double kUnitResidualTol = 1e-9;
constexpr double kMeetAgreement = 1e-8;
constexpr double kMaxConvergenceFailureRate = 0.005;
constexpr double kEnvelopeResidualTol = 1e-8;
constexpr double kWeylRelationTol = 1e-12;
constexpr double kOrthoadditivityTol = 1e-7;
constexpr double kComplementLawTol = 1e-9;
constexpr double kCharacterTol = 1e-8;

constexpr int kOrthomodularPairs = 1000;
constexpr int kDistributiveTriples = 1000;
constexpr int kMeetPairs = 1000;
constexpr int kOrthoadditivityPairs = 200;
constexpr int kMvnPairs = 500;
constexpr std::uint64_t kSeed = 20260101;

struct Named {
    std::string name;
    AlgebraBasis alg;
};

std::vector<Named> scenario_algebras() {
    return {{"classical8", close(build_classical(8))},
            {"weyl2", close(build_weyl_finite(2))},
            {"weyl3", close(build_weyl_finite(3))},
            {"weyl4", close(build_weyl_finite(4))},
            {"sectors(2,1)(3,1)", close(build_sectors({{2, 1}, {3, 1}}))}};
}

Scenario scenario_of(const std::string& kind, Json parameters, int dim) {
    Scenario s;
    s.name = kind;
    s.kind = scenario_kind_from_string(kind);
    s.dim = dim;
    s.parameters = std::move(parameters);
    s.trials = 200;
    s.seed = kSeed;
    s.states.push_back(identity(dim) / static_cast<double>(dim));
    return s;
}

std::vector<Scenario> scenario_files() {
    return {scenario_of("classical", {{"point_count", 8}}, 8), scenario_of("weyl_finite", {{"modulus", 2}}, 2),
            scenario_of("weyl_finite", {{"modulus", 3}}, 3), scenario_of("weyl_finite", {{"modulus", 4}}, 4),
            scenario_of("sectors", {{"blocks", {{2, 1}, {3, 1}}}}, 5)};
}

StateFunctional random_state(Eigen::Index d, Rng& rng) {
    std::normal_distribution<double> normal;
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    const Matrix rho = g * g.adjoint();
    return make_state(rho / rho.trace().real());
}

Matrix line(double angle) {
    Vector v(2);
    v << std::cos(angle), std::sin(angle);
    return outer(v);
}

Matrix random_unitary(const AlgebraBasis& alg, Rng& rng) {
    const Eigensystem eig = hermitian_eig(random_self_adjoint(alg, rng));
    Vector phases(eig.values.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(kI * eig.values(i));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

Outcome orthomodularity() {
    const auto start = std::chrono::steady_clock::now();
    std::size_t passed = 0, total = 0;
    double worst = 0.0;
    for (const auto& [name, alg] : scenario_algebras()) {
        for (int i = 0; i < kOrthomodularPairs; ++i) {
            const Projector r = random_projector(alg, trial_seed(kSeed, 1, i, 0));
            const Projector q = random_projector(alg, trial_seed(kSeed, 1, i, 1));
            const Projector p = meet(r, q);
            const double res = orthomodular_residual(p, q);
            worst = std::max(worst, res);
            passed += res <= kOrthomodularTol;
            ++total;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {passed == total && secs < kOrthomodularSeconds,
            std::to_string(passed) + "/" + std::to_string(total) + " pairs, worst residual " + fmt(worst) + ", " +
                fmt(secs) + " s"};
}

Outcome classical_distributivity() {
    const auto alg = close(build_classical(8));
    int passed = 0;
    double worst_meet = 0.0;
    for (int i = 0; i < kDistributiveTriples; ++i) {
        const Projector p = random_projector(alg, trial_seed(kSeed, 2, i, 0));
        const Projector q = random_projector(alg, trial_seed(kSeed, 2, i, 1));
        const Projector r = random_projector(alg, trial_seed(kSeed, 2, i, 2));
        passed += distributive_residual(p, q, r) <= kDistributiveTol;
        worst_meet = std::max(worst_meet, operator_norm(meet(p, q).matrix() - p.matrix() * q.matrix()));
    }
    return {passed == kDistributiveTriples && worst_meet <= kCommutingMeetTol,
            std::to_string(passed) + "/" + std::to_string(kDistributiveTriples) + " triples, max |meet - pq| " +
                fmt(worst_meet)};
}

Outcome quantum_nondistributivity() {
    const auto rep = lattice_report(close(build_weyl_finite(2)), 200, kSeed);
    bool recorded = !rep.distributive && rep.counterexample.has_value();
    double recomputed = 0.0;
    if (recorded) {
        const auto& [a, b, c] = rep.counterexample->triple;
        recomputed = distributive_residual(Projector(a), Projector(b), Projector(c));
        recorded = recomputed > kDistributiveTol;
    }
    const Projector p(line(0.0)), q(line(std::numbers::pi / 4)), r(line(std::numbers::pi / 2));
    const Projector lhs = meet(p, join(q, r));
    const Projector rhs = join(meet(p, q), meet(p, r));
    const double lhs_err = operator_norm(lhs.matrix() - p.matrix());
    const double rhs_err = operator_norm(rhs.matrix());
    const double residual = distributive_residual(p, q, r);
    const bool triple_ok = lhs_err <= kUnitResidualTol && rhs_err <= kUnitResidualTol &&
                           std::abs(residual - 1.0) <= kUnitResidualTol;
    return {recorded && triple_ok, "sampled counterexample residual " + fmt(recomputed) +
                                       "; 0/45/90 triple residual " + fmt(residual) + " (|lhs - p| " +
                                       fmt(lhs_err) + ", |rhs| " + fmt(rhs_err) + ")"};
}

Outcome meet_agreement() {
    const auto alg = close(build_weyl_finite(4));
    int failures = 0, agreed = 0, compared = 0;
    double worst = 0.0;
    for (int i = 0; i < kMeetPairs; ++i) {
        const Projector p = random_projector(alg, trial_seed(kSeed, 4, i, 0));
        const Projector q = random_projector(alg, trial_seed(kSeed, 4, i, 1));
        try {
            const Projector limit = meet_limit(p, q);
            const double gap = operator_norm(limit.matrix() - meet_oracle(p, q).matrix());
            worst = std::max(worst, gap);
            agreed += gap <= kMeetAgreement;
            ++compared;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ConvergenceFailed) throw;
            ++failures;
        }
    }
    const double rate = static_cast<double>(failures) / kMeetPairs;
    return {agreed == compared && rate < kMaxConvergenceFailureRate,
            std::to_string(agreed) + "/" + std::to_string(compared) + " agree, worst gap " + fmt(worst) + ", " +
                std::to_string(failures) + " ConvergenceFailed"};
}

Outcome envelope_and_commutant() {
    bool ok = true;
    double worst_env = 0.0, worst_comm = 0.0;
    auto algebras = scenario_algebras();
    algebras.push_back({"sectors(2,2)", close(build_sectors({{2, 2}}))});
    algebras.push_back({"custom diag(1,1,2)", close({3, {diagonal({1, 1, 2})}})});
    for (const auto& [name, alg] : algebras) {
        const double env = subspace_residual(baire_envelope(alg), alg);
        const AlgebraBasis c1 = commutant(alg);
        const double comm = subspace_residual(commutant(commutant(c1)), c1);
        worst_env = std::max(worst_env, env);
        worst_comm = std::max(worst_comm, comm);
        ok = ok && env <= kEnvelopeResidualTol && comm <= kEnvelopeResidualTol;
    }
    return {ok, std::to_string(algebras.size()) + " algebras, envelope residual " + fmt(worst_env) +
                    ", commutant^3 residual " + fmt(worst_comm)};
}

Outcome weyl_relation() {
    bool ok = true;
    double worst = 0.0;
    for (int d = 2; d <= 8; ++d) {
        const auto g = build_weyl_finite(d);
        const Matrix& u = g.generators[0];
        const Matrix& v = g.generators[1];
        const double res = operator_norm(v * u - weyl_phase(d) * u * v);
        worst = std::max(worst, res);
        ok = ok && res <= kWeylRelationTol && close(g).dim() == static_cast<std::size_t>(d * d);
    }
    return {ok, "d = 2..8, worst |VU - wUV| " + fmt(worst) + ", closure dimension d^2"};
}

Outcome orthoadditivity() {
    bool ok = true;
    double worst_add = 0.0, worst_comp = 0.0;
    int total = 0;
    for (const auto& [name, alg] : scenario_algebras()) {
        const Eigen::Index d = alg.ambient_dim();
        Rng rng(derive_seed(kSeed, 7));
        for (int i = 0; i < kOrthoadditivityPairs; ++i) {
            const auto ls = restrict_logical(random_state(d, rng), alg);
            const auto family = random_orthogonal_family(alg, trial_seed(kSeed, 7, i, 0), d);
            Projector total_p = Projector::zero(d);
            double sum = 0.0;
            for (const auto& p : family) {
                total_p = join(total_p, p);
                const double v = ls(p);
                sum += v;
                worst_comp = std::max(worst_comp, std::abs(ls(orthocomplement(p)) - (1.0 - v)));
            }
            worst_add = std::max(worst_add, std::abs(ls(total_p) - sum));
            ok = ok && check_sigma_orthoadditive(ls, family);
            ++total;
        }
    }
    ok = ok && worst_add <= kOrthoadditivityTol && worst_comp <= kComplementLawTol;
    return {ok, std::to_string(total) + " pairs, additivity residual " + fmt(worst_add) + ", complement residual " +
                    fmt(worst_comp)};
}

Outcome dirac_states() {
    const auto alg = close(build_classical(8));
    const auto chars = dirac_characters(alg);
    const auto dec = block_decomposition(alg);
    double worst = 0.0;
    bool pure = true;
    Rng rng(derive_seed(kSeed, 8));
    for (const auto& chi : chars) {
        pure = pure && is_pure(chi, dec);
        for (int t = 0; t < 50; ++t) {
            const Matrix a = random_element(alg, rng);
            const Matrix b = random_element(alg, rng);
            worst = std::max(worst, std::abs(evaluate(chi, a * b) - evaluate(chi, a) * evaluate(chi, b)));
        }
    }
    const bool separating = is_separating(chars, alg);
    return {chars.size() == 8 && worst <= kCharacterTol && pure && separating,
            std::to_string(chars.size()) + " characters, multiplicativity residual " + fmt(worst) +
                (pure ? ", pure" : ", NOT pure") + (separating ? ", separating" : ", NOT separating")};
}

Outcome mvn_dimension_axioms() {
    bool additive = true, zero_ok = true;
    int agree = 0, total = 0, equivalent = 0;
    for (const auto& [name, alg] : scenario_algebras()) {
        const auto dec = block_decomposition(alg);
        const Eigen::Index d = alg.ambient_dim();
        for (int x : mvn_dimension(alg, dec, zero(d))) zero_ok = zero_ok && x == 0;
        for (int i = 0; i < kMvnPairs; ++i) {
            const auto [p, q] = random_orthogonal_pair(alg, trial_seed(kSeed, 9, i, 0));
            const auto dp = mvn_dimension(alg, dec, p.matrix());
            const auto dq = mvn_dimension(alg, dec, q.matrix());
            const auto ds = mvn_dimension(alg, dec, p.matrix() + q.matrix());
            for (std::size_t k = 0; k < ds.size(); ++k) additive = additive && ds[k] == dp[k] + dq[k];
        }
        // Odd pairs are unitary conjugates so that both verdicts occur; the
        // partial-isometry construction is the independent referee.
        Rng rng(derive_seed(kSeed, 10));
        for (int i = 0; i < kMvnPairs; ++i) {
            const Projector p = random_projector(alg, trial_seed(kSeed, 9, i, 1));
            Matrix q = random_projector(alg, trial_seed(kSeed, 9, i, 2)).matrix();
            if (i % 2 == 1) {
                const Matrix u = random_unitary(alg, rng);
                q = u * p.matrix() * u.adjoint();
                q = 0.5 * (q + q.adjoint());
            }
            const bool dims_equal = mvn_dimension(alg, dec, p.matrix()) == mvn_dimension(alg, dec, q);
            const bool verdict = projectors_equivalent(alg, dec, p.matrix(), q);
            const bool witness = equivalence_partial_isometry(alg, p.matrix(), q, {}, static_cast<std::uint64_t>(i))
                                     .has_value();
            agree += verdict == dims_equal && verdict == witness;
            equivalent += verdict;
            ++total;
        }
    }
    return {additive && zero_ok && agree == total,
            std::string(additive ? "additive" : "NOT additive") + ", d(0) = 0 " + (zero_ok ? "holds" : "FAILS") +
                ", equivalence agrees on " + std::to_string(agree) + "/" + std::to_string(total) + " (" +
                std::to_string(equivalent) + " equivalent)"};
}

Outcome sector_round_trip() {
    const auto alg = close(build_sectors({{2, 1}, {3, 1}}));
    const auto dec = block_decomposition(alg);
    std::vector<BlockSpec> got;
    for (const auto& s : dec.sectors) got.push_back({s.block_size, s.multiplicity});
    std::sort(got.begin(), got.end());
    const bool blocks_ok = got == std::vector<BlockSpec>{{2, 1}, {3, 1}};
    const std::size_t center_dim = center(alg).dim();
    const bool factor = is_factor(alg);

    const auto weyl = close(build_weyl_finite(3));
    const auto wdec = block_decomposition(weyl);
    const bool weyl_ok = is_factor(weyl) && wdec.sectors.size() == 1 && wdec.sectors[0].block_size == 3 &&
                         wdec.sectors[0].multiplicity == 1;
    return {blocks_ok && center_dim == 2 && !factor && weyl_ok,
            std::string("recovered ") + (blocks_ok ? "{(2,1),(3,1)}" : "other blocks") + ", center dim " +
                std::to_string(center_dim) + ", weyl3 " + (weyl_ok ? "single (3,1) factor" : "unexpected")};
}

Outcome determinism() {
    int identical = 0;
    const auto all = scenario_files();
    for (const auto& s : all) {
        const std::string a = report_to_json(run_scenario(s)).dump();
        const std::string b = report_to_json(run_scenario(s)).dump();
        const std::string c = report_to_json(run_scenario(s, {}, 4)).dump();
        identical += a == b && a == c;
    }
    return {identical == static_cast<int>(all.size()),
            std::to_string(identical) + "/" + std::to_string(all.size()) +
                " scenarios byte-identical (serial twice, 4 workers)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"orthomodularity on 5 scenarios x 1000 constrained pairs", orthomodularity},
        {"classical distributivity and meet = pq", classical_distributivity},
        {"quantum non-distributivity", quantum_nondistributivity},
        {"meet limit vs null-space oracle in M_4", meet_agreement},
        {"envelope = closure, commutant^3 = commutant", envelope_and_commutant},
        {"finite Weyl relation", weyl_relation},
        {"sigma-orthoadditivity and complement law", orthoadditivity},
        {"Dirac point states on 8 points", dirac_states},
        {"Murray-von Neumann dimension axioms", mvn_dimension_axioms},
        {"sector round trip", sector_round_trip},
        {"determinism under parallel trials", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
