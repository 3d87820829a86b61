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
 * @file scenarios.hpp
 * @brief Declarative scenarios: build an algebra, run every check, report.
 *
 * Scenario kinds:
 *  - classical:   n phase-space points; the algebra of diagonal matrices.
 *  - weyl_finite: clock U and shift V on C^d with V U = w U V, w = e^{2 pi i/d}.
 *                 The exchange phase w stands in for Planck's constant, which
 *                 has no finite-dimensional counterpart; the classical limit
 *                 is the commutative `classical` kind rather than a limit of w.
 *  - sectors:     (+)_i M_{n_i} (x) 1_{m_i}, a finite list of superselection
 *                 sectors.
 *  - custom:      explicit generators.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qlogic/algebra.hpp"
#include "qlogic/error.hpp"
#include "qlogic/io.hpp"
#include "qlogic/logic.hpp"
#include "qlogic/numerics.hpp"
#include "qlogic/random.hpp"
#include "qlogic/sectors.hpp"
#include "qlogic/states.hpp"

namespace qlogic {

// ---------------------------------------------------------------------------
// Generator builders

inline GeneratorSet build_classical(int point_count) {
    if (point_count < 1) throw Error(ErrorKind::InvalidArgument, "point_count must be >= 1");
    std::vector<Complex> entries;
    for (int k = 1; k <= point_count; ++k) entries.emplace_back(static_cast<double>(k));
    return {point_count, {diagonal(entries)}};
}

inline Complex weyl_phase(int modulus) { return std::polar(1.0, 2.0 * std::numbers::pi / modulus); }

/// {U, V}: U = diag(1, w, ..., w^{d-1}), V e_k = e_{k-1 mod d}.
inline GeneratorSet build_weyl_finite(int modulus) {
    if (modulus < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 2");
    const Complex w = weyl_phase(modulus);
    std::vector<Complex> clock;
    for (int k = 0; k < modulus; ++k) clock.push_back(std::pow(w, k));
    Matrix shift = zero(modulus);
    for (int k = 0; k < modulus; ++k) shift((k + modulus - 1) % modulus, k) = 1.0;
    return {modulus, {diagonal(clock), shift}};
}

struct BlockSpec {
    int block_size = 1;
    int multiplicity = 1;
    friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
    friend auto operator<=>(const BlockSpec&, const BlockSpec&) = default;
};

/// Matrix units e_jk (x) 1_m of every block, placed block-diagonally.
inline GeneratorSet build_sectors(const std::vector<BlockSpec>& blocks) {
    if (blocks.empty()) throw Error(ErrorKind::InvalidArgument, "sector list is empty");
    int d = 0;
    for (const auto& b : blocks) {
        if (b.block_size < 1 || b.multiplicity < 1)
            throw Error(ErrorKind::InvalidArgument, "block sizes and multiplicities must be >= 1");
        d += b.block_size * b.multiplicity;
    }
    GeneratorSet g{d, {}};
    int offset = 0;
    for (const auto& b : blocks) {
        const int span = b.block_size * b.multiplicity;
        for (int j = 0; j < b.block_size; ++j)
            for (int k = 0; k < b.block_size; ++k) {
                Matrix m = zero(d);
                m.block(offset, offset, span, span) = kron(matrix_unit(b.block_size, j, k), identity(b.multiplicity));
                g.generators.push_back(std::move(m));
            }
        offset += span;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Scenario description

enum class ScenarioKind { Classical, WeylFinite, Sectors, Custom };

inline std::string to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::Classical: return "classical";
    case ScenarioKind::WeylFinite: return "weyl_finite";
    case ScenarioKind::Sectors: return "sectors";
    case ScenarioKind::Custom: return "custom";
    }
    return "custom";
}

struct Expectation {
    std::string check;
    Json args = Json::object();
    Json expect;
};

struct NamedProjector {
    std::string id;
    Matrix matrix;
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::Custom;
    int dim = 0;
    Json parameters = Json::object();
    int trials = 100;
    std::uint64_t seed = 0;
    std::vector<Matrix> states;
    std::vector<NamedProjector> projectors;
    std::vector<Expectation> expectations;

    GeneratorSet generators() const {
        GeneratorSet g;
        switch (kind) {
        case ScenarioKind::Classical:
            g = build_classical(require_field(parameters, "point_count").get<int>());
            break;
        case ScenarioKind::WeylFinite:
            g = build_weyl_finite(require_field(parameters, "modulus").get<int>());
            break;
        case ScenarioKind::Sectors: {
            std::vector<BlockSpec> blocks;
            for (const auto& b : require_field(parameters, "blocks")) {
                if (!b.is_array() || b.size() != 2)
                    throw Error(ErrorKind::InvalidArgument, "each block is [block_size, multiplicity]");
                blocks.push_back({b[0].get<int>(), b[1].get<int>()});
            }
            g = build_sectors(blocks);
            break;
        }
        case ScenarioKind::Custom: {
            g.ambient_dim = dim;
            for (const auto& m : require_field(parameters, "generators")) g.generators.push_back(matrix_from_json(m));
            g.validate();
            break;
        }
        }
        if (g.ambient_dim != dim)
            throw Error(ErrorKind::InvalidArgument, "parameters describe dimension " + std::to_string(g.ambient_dim) +
                                                        " but dim is " + std::to_string(dim));
        return g;
    }
};

inline ScenarioKind scenario_kind_from_string(const std::string& s) {
    if (s == "classical") return ScenarioKind::Classical;
    if (s == "weyl_finite") return ScenarioKind::WeylFinite;
    if (s == "sectors") return ScenarioKind::Sectors;
    if (s == "custom") return ScenarioKind::Custom;
    throw Error(ErrorKind::InvalidArgument, "unknown scenario kind '" + s + "'");
}

inline Scenario scenario_from_json(const Json& j) {
    try {
        Scenario s;
        s.name = require_field(j, "name").get<std::string>();
        s.kind = scenario_kind_from_string(require_field(j, "kind").get<std::string>());
        s.dim = require_field(j, "dim").get<int>();
        s.parameters = j.value("parameters", Json::object());
        s.trials = j.value("trials", 100);
        s.seed = j.value("seed", std::uint64_t{0});
        if (s.dim < 1) throw Error(ErrorKind::InvalidArgument, "dim must be >= 1");
        if (s.trials < 0) throw Error(ErrorKind::InvalidArgument, "trials must be >= 0");
        for (const auto& st : j.value("states", Json::array()))
            s.states.push_back(matrix_from_json(require_field(st, "density")));
        for (const auto& p : j.value("projectors", Json::array()))
            s.projectors.push_back({require_field(p, "id").get<std::string>(), matrix_from_json(require_field(p, "matrix"))});
        for (const auto& e : j.value("expectations", Json::array()))
            s.expectations.push_back({require_field(e, "check").get<std::string>(), e.value("args", Json::object()),
                                      require_field(e, "expect")});
        return s;
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed scenario: ") + e.what());
    }
}

inline Json scenario_to_json(const Scenario& s) {
    Json states = Json::array();
    for (const auto& m : s.states) states.push_back({{"density", matrix_to_json(m)}});
    Json projectors = Json::array();
    for (const auto& p : s.projectors) projectors.push_back({{"id", p.id}, {"matrix", matrix_to_json(p.matrix)}});
    Json expectations = Json::array();
    for (const auto& e : s.expectations)
        expectations.push_back({{"check", e.check}, {"args", e.args}, {"expect", e.expect}});
    return {{"name", s.name},        {"kind", to_string(s.kind)}, {"dim", s.dim},
            {"parameters", s.parameters}, {"trials", s.trials},   {"seed", s.seed},
            {"states", states},      {"projectors", projectors},  {"expectations", expectations}};
}

// ---------------------------------------------------------------------------
// Report

struct StateSummary {
    std::map<std::string, double> logical_values;  ///< projector id -> tr(rho p)
    bool pure = false;
    int orthoadditivity_trials = 0;
    double orthoadditivity_pass_rate = 1.0;
};

struct CharacterSummary {
    int count = 0;
    bool multiplicative = false;
    bool pure = false;
    bool separating = false;
};

struct ExpectationVerdict {
    Expectation expectation;
    Json actual;
    bool pass = false;
};

struct ScenarioReport {
    Scenario scenario;
    std::size_t algebra_dim = 0;
    std::size_t commutant_dim = 0;
    std::size_t center_dim = 0;
    bool commutative = false;
    double envelope_residual = 0.0;
    bool envelope_equals_closure = false;
    LatticeReport lattice;
    SectorDecomposition sectors;
    std::map<std::string, std::vector<int>> mvn_dimensions;  ///< projector id -> per-sector dimension
    std::vector<StateSummary> states;
    std::optional<CharacterSummary> characters;
    std::vector<ExpectationVerdict> verdicts;
    std::vector<std::string> notes;

    bool all_expectations_pass() const {
        return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.pass; });
    }
};

/// Residual threshold for "envelope equals closure", per basis vector.
inline constexpr double kEnvelopeTol = 1e-8;
inline constexpr std::size_t kMaxOrthoadditivitySweep = 200;

namespace detail {

inline constexpr std::uint64_t kFamilyStream = 3;

inline Json sector_multiset(const SectorDecomposition& s) {
    std::vector<BlockSpec> blocks;
    for (const auto& sec : s.sectors) blocks.push_back({sec.block_size, sec.multiplicity});
    std::sort(blocks.begin(), blocks.end());
    Json out = Json::array();
    for (const auto& b : blocks) out.push_back(Json::array({b.block_size, b.multiplicity}));
    return out;
}

inline std::size_t state_index(const Expectation& e, const ScenarioReport& r) {
    const auto i = require_field(e.args, "state").get<std::size_t>();
    if (i >= r.states.size()) throw Error(ErrorKind::InvalidArgument, "expectation refers to missing state");
    return i;
}

inline Json actual_value(const Expectation& e, const ScenarioReport& r) {
    const auto& c = e.check;
    if (c == "algebra_dim") return r.algebra_dim;
    if (c == "commutant_dim") return r.commutant_dim;
    if (c == "center_dim") return r.center_dim;
    if (c == "is_commutative") return r.commutative;
    if (c == "is_factor") return r.lattice.factor;
    if (c == "sector_count") return r.lattice.sector_count;
    if (c == "boolean_lattice") return r.lattice.boolean_lattice;
    if (c == "distributive") return r.lattice.distributive;
    if (c == "atomic") return r.lattice.atomic;
    if (c == "hilbertian") return r.lattice.hilbertian;
    if (c == "orthomodular_pass_rate") return r.lattice.orthomodular_pass_rate;
    if (c == "envelope_equals_closure") return r.envelope_equals_closure;
    if (c == "sectors") return sector_multiset(r.sectors);
    if (c == "character_count" || c == "characters_separating") {
        if (!r.characters) throw Error(ErrorKind::NotCommutative, "characters exist only for commutative algebras");
        if (c == "character_count") return r.characters->count;
        return r.characters->separating;
    }
    if (c == "mvn_dimension") {
        const auto id = require_field(e.args, "projector").get<std::string>();
        const auto it = r.mvn_dimensions.find(id);
        if (it == r.mvn_dimensions.end()) throw Error(ErrorKind::InvalidArgument, "unknown projector '" + id + "'");
        return it->second;
    }
    if (c == "is_pure") return r.states[state_index(e, r)].pure;
    if (c == "orthoadditive") return r.states[state_index(e, r)].orthoadditivity_pass_rate == 1.0;
    if (c == "logical_value") {
        const auto& values = r.states[state_index(e, r)].logical_values;
        const auto id = require_field(e.args, "projector").get<std::string>();
        const auto it = values.find(id);
        if (it == values.end()) throw Error(ErrorKind::InvalidArgument, "unknown projector '" + id + "'");
        return it->second;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown expectation check '" + c + "'");
}

inline bool matches(const std::string& check, const Json& actual, const Json& expect) {
    if (actual.is_number() && expect.is_number())
        return std::abs(actual.get<double>() - expect.get<double>()) <= 1e-9;
    if (check == "sectors" && expect.is_array()) {
        std::vector<BlockSpec> want;
        for (const auto& b : expect) want.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
        std::sort(want.begin(), want.end());
        Json sorted = Json::array();
        for (const auto& b : want) sorted.push_back(Json::array({b.block_size, b.multiplicity}));
        return sorted == actual;
    }
    return actual == expect;
}

}  // namespace detail

/// Builds, closes and analyses the scenario's algebra. Deterministic for a
/// fixed seed regardless of `workers`.
inline ScenarioReport run_scenario(const Scenario& s, const Tolerance& tol = {}, unsigned workers = 1) {
    try {
        tol.validate();
        ScenarioReport r;
        r.scenario = s;
        const GeneratorSet gens = s.generators();
        const Eigen::Index d = gens.ambient_dim;
        const AlgebraBasis alg = close(gens, tol);
        r.algebra_dim = alg.dim();

        const AlgebraBasis env = baire_envelope(alg, tol);
        r.envelope_residual = subspace_residual(env, alg);
        r.envelope_equals_closure = r.envelope_residual <= kEnvelopeTol;
        r.commutant_dim = commutant(alg, tol).dim();
        r.center_dim = center(alg, tol).dim();
        r.commutative = is_commutative(alg, tol);

        r.lattice = lattice_report(alg, s.trials, s.seed, tol, workers);
        r.sectors = block_decomposition(alg, tol);

        std::vector<NamedProjector> projectors{{"one", identity(d)}, {"zero", zero(d)}};
        for (std::size_t i = 0; i < r.sectors.sectors.size(); ++i)
            projectors.push_back({"z" + std::to_string(i), r.sectors.sectors[i].central_projector});
        for (const auto& p : s.projectors) projectors.push_back(p);
        for (const auto& p : projectors) r.mvn_dimensions[p.id] = mvn_dimension(alg, r.sectors, p.matrix, tol);

        const std::size_t sweep = std::min<std::size_t>(static_cast<std::size_t>(s.trials), kMaxOrthoadditivitySweep);
        for (std::size_t k = 0; k < s.states.size(); ++k) {
            const StateFunctional state = make_state(s.states[k], tol);
            const LogicalState logical(state, env, tol);
            StateSummary summary;
            for (const auto& p : projectors) summary.logical_values[p.id] = logical(Projector(p.matrix, tol));
            summary.pure = is_pure(state, r.sectors, tol);
            std::vector<char> pass(sweep, 0);
            parallel_for(sweep, workers, [&](std::size_t i) {
                const auto family = random_orthogonal_family(
                    env, trial_seed(s.seed, detail::kFamilyStream, i, k), static_cast<std::size_t>(d), tol);
                pass[i] = check_sigma_orthoadditive(logical, family, tol) ? 1 : 0;
            });
            summary.orthoadditivity_trials = static_cast<int>(sweep);
            const auto ok = std::count(pass.begin(), pass.end(), 1);
            summary.orthoadditivity_pass_rate = sweep ? static_cast<double>(ok) / static_cast<double>(sweep) : 1.0;
            r.states.push_back(std::move(summary));
        }

        if (r.commutative) {
            const auto chars = dirac_characters(alg, tol);
            CharacterSummary c;
            c.count = static_cast<int>(chars.size());
            c.multiplicative = true;
            c.pure = true;
            for (const auto& chi : chars) {
                for (const auto& a : alg.basis())
                    for (const auto& b : alg.basis())
                        if (std::abs(evaluate(chi, a * b) - evaluate(chi, a) * evaluate(chi, b)) > kMultiplicativityTol)
                            c.multiplicative = false;
                c.pure = c.pure && is_pure(chi, r.sectors, tol);
            }
            c.separating = is_separating(chars, alg, tol);
            r.characters = c;
        }

        for (const auto& e : s.expectations) {
            ExpectationVerdict v{e, detail::actual_value(e, r), false};
            v.pass = detail::matches(e.check, v.actual, e.expect);
            r.verdicts.push_back(std::move(v));
        }

        r.notes.push_back("lattice completeness: every projector lattice of a finite-dimensional algebra is "
                          "complete; failure of completeness needs non-separable sector sums and is not "
                          "representable at finite dimension");
        r.notes.push_back("envelope computed as the bicommutant in the defining representation on C^d");
        if (!r.envelope_equals_closure)
            r.notes.push_back("envelope differs from closure: residual " + std::to_string(r.envelope_residual));
        return r;
    } catch (const Error& e) {
        throw Error(e.kind(), "scenario '" + s.name + "': " + e.what());
    }
}

inline Json report_to_json(const ScenarioReport& r) {
    Json states = Json::array();
    for (const auto& st : r.states)
        states.push_back({{"logical_values", st.logical_values},
                          {"pure", st.pure},
                          {"orthoadditivity_trials", st.orthoadditivity_trials},
                          {"orthoadditivity_pass_rate", st.orthoadditivity_pass_rate}});
    Json verdicts = Json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back({{"check", v.expectation.check},
                            {"args", v.expectation.args},
                            {"expect", v.expectation.expect},
                            {"actual", v.actual},
                            {"pass", v.pass}});
    Json sector_summary = sectors_to_json(r.sectors);
    Json j = {{"scenario", scenario_to_json(r.scenario)},
              {"algebra_dim", r.algebra_dim},
              {"commutant_dim", r.commutant_dim},
              {"center_dim", r.center_dim},
              {"commutative", r.commutative},
              {"envelope_residual", r.envelope_residual},
              {"envelope_equals_closure", r.envelope_equals_closure},
              {"lattice", lattice_report_to_json(r.lattice)},
              {"sectors", sector_summary},
              {"mvn_dimensions", r.mvn_dimensions},
              {"states", states},
              {"expectations", verdicts},
              {"all_expectations_pass", r.all_expectations_pass()},
              {"notes", r.notes}};
    if (r.characters) {
        j["characters"] = {{"count", r.characters->count},
                           {"multiplicative", r.characters->multiplicative},
                           {"pure", r.characters->pure},
                           {"separating", r.characters->separating}};
    } else {
        j["characters"] = nullptr;
    }
    return j;
}

}  // namespace qlogic
