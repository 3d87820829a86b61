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

// JSON encodings. A matrix is an array of rows; every entry is [re, im].

#include <string>
#include <vector>

#include "json.hpp"

#include "qlogic/algebra.hpp"
#include "qlogic/error.hpp"
#include "qlogic/logic.hpp"
#include "qlogic/numerics.hpp"
#include "qlogic/sectors.hpp"
#include "qlogic/states.hpp"

namespace qlogic {

using Json = nlohmann::json;

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::InvalidArgument, "matrix must be a non-empty array of rows");
    const auto d = static_cast<Eigen::Index>(j.size());
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
            throw Error(ErrorKind::DimensionMismatch, "matrix rows must all have length " + std::to_string(d));
        for (Eigen::Index c = 0; c < d; ++c) {
            const Json& e = row[static_cast<std::size_t>(c)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw Error(ErrorKind::InvalidArgument, "matrix entries must be [re, im] pairs");
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
    return m;
}

inline Json require_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline GeneratorSet generator_set_from_json(const Json& j) {
    GeneratorSet g;
    const Json dim = require_field(j, "dim");
    if (!dim.is_number_integer()) throw Error(ErrorKind::InvalidArgument, "'dim' must be an integer");
    g.ambient_dim = dim.get<Eigen::Index>();
    const Json gens = require_field(j, "generators");
    if (!gens.is_array()) throw Error(ErrorKind::InvalidArgument, "'generators' must be an array");
    for (const auto& m : gens) g.generators.push_back(matrix_from_json(m));
    g.validate();
    return g;
}

inline Json generator_set_to_json(const GeneratorSet& g) {
    Json gens = Json::array();
    for (const auto& m : g.generators) gens.push_back(matrix_to_json(m));
    return {{"dim", g.ambient_dim}, {"generators", std::move(gens)}};
}

inline Json algebra_to_json(const AlgebraBasis& alg) {
    Json basis = Json::array();
    for (const auto& b : alg.basis()) basis.push_back(matrix_to_json(b));
    return {{"dim", alg.ambient_dim()}, {"algebra_dim", alg.dim()}, {"basis", std::move(basis)}};
}

inline Json sectors_to_json(const SectorDecomposition& s) {
    Json out = Json::array();
    for (const auto& sec : s.sectors)
        out.push_back({{"block_size", sec.block_size},
                       {"multiplicity", sec.multiplicity},
                       {"central_projector", matrix_to_json(sec.central_projector)}});
    return out;
}

inline Json lattice_report_to_json(const LatticeReport& r) {
    Json j = {{"orthomodular_pass_rate", r.orthomodular_pass_rate},
              {"distributive_pass_rate", r.distributive_pass_rate},
              {"distributive", r.distributive},
              {"boolean_lattice", r.boolean_lattice},
              {"atomic", r.atomic},
              {"factor", r.factor},
              {"hilbertian", r.hilbertian},
              {"sector_count", r.sector_count},
              {"trials", r.trials},
              {"seed", r.seed},
              {"convergence_failures", r.convergence_failures}};
    if (r.counterexample) {
        j["counterexample"] = {{"p", matrix_to_json(r.counterexample->triple[0])},
                               {"q", matrix_to_json(r.counterexample->triple[1])},
                               {"r", matrix_to_json(r.counterexample->triple[2])},
                               {"residual", r.counterexample->residual},
                               {"trial", r.counterexample->trial}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

inline StateFunctional state_from_json(const Json& j, const Tolerance& tol = {}) {
    return make_state(matrix_from_json(require_field(j, "density")), tol);
}

inline Json state_to_json(const StateFunctional& s) { return {{"density", matrix_to_json(s.density())}}; }

}  // namespace qlogic
