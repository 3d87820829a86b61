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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace qlogic {
namespace {

using testing::diagonal_algebra;
using testing::full_algebra;

Scenario from_text(const char* text) { return scenario_from_json(Json::parse(text)); }

Scenario classical(int n, int trials = 60) {
    Scenario s;
    s.name = "classical" + std::to_string(n);
    s.kind = ScenarioKind::Classical;
    s.dim = n;
    s.parameters = {{"point_count", n}};
    s.trials = trials;
    s.seed = 3;
    return s;
}

Scenario weyl(int d, int trials = 60) {
    Scenario s;
    s.name = "weyl" + std::to_string(d);
    s.kind = ScenarioKind::WeylFinite;
    s.dim = d;
    s.parameters = {{"modulus", d}};
    s.trials = trials;
    s.seed = 3;
    return s;
}

Scenario sectors(const std::vector<BlockSpec>& blocks, int trials = 60) {
    Scenario s;
    s.name = "sectors";
    s.kind = ScenarioKind::Sectors;
    Json list = Json::array();
    for (const auto& b : blocks) {
        list.push_back({b.block_size, b.multiplicity});
        s.dim += b.block_size * b.multiplicity;
    }
    s.parameters = {{"blocks", list}};
    s.trials = trials;
    s.seed = 3;
    return s;
}

TEST(BuildClassical, Examples) {
    EXPECT_EQ(close(build_classical(1)).dim(), 1u);
    const auto three = close(build_classical(3));
    EXPECT_EQ(three.dim(), 3u);
    EXPECT_TRUE(is_commutative(three));
    EXPECT_TRUE(subspace_equal(three, diagonal_algebra(3)));
    const auto rep = lattice_report(close(build_classical(8)), 50, 1);
    EXPECT_TRUE(rep.boolean_lattice);
    EXPECT_TRUE(rep.atomic);
}

TEST(BuildWeylFinite, ExchangeRelation) {
    for (int d = 2; d <= 8; ++d) {
        const auto g = build_weyl_finite(d);
        ASSERT_EQ(g.generators.size(), 2u);
        const Matrix& u = g.generators[0];
        const Matrix& v = g.generators[1];
        const Complex w = std::polar(1.0, 2 * M_PI / d);
        EXPECT_LE(operator_norm(v * u - w * u * v), 1e-12) << d;
        EXPECT_LE(operator_norm(u.adjoint() * u - identity(d)), 1e-12);
        EXPECT_LE(operator_norm(v.adjoint() * v - identity(d)), 1e-12);
        EXPECT_EQ(close(g).dim(), static_cast<std::size_t>(d * d));
    }
}

TEST(BuildWeylFinite, PauliPairAtTwo) {
    const auto g = build_weyl_finite(2);
    EXPECT_LE((g.generators[0] - diagonal({1, -1})).norm(), 1e-15);
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    EXPECT_LE((g.generators[1] - x).norm(), 1e-15);
    EXPECT_EQ(close(g).dim(), 4u);
    EXPECT_TRUE(is_factor(close(build_weyl_finite(3))));
    const auto rep = lattice_report(close(g), 100, 2);
    EXPECT_FALSE(rep.distributive);
    EXPECT_TRUE(rep.counterexample.has_value());
}

TEST(BuildSectors, Examples) {
    const auto two = close(build_sectors({{2, 1}, {2, 1}}));
    EXPECT_EQ(center(two).dim(), 2u);
    EXPECT_FALSE(is_factor(two));
    EXPECT_EQ(close(build_sectors({{1, 1}})).dim(), 1u);
    const auto doubled = close(build_sectors({{2, 2}}));
    const auto dec = block_decomposition(doubled);
    ASSERT_EQ(dec.sectors.size(), 1u);
    EXPECT_EQ(dec.sectors[0].multiplicity, 2);
    EXPECT_EQ(commutant(doubled).dim(), 4u);
}

TEST(BuildSectors, RoundTripIsMultiset) {
    const std::vector<std::vector<BlockSpec>> cases{
        {{2, 1}, {3, 1}}, {{3, 1}, {2, 1}}, {{1, 1}, {1, 1}, {1, 1}}, {{2, 2}, {1, 1}}, {{1, 3}, {2, 1}}};
    for (const auto& blocks : cases) {
        const auto dec = block_decomposition(close(build_sectors(blocks)));
        std::vector<BlockSpec> got;
        for (const auto& s : dec.sectors) got.push_back({s.block_size, s.multiplicity});
        auto want = blocks;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        EXPECT_EQ(got, want);
    }
}

TEST(ScenarioJson, ParsesAndEchoes) {
    const auto s = from_text(R"({
        "name": "demo", "kind": "sectors", "dim": 5,
        "parameters": {"blocks": [[2, 1], [3, 1]]},
        "trials": 20, "seed": 9,
        "states": [{"density": [[[0.2,0],[0,0],[0,0],[0,0],[0,0]],
                                [[0,0],[0.2,0],[0,0],[0,0],[0,0]],
                                [[0,0],[0,0],[0.2,0],[0,0],[0,0]],
                                [[0,0],[0,0],[0,0],[0.2,0],[0,0]],
                                [[0,0],[0,0],[0,0],[0,0],[0.2,0]]]}],
        "expectations": [{"check": "sector_count", "expect": 2}]
    })");
    EXPECT_EQ(s.kind, ScenarioKind::Sectors);
    EXPECT_EQ(s.trials, 20);
    EXPECT_EQ(s.seed, 9u);
    ASSERT_EQ(s.states.size(), 1u);
    const Json back = scenario_to_json(s);
    EXPECT_EQ(scenario_to_json(scenario_from_json(back)), back);
}

TEST(ScenarioJson, ValidationErrors) {
    auto kind_of = [](const char* text) {
        try {
            run_scenario(from_text(text));
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::PreconditionFailed;
    };
    EXPECT_EQ(kind_of(R"({"name": "x", "kind": "nope", "dim": 2})"), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of(R"({"name": "x", "kind": "classical", "dim": 3, "parameters": {"point_count": 4}})"),
              ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of(R"({"name": "x", "kind": "classical", "dim": 3})"), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of(R"({"kind": "classical", "dim": 3})"), ErrorKind::InvalidArgument);
}

TEST(RunScenario, ErrorsCarryScenarioName) {
    Scenario s = classical(2);
    s.name = "broken-state";
    s.states.push_back(diagonal({1.5, -0.5}));
    try {
        run_scenario(s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotPositive);
        EXPECT_NE(std::string(e.what()).find("broken-state"), std::string::npos);
    }
}

TEST(RunScenario, Classical) {
    const auto r = run_scenario(classical(4));
    EXPECT_TRUE(r.lattice.boolean_lattice);
    EXPECT_TRUE(r.lattice.distributive);
    EXPECT_EQ(r.lattice.sector_count, 4);
    ASSERT_TRUE(r.characters.has_value());
    EXPECT_EQ(r.characters->count, 4);
    EXPECT_TRUE(r.characters->separating);
    EXPECT_TRUE(r.characters->multiplicative);
    EXPECT_TRUE(r.characters->pure);
    EXPECT_TRUE(r.envelope_equals_closure);
}

TEST(RunScenario, Weyl) {
    const auto r = run_scenario(weyl(3));
    EXPECT_TRUE(r.lattice.factor);
    EXPECT_TRUE(r.lattice.atomic);
    EXPECT_FALSE(r.lattice.distributive);
    EXPECT_TRUE(r.lattice.hilbertian);
    EXPECT_EQ(r.algebra_dim, 9u);
    EXPECT_FALSE(r.characters.has_value());
    EXPECT_DOUBLE_EQ(r.lattice.orthomodular_pass_rate, 1.0);
}

TEST(RunScenario, Sectors) {
    const auto r = run_scenario(sectors({{2, 1}, {3, 1}}));
    EXPECT_EQ(r.lattice.sector_count, 2);
    EXPECT_EQ(r.mvn_dimensions.at("z0"), (std::vector<int>{2, 0}));
    EXPECT_EQ(r.mvn_dimensions.at("z1"), (std::vector<int>{0, 3}));
    EXPECT_EQ(r.mvn_dimensions.at("zero"), (std::vector<int>{0, 0}));
    EXPECT_EQ(r.mvn_dimensions.at("one"), (std::vector<int>{2, 3}));
    EXPECT_EQ(r.center_dim, 2u);
}

TEST(RunScenario, StatesAndExpectations) {
    Scenario s = sectors({{2, 1}, {1, 1}});
    Vector v = Vector::Zero(3);
    v(0) = 1;
    s.states.push_back(outer(v));
    s.states.push_back(identity(3) / 3.0);
    s.projectors.push_back({"e11", matrix_unit(3, 0, 0)});
    const auto add = [&](const char* check, Json args, Json expect) {
        s.expectations.push_back({check, std::move(args), std::move(expect)});
    };
    add("algebra_dim", Json::object(), 5);
    add("commutant_dim", Json::object(), 2);
    add("sectors", Json::object(), Json::array({Json::array({1, 1}), Json::array({2, 1})}));
    add("is_pure", {{"state", 0}}, true);
    add("is_pure", {{"state", 1}}, false);
    add("orthoadditive", {{"state", 1}}, true);
    add("logical_value", {{"state", 1}, {"projector", "z0"}}, 2.0 / 3.0);
    add("logical_value", {{"state", 0}, {"projector", "e11"}}, 1.0);
    add("mvn_dimension", {{"projector", "e11"}}, Json::array({1, 0}));
    add("hilbertian", Json::object(), false);
    add("envelope_equals_closure", Json::object(), true);
    add("distributive", Json::object(), true);  // deliberately wrong
    const auto r = run_scenario(s);
    ASSERT_EQ(r.verdicts.size(), s.expectations.size());
    for (std::size_t i = 0; i + 1 < r.verdicts.size(); ++i)
        EXPECT_TRUE(r.verdicts[i].pass) << r.verdicts[i].expectation.check << " got " << r.verdicts[i].actual;
    EXPECT_FALSE(r.verdicts.back().pass);
    EXPECT_FALSE(r.all_expectations_pass());
    EXPECT_EQ(r.states[1].orthoadditivity_trials, 60);
}

TEST(RunScenario, ClassicalQuantumDichotomy) {
    for (int n : {1, 2, 5, 8}) EXPECT_TRUE(run_scenario(classical(n, 40)).lattice.boolean_lattice) << n;
    for (int d : {2, 3, 4}) {
        const auto r = run_scenario(weyl(d, 100));
        EXPECT_FALSE(r.lattice.distributive) << d;
        EXPECT_TRUE(r.lattice.counterexample.has_value());
    }
}

TEST(RunScenario, EnvelopeEqualsClosureEverywhere) {
    std::vector<Scenario> all{classical(3, 5), weyl(4, 5), sectors({{2, 2}, {1, 1}}, 5)};
    Scenario custom;
    custom.name = "custom";
    custom.kind = ScenarioKind::Custom;
    custom.dim = 3;
    custom.parameters = {{"generators", Json::array({matrix_to_json(diagonal({1, 1, 2}))})}};
    custom.trials = 5;
    all.push_back(custom);
    for (const auto& s : all) {
        const auto r = run_scenario(s);
        EXPECT_TRUE(r.envelope_equals_closure) << s.name;
        EXPECT_LE(r.envelope_residual, 1e-8);
    }
}

TEST(RunScenario, ByteIdenticalJson) {
    Scenario s = sectors({{2, 1}, {1, 2}}, 80);
    s.states.push_back(identity(4) / 4.0);
    const std::string a = report_to_json(run_scenario(s)).dump();
    const std::string b = report_to_json(run_scenario(s)).dump();
    const std::string c = report_to_json(run_scenario(s, {}, 4)).dump();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    s.seed = 4;
    EXPECT_NE(report_to_json(run_scenario(s)).dump(), a);
}

TEST(RunScenario, ReportJsonShape) {
    const Json j = report_to_json(run_scenario(weyl(2, 20)));
    for (const char* key : {"scenario", "algebra_dim", "lattice", "sectors", "states", "expectations", "notes",
                            "characters", "envelope_equals_closure", "mvn_dimensions"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_TRUE(j["characters"].is_null());
    EXPECT_FALSE(j["lattice"]["counterexample"].is_null());
    EXPECT_EQ(j["lattice"]["counterexample"]["p"].size(), 2u);
}

}  // namespace
}  // namespace qlogic
