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

// qlogic command-line front end.
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qlogic.hpp"

namespace {

using qlogic::Json;

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct GlobalOptions {
    double tol_eq = 1e-9;
    double tol_rank = 1e-8;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    unsigned threads = 1;
    std::string json_out;
    std::string input;

    qlogic::Tolerance tolerance() const {
        qlogic::Tolerance tol;
        tol.eq_tol = tol_eq;
        tol.rank_tol = tol_rank;
        tol.validate();
        return tol;
    }
};

Json read_input(const std::string& path) {
    std::string text;
    if (path.empty() || path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path);
        if (!in) throw qlogic::Error(qlogic::ErrorKind::InvalidArgument, "cannot open '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw qlogic::Error(qlogic::ErrorKind::InvalidArgument, std::string("invalid JSON: ") + e.what());
    }
}

void write_output(const GlobalOptions& opts, const Json& j) {
    const std::string text = j.dump(2) + "\n";
    if (opts.json_out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.json_out);
    if (!out) throw qlogic::Error(qlogic::ErrorKind::InvalidArgument, "cannot write '" + opts.json_out + "'");
    out << text;
}

qlogic::AlgebraBasis closed_input(const GlobalOptions& opts, const qlogic::Tolerance& tol) {
    return qlogic::close(qlogic::generator_set_from_json(read_input(opts.input)), tol);
}

std::pair<qlogic::Projector, qlogic::Projector> projector_pair(const GlobalOptions& opts,
                                                               const qlogic::Tolerance& tol) {
    const Json j = read_input(opts.input);
    return {qlogic::Projector(qlogic::matrix_from_json(qlogic::require_field(j, "p")), tol),
            qlogic::Projector(qlogic::matrix_from_json(qlogic::require_field(j, "q")), tol)};
}

Json complex_value(std::complex<double> z, double eq_tol) {
    if (std::abs(z.imag()) <= eq_tol) return z.real();
    return Json::array({z.real(), z.imag()});
}

int run_verb(const std::string& verb, const GlobalOptions& opts) {
    const qlogic::Tolerance tol = opts.tolerance();
    const std::uint64_t seed = opts.seed.value_or(0);
    const int trials = opts.trials.value_or(100);

    if (verb == "close" || verb == "commutant" || verb == "envelope" || verb == "center") {
        const auto alg = closed_input(opts, tol);
        qlogic::AlgebraBasis result = alg;
        if (verb == "commutant") result = qlogic::commutant(alg, tol);
        if (verb == "envelope") result = qlogic::baire_envelope(alg, tol);
        if (verb == "center") result = qlogic::center(alg, tol);
        Json j = qlogic::algebra_to_json(result);
        if (verb == "envelope") {
            const double residual = qlogic::subspace_residual(result, alg);
            j["envelope_residual"] = residual;
            j["envelope_equals_closure"] = residual <= qlogic::kEnvelopeTol;
        }
        std::cerr << verb << ": algebra dimension " << result.dim() << " in M_" << result.ambient_dim() << "\n";
        write_output(opts, j);
        return 0;
    }
    if (verb == "sectors") {
        const auto alg = closed_input(opts, tol);
        const auto dec = qlogic::block_decomposition(alg, tol);
        std::cerr << "sectors: " << dec.sectors.size() << " sector(s)\n";
        for (const auto& s : dec.sectors)
            std::cerr << "  M_" << s.block_size << " (x) 1_" << s.multiplicity << "\n";
        write_output(opts, {{"sectors", qlogic::sectors_to_json(dec)},
                            {"is_factor", dec.sectors.size() == 1},
                            {"center_dim", qlogic::center(alg, tol).dim()}});
        return 0;
    }
    if (verb == "meet" || verb == "join") {
        const auto [p, q] = projector_pair(opts, tol);
        const auto result = verb == "meet" ? qlogic::meet(p, q, tol) : qlogic::join(p, q, tol);
        std::cerr << verb << ": rank " << result.rank() << "\n";
        write_output(opts, {{"result", qlogic::matrix_to_json(result.matrix())}, {"rank", result.rank()}});
        return 0;
    }
    if (verb == "report") {
        const auto alg = closed_input(opts, tol);
        const auto report = qlogic::lattice_report(alg, trials, seed, tol, opts.threads);
        std::cerr << "report: orthomodular " << report.orthomodular_pass_rate << ", distributive "
                  << (report.distributive ? "yes" : "no") << ", sectors " << report.sector_count << "\n";
        write_output(opts, qlogic::lattice_report_to_json(report));
        return 0;
    }
    if (verb == "run") {
        qlogic::Scenario scenario = qlogic::scenario_from_json(read_input(opts.input));
        if (opts.seed) scenario.seed = *opts.seed;
        if (opts.trials) scenario.trials = *opts.trials;
        const auto report = qlogic::run_scenario(scenario, tol, opts.threads);
        std::cerr << "run " << scenario.name << ": algebra dim " << report.algebra_dim << ", sectors "
                  << report.lattice.sector_count << ", distributive " << (report.lattice.distributive ? "yes" : "no")
                  << "\n";
        for (const auto& v : report.verdicts)
            std::cerr << "  [" << (v.pass ? "PASS" : "FAIL") << "] " << v.expectation.check << "\n";
        write_output(opts, qlogic::report_to_json(report));
        return report.all_expectations_pass() ? 0 : kExitValidation;
    }
    if (verb == "characters") {
        const auto alg = closed_input(opts, tol);
        const auto chars = qlogic::dirac_characters(alg, tol);
        Json list = Json::array();
        for (const auto& c : chars) list.push_back(qlogic::state_to_json(c));
        std::cerr << "characters: " << chars.size() << "\n";
        write_output(opts, {{"characters", list}, {"separating", qlogic::is_separating(chars, alg, tol)}});
        return 0;
    }
    if (verb == "eval-state") {
        const Json j = read_input(opts.input);
        const auto state = qlogic::state_from_json(qlogic::require_field(j, "state"), tol);
        Json values = Json::object();
        for (const auto& o : qlogic::require_field(j, "observables")) {
            const auto id = qlogic::require_field(o, "id").get<std::string>();
            values[id] = complex_value(qlogic::evaluate(state, qlogic::matrix_from_json(qlogic::require_field(o, "matrix"))),
                                       tol.eq_tol);
        }
        write_output(opts, {{"values", values}});
        return 0;
    }
    throw qlogic::Error(qlogic::ErrorKind::InvalidArgument, "unknown verb '" + verb + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qlogic: projector lattices and states of finite-dimensional operator algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opts;
    app.add_option("--tol-eq", opts.tol_eq, "Entrywise equality tolerance");
    app.add_option("--tol-rank", opts.tol_rank, "Relative rank cutoff");
    app.add_option("--seed", opts.seed, "Sampling seed");
    app.add_option("--trials", opts.trials, "Number of sampled trials");
    app.add_option("--threads", opts.threads, "Worker threads for sampling sweeps");
    app.add_option("--json-out", opts.json_out, "Write the JSON result here instead of stdout");
    app.add_option("--input", opts.input, "Input JSON file ('-' for stdin)");

    const std::pair<const char*, const char*> verbs[] = {
        {"close", "Close generators into a unital *-algebra"},
        {"commutant", "Commutant of the generated algebra"},
        {"envelope", "Bicommutant (Baire envelope) of the generated algebra"},
        {"center", "Center of the generated algebra"},
        {"sectors", "Superselection sector decomposition"},
        {"meet", "Meet of two projectors {p, q}"},
        {"join", "Join of two projectors {p, q}"},
        {"report", "Lattice report for the generated algebra"},
        {"run", "Run a scenario file"},
        {"characters", "Characters (point states) of a commutative algebra"},
        {"eval-state", "Evaluate a state on observables"},
    };
    for (const auto& [name, help] : verbs) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        return run_verb(verb, opts);
    } catch (const qlogic::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qlogic::is_numerical_failure(e.kind()) ? kExitNumerical : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
