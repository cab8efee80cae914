// Copyright 2026 The anyonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// anyonsim: command-line front end.
//
//   anyonsim paper [--no-braid]
//   anyonsim scenario <file> [--emit-trace <file>]
//   anyonsim torus --L <n> [--sweep-loops]
//   anyonsim fringe
//   anyonsim validate <file>
//
// Exit status: 0 when every check passes, 1 on a failed check, 2 on usage or parse errors.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "anyon/experiment.h"
#include "anyon/protocol.h"
#include "anyon/scenario.h"

namespace fs = std::filesystem;
using namespace anyon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
    std::string backend = "both";
    uint64_t seed = 0;
    std::string out = "./out";
    std::string format = "csv";
    bool backend_given = false;
    bool seed_given = false;
};

void write_file(const fs::path &path, const std::string &content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
}

std::string read_file(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int fail(const std::string &what) {
    std::cerr << "FAIL: " << what << "\n";
    return kExitCheckFailed;
}

int run_paper(const GlobalFlags &g, bool no_braid) {
    ReproduceOptions opt;
    opt.backends = parse_backend_list(g.backend);
    opt.seed = g.seed;
    opt.braid = !no_braid;
    opt.abort_on_failure = false;
    auto report = reproduce_paper(opt);

    fs::path out(g.out);
    if (g.format == "csv") {
        for (const auto &[name, content] : report.csv_files()) write_file(out / name, content);
    }
    write_file(out / "report.json", report.to_json());
    for (const auto &c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")")
                  << "\n";
    }
    if (!report.all_passed()) return fail(report.first_failure());
    return kExitOk;
}

int run_scenario_cmd(const GlobalFlags &g, const std::string &file, const std::string &emit_trace) {
    Scenario sc;
    try {
        sc = parse_scenario(read_file(file));
    } catch (const ScenarioError &ex) {
        std::cerr << file << ": " << ex.what() << "\n";
        return kExitUsage;
    }
    auto backends = g.backend_given || sc.backends.empty() ? parse_backend_list(g.backend) : sc.backends;
    uint64_t seed = g.seed_given || !sc.seed ? g.seed : *sc.seed;
    auto result = run_scenario(sc, backends, seed);

    if (g.format == "json") {
        std::cout << result.to_json();
    } else {
        std::cout << result.text();
    }
    for (const auto &path : result.reports) write_file(fs::path(g.out) / path, result.to_json());
    if (!emit_trace.empty()) write_file(emit_trace, trace_to_scenario(sc, result.runs.front()));
    if (!result.all_passed()) return fail(result.first_failure());
    return kExitOk;
}

int run_torus(const GlobalFlags &g, std::size_t L, bool sweep) {
    if (L < 2) {
        std::cerr << "torus needs --L >= 2\n";
        return kExitUsage;
    }
    auto lat = Lattice::torus(L);
    std::vector<CheckResult> checks;
    std::vector<Backend> backends;
    for (auto b : parse_backend_list(g.backend)) {
        if (b == Backend::StateVector && lat.num_qubits() > StateVector::kMaxQubits) {
            std::cout << "skip statevec: " << lat.num_qubits() << " qubits exceed " << StateVector::kMaxQubits << "\n";
            continue;
        }
        backends.push_back(b);
    }

    for (auto b : backends) {
        const std::string tag = "[" + to_string(b) + "] ";
        auto ground = ground_state(lat, b, {}, g.seed);
        bool vacuum = verify_fusion_vacuum(ground, lat);
        // One e-pair on h(0,0) and a 1 x (L-1) dual loop enclosing one of its ends.
        auto excited = ground;
        apply_anyon_op(excited, lat, AnyonOp::create_e_pair(lat.horizontal_edge(0, 0)));
        auto loop = loop_operator(lat, dual_loop_around_vertices(lat, 0, 1, 1, L - 1), Species::M);
        auto cls = classify_loop(lat, excited, loop);
        auto syn = syndrome(excited, lat);
        checks.push_back({tag + "ground state has empty syndrome", vacuum, ""});
        checks.push_back({tag + "2L-edge loop around one e gives -1", cls == LoopClass::Charged,
                          "syndrome " + syn.str()});
        if (!sweep && lat.num_qubits() <= 2 * 10 * 10) {
            auto res = interferometric_braiding(lat, b, torus_braiding_setup(lat, 0, 0, 1, 1), g.seed);
            checks.push_back({tag + "interferometric phase pi", angular_distance(res.phase_difference, std::numbers::pi) < 1e-9,
                              format_number(res.phase_difference)});
        }
    }

    std::string csv = "probe,enclosed,passed,total\n";
    if (sweep) {
        auto stats = torus_statistics_sweep(L, g.seed);
        std::cout << stats.matrix();
        for (const auto &f : stats.failures) std::cout << "  " << f << "\n";
        checks.push_back({"loop statistics sweep", stats.all_passed(), std::to_string(stats.total()) + " configurations"});
        for (std::size_t p = 0; p < stats.cells.size(); p++) {
            for (std::size_t k = 0; k < 3; k++) {
                const auto &c = stats.cells[p][k];
                if (c.total == 0) continue;
                csv += std::string(StatisticsSweep::kProbeNames[p]) + "," + std::to_string(k) + "," +
                       std::to_string(c.passed) + "," + std::to_string(c.total) + "\n";
            }
        }
        for (auto b : backends) {
            auto inter = torus_interferometry_sweep(L, b, g.seed);
            for (const auto &f : inter.failures) std::cout << "  " << f << "\n";
            checks.push_back({"[" + to_string(b) + "] interferometric vs direct", inter.passed == inter.total,
                              std::to_string(inter.passed) + "/" + std::to_string(inter.total)});
            csv += "interferometry-" + to_string(b) + ",all," + std::to_string(inter.passed) + "," +
                   std::to_string(inter.total) + "\n";
        }
        write_file(fs::path(g.out) / ("torus_L" + std::to_string(L) + "." + g.format),
                   g.format == "csv" ? csv : nlohmann::ordered_json{{"L", L}, {"matrix", stats.matrix()}}.dump(2) + "\n");
    }

    bool ok = true;
    for (const auto &c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")")
                  << "\n";
        if (!c.passed && ok) {
            ok = false;
            fail(c.name);
        }
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int run_fringe(const GlobalFlags &g) {
    auto lat = Lattice::six_qubit();
    bool ok = true;
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    std::string csv = "backend,alpha_radians,value_pre,value_post\n";
    for (auto b : parse_backend_list(g.backend)) {
        auto res = interferometric_braiding(lat, b, six_qubit_braiding_setup(), g.seed);
        std::cout << "[" << to_string(b) << "] alpha pre post\n";
        for (std::size_t k = 0; k < res.pre.alphas.size(); k++) {
            std::string row = format_number(res.pre.alphas[k]) + "," + format_number(res.pre.values[k]) + "," +
                              format_number(res.post.values[k]);
            std::cout << "  " << row << "\n";
            csv += to_string(b) + "," + row + "\n";
        }
        std::cout << "  pre  phase=" << format_number(res.pre.fit.phase)
                  << " visibility=" << format_number(res.pre.fit.visibility) << "\n"
                  << "  post phase=" << format_number(res.post.fit.phase)
                  << " visibility=" << format_number(res.post.fit.visibility) << "\n"
                  << "  phase difference " << format_number(res.phase_difference) << "\n";
        j.push_back({{"backend", to_string(b)},
                     {"alphas", res.pre.alphas},
                     {"pre", res.pre.values},
                     {"post", res.post.values},
                     {"phase_difference", res.phase_difference}});
        if (angular_distance(res.phase_difference, std::numbers::pi) >= 1e-9) {
            ok = false;
            fail("[" + to_string(b) + "] phase difference is not pi");
        }
    }
    write_file(fs::path(g.out) / ("fringe." + g.format), g.format == "csv" ? csv : j.dump(2) + "\n");
    return ok ? kExitOk : kExitCheckFailed;
}

int run_validate(const std::string &file) {
    try {
        auto sc = parse_scenario(read_file(file));
        std::cout << "ok: " << sc.steps.size() << " steps\n";
        return kExitOk;
    } catch (const ScenarioError &ex) {
        std::cerr << file << ": " << ex.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Kitaev lattice anyon simulator"};
    app.require_subcommand(1);
    GlobalFlags g;
    auto *backend_opt = app.add_option("--backend", g.backend, "tableau, statevec or both")
                            ->check(CLI::IsMember({"tableau", "statevec", "both"}))
                            ->capture_default_str();
    auto *seed_opt = app.add_option("--seed", g.seed, "seed for every random engine")->capture_default_str();
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_option("--format", g.format, "file format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    bool no_braid = false;
    auto *paper = app.add_subcommand("paper", "reproduce the three experimental steps");
    paper->add_flag("--no-braid", no_braid, "omit the braid loop (control run)");

    std::string scenario_file, emit_trace;
    auto *scenario = app.add_subcommand("scenario", "run a scenario script");
    scenario->add_option("file", scenario_file)->required();
    scenario->add_option("--emit-trace", emit_trace, "write the executed ops as a scenario");

    std::size_t L = 0;
    bool sweep = false;
    auto *torus = app.add_subcommand("torus", "braiding checks on an L x L torus");
    torus->add_option("--L", L, "side length")->required();
    torus->add_flag("--sweep-loops", sweep, "classify every contractible rectangle loop");

    auto *fringe = app.add_subcommand("fringe", "six-qubit fringe scans before and after the braid");

    std::string validate_file;
    auto *validate = app.add_subcommand("validate", "parse a scenario script");
    validate->add_option("file", validate_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }
    g.backend_given = backend_opt->count() > 0;
    g.seed_given = seed_opt->count() > 0;

    try {
        if (*paper) return run_paper(g, no_braid);
        if (*scenario) return run_scenario_cmd(g, scenario_file, emit_trace);
        if (*torus) return run_torus(g, L, sweep);
        if (*fringe) return run_fringe(g);
        if (*validate) return run_validate(validate_file);
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
