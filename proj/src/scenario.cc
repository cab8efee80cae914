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

#include "anyon/scenario.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace anyon {

namespace {

std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> words;
    std::istringstream is{std::string(line)};
    std::string w;
    while (is >> w) words.push_back(w);
    return words;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::size_t parse_index(std::size_t line, std::string_view s, const char *what) {
    auto v = parse_number<std::size_t>(s);
    if (!v) throw ScenarioError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
    return *v;
}

/// Value of `key=<value>`, or nullopt when the word has another key.
std::optional<std::string_view> keyed(std::string_view word, std::string_view key) {
    if (word.size() > key.size() && word.substr(0, key.size()) == key && word[key.size()] == '=') {
        return word.substr(key.size() + 1);
    }
    return std::nullopt;
}

ScenarioStep make_step(ScenarioStep::Kind kind, std::size_t line) {
    ScenarioStep s;
    s.kind = kind;
    s.line = line;
    return s;
}

std::string join(const std::vector<std::size_t> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); i++) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

std::vector<Backend> parse_backend_list(std::string_view name) {
    if (name == "both") return {Backend::Tableau, Backend::StateVector};
    return {parse_backend(name)};
}

std::vector<double> fringe_grid(std::size_t steps) {
    std::vector<double> g(steps);
    for (std::size_t k = 0; k < steps; k++) {
        g[k] = static_cast<double>(k) * (2 * std::numbers::pi / static_cast<double>(steps));
    }
    return g;
}

std::string ScenarioStep::str() const {
    switch (kind) {
        case Kind::Op:
            return op->str();
        case Kind::Expect:
            return "expect " + label;
        case Kind::Syndrome:
            return "syndrome";
        case Kind::Fringe:
            return "fringe qubit=" + std::to_string(qubit) + " steps=" + std::to_string(steps);
        case Kind::Report:
            return "report " + path;
    }
    return {};
}

Lattice Scenario::lattice() const {
    return model == Lattice::Kind::Torus ? Lattice::torus(L) : Lattice::six_qubit();
}

std::string Scenario::str() const {
    std::string out = model == Lattice::Kind::Torus ? "model torus L=" + std::to_string(L) + "\n" : "model six_qubit\n";
    if (backends.size() == 2) {
        out += "backend both\n";
    } else if (backends.size() == 1) {
        out += "backend " + to_string(backends[0]) + "\n";
    }
    if (seed) out += "seed " + std::to_string(*seed) + "\n";
    for (const auto &s : steps) out += s.str() + "\n";
    return out;
}

Scenario parse_scenario(std::string_view text) {
    Scenario sc;
    std::optional<Lattice> lat;
    bool model_seen = false;
    std::size_t backend_line = 0;
    auto lattice = [&]() -> const Lattice & {
        if (!lat) lat = sc.lattice();
        return *lat;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto w = split_words(line);
        if (w.empty()) continue;
        const std::string &d = w[0];
        auto want_args = [&](std::size_t n) {
            if (w.size() != n + 1) {
                throw ScenarioError(line_no, "'" + d + "' takes " + std::to_string(n) + " argument(s)");
            }
        };

        if (d == "model") {
            if (model_seen) throw ScenarioError(line_no, "model declared twice");
            if (!sc.steps.empty()) throw ScenarioError(line_no, "model must precede every step");
            model_seen = true;
            if (w.size() == 2 && w[1] == "six_qubit") {
                sc.model = Lattice::Kind::SixQubit;
            } else if (w.size() == 3 && w[1] == "torus" && keyed(w[2], "L")) {
                sc.model = Lattice::Kind::Torus;
                sc.L = parse_index(line_no, *keyed(w[2], "L"), "torus size");
                if (sc.L < 2) throw ScenarioError(line_no, "torus needs L >= 2");
            } else {
                throw ScenarioError(line_no, "expected 'model six_qubit' or 'model torus L=<n>'");
            }
        } else if (d == "backend") {
            want_args(1);
            try {
                sc.backends = parse_backend_list(w[1]);
            } catch (const std::invalid_argument &ex) {
                throw ScenarioError(line_no, ex.what());
            }
            backend_line = line_no;
        } else if (d == "seed") {
            want_args(1);
            auto v = parse_number<uint64_t>(w[1]);
            if (!v) throw ScenarioError(line_no, "bad seed '" + w[1] + "'");
            sc.seed = *v;
        } else if (d == "op") {
            want_args(2);
            std::size_t q = parse_index(line_no, w[2], "edge");
            if (q < 1 || q > lattice().num_qubits()) {
                throw ScenarioError(line_no, "edge " + w[2] + " out of range 1.." +
                                                 std::to_string(lattice().num_qubits()));
            }
            auto s = make_step(ScenarioStep::Kind::Op, line_no);
            if (w[1] == "z") {
                s.op = AnyonOp::create_e_pair(q);
            } else if (w[1] == "x") {
                s.op = AnyonOp::create_m_pair(q);
            } else if (w[1] == "sqrtz") {
                s.op = AnyonOp::sqrt_z(q);
            } else if (w[1] == "h") {
                s.op = AnyonOp::raw(CliffordGate::h(q));
            } else {
                throw ScenarioError(line_no, "unknown op '" + w[1] + "'");
            }
            sc.steps.push_back(std::move(s));
        } else if (d == "move") {
            want_args(2);
            if (w[1] != "e" && w[1] != "m") throw ScenarioError(line_no, "move species must be e or m");
            Species species = w[1] == "e" ? Species::E : Species::M;
            std::vector<std::size_t> path;
            std::string_view rest = w[2];
            while (true) {
                auto comma = rest.find(',');
                std::size_t e = parse_index(line_no, rest.substr(0, comma), "edge");
                if (e < 1 || e > lattice().num_qubits()) {
                    throw ScenarioError(line_no, "edge " + std::to_string(e) + " out of range 1.." +
                                                     std::to_string(lattice().num_qubits()));
                }
                path.push_back(e);
                if (comma == std::string_view::npos) break;
                rest = rest.substr(comma + 1);
            }
            bool connected = false;
            const auto &first = lattice().edge(path.front());
            auto starts = species == Species::E ? first.vertices : first.faces;
            if (starts.size() == 1) starts.push_back(0);
            for (auto st : starts) connected = connected || !walk_path(lattice(), species, st, path).empty();
            if (!connected) throw ScenarioError(line_no, "move path " + join(path) + " is not connected");
            auto s = make_step(ScenarioStep::Kind::Op, line_no);
            s.op = species == Species::E ? AnyonOp::move_e(std::move(path)) : AnyonOp::move_m(std::move(path));
            sc.steps.push_back(std::move(s));
        } else if (d == "expect") {
            want_args(1);
            auto s = make_step(ScenarioStep::Kind::Expect, line_no);
            s.label = w[1];
            const std::string &a = w[1];
            try {
                if ((a[0] == 'A' || a[0] == 'B') && a.size() > 1 && parse_number<std::size_t>(a.substr(1))) {
                    std::size_t id = *parse_number<std::size_t>(a.substr(1));
                    s.observable = a[0] == 'A' ? lattice().vertex_operator(id) : lattice().face_operator(id);
                } else {
                    s.observable = PauliString::parse(a, lattice().num_qubits());
                }
            } catch (const std::exception &ex) {
                throw ScenarioError(line_no, "bad observable '" + a + "': " + ex.what());
            }
            sc.steps.push_back(std::move(s));
        } else if (d == "syndrome") {
            want_args(0);
            sc.steps.push_back(make_step(ScenarioStep::Kind::Syndrome, line_no));
        } else if (d == "fringe") {
            auto s = make_step(ScenarioStep::Kind::Fringe, line_no);
            s.steps = 8;
            for (std::size_t i = 1; i < w.size(); i++) {
                if (auto q = keyed(w[i], "qubit")) {
                    s.qubit = parse_index(line_no, *q, "qubit");
                } else if (auto k = keyed(w[i], "steps")) {
                    s.steps = parse_index(line_no, *k, "step count");
                } else {
                    throw ScenarioError(line_no, "unknown fringe argument '" + w[i] + "'");
                }
            }
            if (s.qubit < 1 || s.qubit > lattice().num_qubits()) {
                throw ScenarioError(line_no, "fringe needs qubit=<q> in range 1.." +
                                                 std::to_string(lattice().num_qubits()));
            }
            if (s.steps < 3) throw ScenarioError(line_no, "fringe needs steps >= 3");
            sc.steps.push_back(std::move(s));
        } else if (d == "report") {
            want_args(1);
            auto s = make_step(ScenarioStep::Kind::Report, line_no);
            s.path = w[1];
            sc.steps.push_back(std::move(s));
        } else {
            throw ScenarioError(line_no, "unknown directive '" + d + "'");
        }
    }

    bool wants_dense = std::find(sc.backends.begin(), sc.backends.end(), Backend::StateVector) != sc.backends.end();
    if (backend_line && wants_dense && lattice().num_qubits() > StateVector::kMaxQubits) {
        throw ScenarioError(backend_line, "statevec backend supports at most " +
                                              std::to_string(StateVector::kMaxQubits) + " qubits, model has " +
                                              std::to_string(lattice().num_qubits()));
    }
    return sc;
}

namespace {

std::string expectation_text(double v) {
    double r = std::round(v);
    return format_number(std::abs(v - r) < 1e-9 ? r : v);
}

ScenarioRun execute(const Scenario &sc, const Lattice &lat, Backend backend, uint64_t seed) {
    ScenarioRun run;
    run.backend = backend;
    std::size_t current_line = 0;
    try {
        QuantumState state = ground_state(lat, backend, {}, seed);
        for (const auto &step : sc.steps) {
            current_line = step.line;
            switch (step.kind) {
                case ScenarioStep::Kind::Op:
                    run.trace.apply(state, lat, *step.op);
                    run.log.push_back(step.str() + " -> " + run.trace.entries().back().syndrome);
                    break;
                case ScenarioStep::Kind::Expect: {
                    double v = state.expectation(*step.observable);
                    run.expectations.push_back(v);
                    run.log.push_back(step.str() + " = " + expectation_text(v));
                    break;
                }
                case ScenarioStep::Kind::Syndrome:
                    run.log.push_back("syndrome " + syndrome_text(state, lat));
                    break;
                case ScenarioStep::Kind::Fringe: {
                    auto setting = fringe_setting(lat, step.qubit, lat.edge(step.qubit).vertices.front());
                    auto scan = fringe_scan(state, setting, fringe_grid(step.steps));
                    std::string line = step.str() + " phase=" + format_number(scan.fit.phase) +
                                       " visibility=" + format_number(scan.fit.visibility) +
                                       " residual=" + format_number(scan.fit.residual);
                    if (!run.fringes.empty()) {
                        double d = wrap_angle(scan.fit.phase - run.fringes.back().fit.phase);
                        if (d < -std::numbers::pi / 2) d += 2 * std::numbers::pi;
                        run.phase_differences.push_back(d);
                        line += " phase_difference=" + format_number(d);
                    }
                    run.fringes.push_back(std::move(scan));
                    run.log.push_back(line);
                    break;
                }
                case ScenarioStep::Kind::Report:
                    break;
            }
        }
        current_line = 0;
        run.final_syndrome = syndrome_text(state, lat);
        if (lat.kind() == Lattice::Kind::SixQubit) {
            run.final_table = expectation_table(state, kitaev_hamiltonian(lat));
        }
    } catch (const std::exception &ex) {
        run.error = (current_line ? "line " + std::to_string(current_line) + ": " : std::string()) + ex.what();
    }
    return run;
}

bool close_all(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); i++) {
        if (std::abs(a[i] - b[i]) >= 1e-9) return false;
    }
    return true;
}

}  // namespace

ScenarioResult run_scenario(const Scenario &scenario, const std::vector<Backend> &backends, uint64_t seed) {
    if (backends.empty()) throw std::invalid_argument("no backend selected");
    const Lattice lat = scenario.lattice();
    ScenarioResult result;
    std::vector<std::future<ScenarioRun>> futures;
    for (auto b : backends) {
        futures.push_back(std::async(std::launch::async, execute, std::cref(scenario), std::cref(lat), b, seed));
    }
    for (auto &f : futures) result.runs.push_back(f.get());

    for (const auto &run : result.runs) {
        result.checks.push_back({"[" + to_string(run.backend) + "] execution", run.error.empty(), run.error});
    }
    const auto &first = result.runs.front();
    for (std::size_t i = 1; i < result.runs.size(); i++) {
        const auto &other = result.runs[i];
        bool same = first.final_syndrome == other.final_syndrome && first.final_table == other.final_table &&
                    close_all(first.expectations, other.expectations) &&
                    first.fringes.size() == other.fringes.size();
        for (std::size_t k = 0; same && k < first.fringes.size(); k++) {
            same = close_all(first.fringes[k].values, other.fringes[k].values);
        }
        result.checks.push_back(
            {"backend agreement " + to_string(first.backend) + " vs " + to_string(other.backend), same, ""});
    }
    for (const auto &s : scenario.steps) {
        if (s.kind == ScenarioStep::Kind::Report) result.reports.push_back(s.path);
    }
    return result;
}

bool ScenarioResult::all_passed() const { return first_failure().empty(); }

std::string ScenarioResult::first_failure() const {
    for (const auto &c : checks) {
        if (!c.passed) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
    }
    return {};
}

std::string ScenarioResult::text() const {
    std::string out;
    for (const auto &run : runs) {
        out += "[" + to_string(run.backend) + "]\n";
        for (const auto &l : run.log) out += "  " + l + "\n";
        out += "  final syndrome " + run.final_syndrome + "\n";
        if (run.final_table) out += "  final table " + run.final_table->str() + "\n";
        if (!run.error.empty()) out += "  error " + run.error + "\n";
    }
    for (const auto &c : checks) out += (c.passed ? "PASS " : "FAIL ") + c.name + "\n";
    return out;
}

std::string ScenarioResult::to_json() const {
    nlohmann::ordered_json j;
    auto &runs_json = j["runs"] = nlohmann::ordered_json::array();
    for (const auto &run : runs) {
        nlohmann::ordered_json rj;
        rj["backend"] = to_string(run.backend);
        rj["log"] = run.log;
        rj["trace"] = run.trace.str();
        rj["final_syndrome"] = run.final_syndrome;
        if (run.final_table) {
            auto &t = rj["final_table"];
            for (std::size_t i = 0; i < 6; i++) t[ExpectationTable::kLabels[i]] = run.final_table->values[i];
        }
        auto &fr = rj["fringes"] = nlohmann::ordered_json::array();
        for (const auto &s : run.fringes) {
            fr.push_back({{"alphas", s.alphas},
                          {"values", s.values},
                          {"fitted_phase", s.fit.phase},
                          {"visibility", s.fit.visibility},
                          {"fit_residual", s.fit.residual}});
        }
        rj["phase_differences"] = run.phase_differences;
        if (!run.error.empty()) rj["error"] = run.error;
        runs_json.push_back(std::move(rj));
    }
    auto &checks_json = j["checks"] = nlohmann::ordered_json::array();
    for (const auto &c : checks) {
        checks_json.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    j["all_passed"] = all_passed();
    return j.dump(2) + "\n";
}

std::string trace_to_scenario(const Scenario &scenario, const ScenarioRun &run) {
    Scenario header = scenario;
    header.steps.clear();
    return header.str() + run.trace.to_scenario();
}

}  // namespace anyon
