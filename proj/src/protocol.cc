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

#include "anyon/protocol.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace anyon {

std::string to_string(Species s) { return s == Species::E ? "e" : "m"; }

AnyonOp AnyonOp::create_e_pair(std::size_t edge) { return {Kind::CreateEPair, {edge}, std::nullopt}; }
AnyonOp AnyonOp::create_m_pair(std::size_t edge) { return {Kind::CreateMPair, {edge}, std::nullopt}; }
AnyonOp AnyonOp::move_e(std::vector<std::size_t> path) { return {Kind::MoveE, std::move(path), std::nullopt}; }
AnyonOp AnyonOp::move_m(std::vector<std::size_t> path) { return {Kind::MoveM, std::move(path), std::nullopt}; }
AnyonOp AnyonOp::sqrt_z(std::size_t qubit) { return {Kind::SqrtZ, {qubit}, std::nullopt}; }
AnyonOp AnyonOp::raw(const CliffordGate &gate) { return {Kind::Raw, {}, gate}; }

std::vector<CliffordGate> AnyonOp::gates() const {
    std::vector<CliffordGate> out;
    switch (kind) {
        case Kind::CreateEPair:
        case Kind::MoveE:
            for (auto e : edges) out.push_back(CliffordGate::z(e));
            break;
        case Kind::CreateMPair:
        case Kind::MoveM:
            for (auto e : edges) out.push_back(CliffordGate::x(e));
            break;
        case Kind::SqrtZ:
            out.push_back(CliffordGate::sqrt_z(edges.at(0)));
            break;
        case Kind::Raw:
            out.push_back(gate.value());
            break;
    }
    return out;
}

namespace {

std::string join_edges(const std::vector<std::size_t> &edges) {
    std::string s;
    for (std::size_t i = 0; i < edges.size(); i++) {
        s += (i ? "," : "") + std::to_string(edges[i]);
    }
    return s;
}

}  // namespace

std::string AnyonOp::str() const {
    switch (kind) {
        case Kind::CreateEPair:
            return "op z " + std::to_string(edges.at(0));
        case Kind::CreateMPair:
            return "op x " + std::to_string(edges.at(0));
        case Kind::MoveE:
            return "move e " + join_edges(edges);
        case Kind::MoveM:
            return "move m " + join_edges(edges);
        case Kind::SqrtZ:
            return "op sqrtz " + std::to_string(edges.at(0));
        case Kind::Raw:
            break;
    }
    const auto &g = gate.value();
    switch (g.kind) {
        case GateKind::X:
            return "op x " + std::to_string(g.target);
        case GateKind::Z:
            return "op z " + std::to_string(g.target);
        case GateKind::Hadamard:
            return "op h " + std::to_string(g.target);
        case GateKind::SqrtZ:
            return "op sqrtz " + std::to_string(g.target);
        default:
            throw std::invalid_argument("gate " + g.str() + " has no scenario directive");
    }
}

namespace {

std::array<std::size_t, 2> edge_sites(const Lattice &lat, Species s, std::size_t edge) {
    const auto &e = lat.edge(edge);
    const auto &ids = s == Species::E ? e.vertices : e.faces;
    if (ids.size() == 2) return {ids[0], ids[1]};
    if (ids.size() == 1) return {ids[0], 0};
    throw std::logic_error("edge " + std::to_string(edge) + " touches no site");
}

bool near(double a, double b) { return std::abs(a - b) < 1e-9; }

}  // namespace

PauliString site_operator(const Lattice &lat, Species s, std::size_t site) {
    if (site == 0) throw std::invalid_argument("the boundary has no stabilizer");
    return s == Species::E ? lat.vertex_operator(site) : lat.face_operator(site);
}

std::vector<std::size_t> walk_path(const Lattice &lat, Species s, std::size_t start,
                                   const std::vector<std::size_t> &path) {
    std::vector<std::size_t> sites{start};
    std::size_t cur = start;
    for (auto e : path) {
        auto ends = edge_sites(lat, s, e);
        if (ends[0] == cur) {
            cur = ends[1];
        } else if (ends[1] == cur) {
            cur = ends[0];
        } else {
            return {};
        }
        sites.push_back(cur);
    }
    return sites;
}

void apply_anyon_op(QuantumState &state, const Lattice &lat, const AnyonOp &op, bool check_excited) {
    if (state.num_qubits() != lat.num_qubits()) {
        throw std::invalid_argument("state and lattice sizes differ");
    }
    if (op.kind == AnyonOp::Kind::Raw) {
        op.gate.value().validate(lat.num_qubits());
    } else {
        if (op.edges.empty()) throw std::invalid_argument("op has no edges");
        for (auto e : op.edges) lat.check_edge(e);
    }
    if (op.kind == AnyonOp::Kind::MoveE || op.kind == AnyonOp::Kind::MoveM) {
        Species s = op.kind == AnyonOp::Kind::MoveE ? Species::E : Species::M;
        std::vector<std::size_t> starts;
        for (auto cand : edge_sites(lat, s, op.edges.front())) {
            if (!walk_path(lat, s, cand, op.edges).empty()) starts.push_back(cand);
        }
        if (starts.empty()) {
            throw std::invalid_argument("move " + to_string(s) + " path " + join_edges(op.edges) +
                                        " is not connected");
        }
        if (check_excited) {
            bool found = false;
            for (auto site : starts) {
                if (site == 0) continue;
                double v = state.expectation(site_operator(lat, s, site));
                if (near(v, -1)) {
                    found = true;
                    break;
                }
                if (!near(v, 1)) {
                    throw std::invalid_argument("move " + to_string(s) + ": site " + std::to_string(site) +
                                                " is not in a definite state");
                }
            }
            if (!found) {
                throw std::invalid_argument("move " + to_string(s) + " path " + join_edges(op.edges) +
                                            " does not start at an excited site");
            }
        }
    }
    for (const auto &g : op.gates()) state.apply(g);
}

PauliString loop_operator(const Lattice &lat, const std::vector<std::size_t> &edge_loop, Species s) {
    PauliString out(lat.num_qubits());
    if (edge_loop.empty()) return out;
    for (auto e : edge_loop) lat.check_edge(e);
    bool closed = false;
    for (auto start : edge_sites(lat, s, edge_loop.front())) {
        auto sites = walk_path(lat, s, start, edge_loop);
        if (!sites.empty() && sites.back() == start) {
            closed = true;
            break;
        }
    }
    if (!closed) {
        throw std::invalid_argument(to_string(s) + " loop " + join_edges(edge_loop) + " is not closed");
    }
    PauliLetter letter = s == Species::E ? PauliLetter::Z : PauliLetter::X;
    for (auto e : edge_loop) {
        out *= PauliString::all_of(lat.num_qubits(), letter, std::vector<std::size_t>{e});
    }
    return out;
}

LoopClass classify_loop(const Lattice &lat, const QuantumState &state, const PauliString &loop_op) {
    if (loop_op.num_qubits() != lat.num_qubits()) {
        throw std::invalid_argument("loop operator size does not match the lattice");
    }
    for (std::size_t v = 1; v <= lat.num_vertices(); v++) {
        if (!commutes(loop_op, lat.vertex_operator(v))) {
            throw std::invalid_argument("loop " + loop_op.str() + " anticommutes with A" + std::to_string(v));
        }
    }
    for (std::size_t f = 1; f <= lat.num_faces(); f++) {
        if (!commutes(loop_op, lat.face_operator(f))) {
            throw std::invalid_argument("loop " + loop_op.str() + " anticommutes with B" + std::to_string(f));
        }
    }
    double v = state.expectation(loop_op);
    if (near(v, 1)) return LoopClass::Trivial;
    if (near(v, -1)) return LoopClass::Charged;
    throw std::invalid_argument("state is not an eigenstate of loop " + loop_op.str() + " (expectation " +
                                std::to_string(v) + ")");
}

namespace {

void require_torus(const Lattice &lat) {
    if (lat.kind() != Lattice::Kind::Torus) throw std::invalid_argument("operation needs a torus");
}

void check_rectangle(const Lattice &lat, std::size_t rows, std::size_t cols) {
    require_torus(lat);
    if (rows < 1 || cols < 1 || rows >= lat.size() || cols >= lat.size()) {
        throw std::invalid_argument("rectangle " + std::to_string(rows) + "x" + std::to_string(cols) +
                                    " is not contractible on L=" + std::to_string(lat.size()));
    }
}

}  // namespace

std::vector<std::size_t> dual_loop_around_vertices(const Lattice &lat, long r0, long c0, std::size_t rows,
                                                   std::size_t cols) {
    check_rectangle(lat, rows, cols);
    long h = static_cast<long>(rows), w = static_cast<long>(cols);
    std::vector<std::size_t> loop;
    for (long c = c0; c < c0 + w; c++) loop.push_back(lat.vertical_edge(r0 - 1, c));
    for (long r = r0; r < r0 + h; r++) loop.push_back(lat.horizontal_edge(r, c0 + w - 1));
    for (long c = c0 + w - 1; c >= c0; c--) loop.push_back(lat.vertical_edge(r0 + h - 1, c));
    for (long r = r0 + h - 1; r >= r0; r--) loop.push_back(lat.horizontal_edge(r, c0 - 1));
    return loop;
}

std::vector<std::size_t> primal_loop_around_faces(const Lattice &lat, long r0, long c0, std::size_t rows,
                                                  std::size_t cols) {
    check_rectangle(lat, rows, cols);
    long h = static_cast<long>(rows), w = static_cast<long>(cols);
    std::vector<std::size_t> loop;
    for (long c = c0; c < c0 + w; c++) loop.push_back(lat.horizontal_edge(r0, c));
    for (long r = r0; r < r0 + h; r++) loop.push_back(lat.vertical_edge(r, c0 + w));
    for (long c = c0 + w - 1; c >= c0; c--) loop.push_back(lat.horizontal_edge(r0 + h, c));
    for (long r = r0 + h - 1; r >= r0; r--) loop.push_back(lat.vertical_edge(r, c0));
    return loop;
}

std::vector<std::size_t> torus_string(const Lattice &lat, Species s, std::size_t from, std::size_t to) {
    require_torus(lat);
    if (s == Species::E) {
        lat.check_vertex(from);
        lat.check_vertex(to);
    } else {
        lat.check_face(from);
        lat.check_face(to);
    }
    long L = static_cast<long>(lat.size());
    long r1 = static_cast<long>(from - 1) / L, c1 = static_cast<long>(from - 1) % L;
    long r2 = static_cast<long>(to - 1) / L, c2 = static_cast<long>(to - 1) % L;
    long dc = ((c2 - c1) % L + L) % L, dr = ((r2 - r1) % L + L) % L;
    std::vector<std::size_t> path;
    for (long k = 0; k < dc; k++) {
        path.push_back(s == Species::E ? lat.horizontal_edge(r1, c1 + k) : lat.vertical_edge(r1, c1 + k + 1));
    }
    for (long k = 0; k < dr; k++) {
        path.push_back(s == Species::E ? lat.vertical_edge(r1 + k, c2) : lat.horizontal_edge(r1 + k + 1, c2));
    }
    return path;
}

std::vector<AnyonOp> create_pair_at(const Lattice &lat, Species s, std::size_t a, std::size_t b) {
    if (a == b) throw std::invalid_argument("a pair needs two distinct sites");
    auto path = torus_string(lat, s, a, b);
    std::vector<AnyonOp> ops;
    ops.push_back(s == Species::E ? AnyonOp::create_e_pair(path.front()) : AnyonOp::create_m_pair(path.front()));
    if (path.size() > 1) {
        std::vector<std::size_t> rest(path.begin() + 1, path.end());
        ops.push_back(s == Species::E ? AnyonOp::move_e(std::move(rest)) : AnyonOp::move_m(std::move(rest)));
    }
    return ops;
}

std::string syndrome_text(const QuantumState &state, const Lattice &lat) {
    std::string out = "{";
    auto add = [&](double v, char tag, std::size_t id) {
        if (near(v, 1)) return;
        if (out.size() > 1) out += ",";
        if (!near(v, -1)) out += "~";
        out += tag + std::to_string(id);
    };
    for (std::size_t v = 1; v <= lat.num_vertices(); v++) add(state.expectation(lat.vertex_operator(v)), 'v', v);
    for (std::size_t f = 1; f <= lat.num_faces(); f++) add(state.expectation(lat.face_operator(f)), 'f', f);
    return out + "}";
}

void ProtocolTrace::apply(QuantumState &state, const Lattice &lat, const AnyonOp &op, bool check_excited) {
    apply_anyon_op(state, lat, op, check_excited);
    entries_.push_back({op, syndrome_text(state, lat)});
}

std::string ProtocolTrace::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < entries_.size(); i++) {
        os << i + 1 << " " << entries_[i].op.str() << " -> " << entries_[i].syndrome << "\n";
    }
    return os.str();
}

std::string ProtocolTrace::to_scenario() const {
    std::string out;
    for (const auto &e : entries_) out += e.op.str() + "\n";
    return out;
}

BraidingSetup six_qubit_braiding_setup() { return {3, 1, 4, {6, 5, 3, 4}, true}; }

BraidingSetup torus_braiding_setup(const Lattice &lat, long r0, long c0, std::size_t rows, std::size_t cols) {
    auto loop = dual_loop_around_vertices(lat, r0, c0, rows, cols);
    std::size_t creation = loop.back();
    return {lat.horizontal_edge(0, 0), lat.vertex_at(0, 0), creation, std::move(loop), true};
}

BraidResult interferometric_braiding(const Lattice &lat, Backend backend, const BraidingSetup &setup,
                                     uint64_t seed) {
    auto setting = fringe_setting(lat, setup.reference_edge, setup.fringe_vertex);
    auto alphas = quarter_pi_grid();
    QuantumState state = ground_state(lat, backend, {}, seed);

    std::optional<StateVector> basis_g, basis_e;
    if (backend == Backend::StateVector) {
        basis_g = state.to_state_vector();
        basis_e = *basis_g;
        basis_e->apply(CliffordGate::z(setup.reference_edge));
    }

    ProtocolTrace trace;
    trace.apply(state, lat, AnyonOp::sqrt_z(setup.reference_edge));
    FringeScan pre = fringe_scan(state, setting, alphas);
    std::optional<double> rel_pre;
    if (basis_g) rel_pre = relative_phase(state.to_state_vector(), *basis_g, *basis_e);

    PauliString net(lat.num_qubits());
    auto run = [&](const AnyonOp &op) {
        trace.apply(state, lat, op);
        for (const auto &g : op.gates()) {
            net *= PauliString::all_of(lat.num_qubits(), PauliLetter::X, std::vector<std::size_t>{g.target});
        }
    };
    run(AnyonOp::create_m_pair(setup.creation_edge));
    if (setup.braid) run(AnyonOp::move_m(setup.loop));
    run(AnyonOp::create_m_pair(setup.creation_edge));

    FringeScan post = fringe_scan(state, setting, alphas);
    std::optional<double> rel_post;
    if (basis_g) rel_post = relative_phase(state.to_state_vector(), *basis_g, *basis_e);

    for (const auto *scan : {&pre, &post}) {
        if (scan->fit.residual > kMaxFitResidual) {
            throw std::runtime_error("fringe fit residual " + std::to_string(scan->fit.residual) +
                                     " above threshold");
        }
    }
    double dphi = wrap_angle(post.fit.phase - pre.fit.phase);
    if (dphi < -std::numbers::pi / 2) dphi += 2 * std::numbers::pi;
    bool charged = angular_distance(dphi, std::numbers::pi) < std::numbers::pi / 2;
    return {std::move(net), charged, dphi, std::move(pre), std::move(post), rel_pre, rel_post,
            std::move(trace), std::move(state)};
}

bool verify_fusion_vacuum(const QuantumState &state, const Lattice &lat) {
    try {
        return syndrome(state, lat).empty();
    } catch (const std::invalid_argument &) {
        return false;
    }
}

std::size_t StatisticsSweep::total() const {
    std::size_t t = 0;
    for (const auto &row : cells)
        for (const auto &c : row) t += c.total;
    return t;
}

bool StatisticsSweep::all_passed() const {
    for (const auto &row : cells)
        for (const auto &c : row)
            if (c.passed != c.total) return false;
    return true;
}

std::string StatisticsSweep::matrix() const {
    std::ostringstream os;
    os << "L=" << L << "        enclosed=0     enclosed=1     enclosed=2\n";
    for (std::size_t p = 0; p < cells.size(); p++) {
        os << kProbeNames[p];
        for (std::size_t i = std::string(kProbeNames[p]).size(); i < 12; i++) os << ' ';
        for (const auto &c : cells[p]) {
            std::string cell = c.total == 0 ? "-" : std::to_string(c.passed) + "/" + std::to_string(c.total);
            cell += c.passed == c.total ? " ok" : " FAIL";
            os << cell;
            for (std::size_t i = cell.size(); i < 15; i++) os << ' ';
        }
        os << "\n";
    }
    return os.str();
}

namespace {

struct Rect {
    long r0, c0;
    std::size_t rows, cols;
};

bool in_window(long x, long x0, long len, long L) { return ((x - x0) % L + L) % L < len; }

struct PairState {
    std::size_t a, b;
    QuantumState state;
};

std::vector<Rect> all_rectangles(std::size_t L) {
    std::vector<Rect> rects;
    for (std::size_t h = 1; h < L; h++)
        for (std::size_t w = 1; w < L; w++)
            for (long r = 0; r < static_cast<long>(L); r++)
                for (long c = 0; c < static_cast<long>(L); c++) rects.push_back({r, c, h, w});
    return rects;
}

template <class Result, class Fn>
std::vector<Result> parallel_over(std::size_t count, Fn fn) {
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
    std::vector<std::future<Result>> futures;
    for (std::size_t w = 0; w < workers; w++) {
        futures.push_back(std::async(std::launch::async, [w, workers, count, &fn] {
            Result r{};
            for (std::size_t i = w; i < count; i += workers) fn(i, r);
            return r;
        }));
    }
    std::vector<Result> out;
    for (auto &f : futures) out.push_back(f.get());
    return out;
}

}  // namespace

StatisticsSweep torus_statistics_sweep(std::size_t L, uint64_t seed) {
    auto lat = Lattice::torus(L);
    auto ground = ground_state(lat, Backend::Tableau, {}, seed);
    long Ll = static_cast<long>(L);

    // Sites are numbered r*L + c + 1 for both species.
    std::vector<PairState> e_pairs, m_pairs;
    for (std::size_t a = 1; a <= L * L; a++) {
        for (std::size_t b = a + 1; b <= L * L; b++) {
            for (Species s : {Species::E, Species::M}) {
                QuantumState st = ground;
                for (const auto &op : create_pair_at(lat, s, a, b)) apply_anyon_op(st, lat, op);
                (s == Species::E ? e_pairs : m_pairs).push_back({a, b, std::move(st)});
            }
        }
    }

    auto rects = all_rectangles(L);
    auto parts = parallel_over<StatisticsSweep>(rects.size(), [&](std::size_t i, StatisticsSweep &acc) {
        const Rect &rc = rects[i];
        long h = static_cast<long>(rc.rows), w = static_cast<long>(rc.cols);
        auto m_loop = loop_operator(lat, dual_loop_around_vertices(lat, rc.r0, rc.c0, rc.rows, rc.cols), Species::M);
        auto e_loop = loop_operator(lat, primal_loop_around_faces(lat, rc.r0, rc.c0, rc.rows, rc.cols), Species::E);
        // The m-loop encloses vertices of the rectangle and the faces strictly inside it;
        // the e-loop encloses the face rectangle and the vertices strictly inside it.
        auto vertex_in_m = [&](std::size_t v) {
            long r = static_cast<long>(v - 1) / Ll, c = static_cast<long>(v - 1) % Ll;
            return in_window(r, rc.r0, h, Ll) && in_window(c, rc.c0, w, Ll);
        };
        auto face_in_m = [&](std::size_t f) {
            long r = static_cast<long>(f - 1) / Ll, c = static_cast<long>(f - 1) % Ll;
            return in_window(r, rc.r0, h - 1, Ll) && in_window(c, rc.c0, w - 1, Ll);
        };
        auto face_in_e = [&](std::size_t f) {
            long r = static_cast<long>(f - 1) / Ll, c = static_cast<long>(f - 1) % Ll;
            return in_window(r, rc.r0, h, Ll) && in_window(c, rc.c0, w, Ll);
        };
        auto vertex_in_e = [&](std::size_t v) {
            long r = static_cast<long>(v - 1) / Ll, c = static_cast<long>(v - 1) % Ll;
            return in_window(r, rc.r0 + 1, h - 1, Ll) && in_window(c, rc.c0 + 1, w - 1, Ll);
        };
        auto check = [&](StatisticsSweep::Probe probe, const PairState &ps, const PauliString &loop,
                         std::size_t enclosed, bool mutual) {
            int expected = mutual && enclosed == 1 ? -1 : 1;
            auto &cell = acc.cells[probe][enclosed];
            cell.total++;
            std::string got;
            try {
                int v = static_cast<int>(classify_loop(lat, ps.state, loop));
                if (v == expected) {
                    cell.passed++;
                    return;
                }
                got = std::to_string(v);
            } catch (const std::exception &ex) {
                got = ex.what();
            }
            if (acc.failures.size() < 20) {
                acc.failures.push_back(std::string(StatisticsSweep::kProbeNames[probe]) + " rect(" +
                                       std::to_string(rc.r0) + "," + std::to_string(rc.c0) + "," +
                                       std::to_string(rc.rows) + "x" + std::to_string(rc.cols) + ") pair " +
                                       std::to_string(ps.a) + "," + std::to_string(ps.b) + ": expected " +
                                       std::to_string(expected) + ", got " + got);
            }
        };
        for (const auto &ps : e_pairs) {
            check(StatisticsSweep::MLoopAroundE, ps, m_loop, vertex_in_m(ps.a) + vertex_in_m(ps.b), true);
            check(StatisticsSweep::ELoopAroundE, ps, e_loop, vertex_in_e(ps.a) + vertex_in_e(ps.b), false);
        }
        for (const auto &ps : m_pairs) {
            check(StatisticsSweep::ELoopAroundM, ps, e_loop, face_in_e(ps.a) + face_in_e(ps.b), true);
            check(StatisticsSweep::MLoopAroundM, ps, m_loop, face_in_m(ps.a) + face_in_m(ps.b), false);
        }
    });

    StatisticsSweep out;
    out.L = L;
    for (const auto &p : parts) {
        for (std::size_t i = 0; i < 4; i++) {
            for (std::size_t k = 0; k < 3; k++) {
                out.cells[i][k].total += p.cells[i][k].total;
                out.cells[i][k].passed += p.cells[i][k].passed;
            }
        }
        for (const auto &f : p.failures) {
            if (out.failures.size() < 20) out.failures.push_back(f);
        }
    }
    return out;
}

InterferometrySweep torus_interferometry_sweep(std::size_t L, Backend backend, uint64_t seed) {
    auto lat = Lattice::torus(L);
    QuantumState excited = ground_state(lat, Backend::Tableau, {}, seed);
    excited.apply(CliffordGate::z(lat.horizontal_edge(0, 0)));

    auto rects = all_rectangles(L);
    auto parts = parallel_over<InterferometrySweep>(rects.size(), [&](std::size_t i, InterferometrySweep &acc) {
        const Rect &rc = rects[i];
        auto setup = torus_braiding_setup(lat, rc.r0, rc.c0, rc.rows, rc.cols);
        std::string where = "rect(" + std::to_string(rc.r0) + "," + std::to_string(rc.c0) + "," +
                            std::to_string(rc.rows) + "x" + std::to_string(rc.cols) + ")";
        acc.total++;
        try {
            auto cls = classify_loop(lat, excited, loop_operator(lat, setup.loop, Species::M));
            double expected = cls == LoopClass::Charged ? std::numbers::pi : 0.0;
            auto res = interferometric_braiding(lat, backend, setup, seed);
            if (angular_distance(res.phase_difference, expected) < 1e-9 &&
                res.enclosed_charge_detected == (cls == LoopClass::Charged)) {
                acc.passed++;
            } else if (acc.failures.size() < 20) {
                acc.failures.push_back(where + ": phase difference " + std::to_string(res.phase_difference) +
                                       ", expected " + std::to_string(expected));
            }
        } catch (const std::exception &ex) {
            if (acc.failures.size() < 20) acc.failures.push_back(where + ": " + ex.what());
        }
    });

    InterferometrySweep out;
    for (const auto &p : parts) {
        out.total += p.total;
        out.passed += p.passed;
        for (const auto &f : p.failures) {
            if (out.failures.size() < 20) out.failures.push_back(f);
        }
    }
    return out;
}

}  // namespace anyon
