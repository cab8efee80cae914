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

#include "anyon/lattice.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace anyon {

Lattice::Lattice(Kind kind, std::size_t size, std::vector<std::vector<std::size_t>> stars,
                 std::vector<std::vector<std::size_t>> boundaries, std::vector<std::pair<Point, Point>> geometry)
    : kind_(kind), size_(size), stars_(std::move(stars)), boundaries_(std::move(boundaries)) {
    edges_.resize(geometry.size());
    for (std::size_t e = 0; e < geometry.size(); e++) {
        edges_[e].from = geometry[e].first;
        edges_[e].to = geometry[e].second;
    }
    for (auto &s : stars_) std::sort(s.begin(), s.end());
    for (auto &b : boundaries_) std::sort(b.begin(), b.end());
    for (std::size_t v = 0; v < stars_.size(); v++) {
        for (auto e : stars_[v]) edges_.at(e - 1).vertices.push_back(v + 1);
    }
    for (std::size_t f = 0; f < boundaries_.size(); f++) {
        for (auto e : boundaries_[f]) edges_.at(e - 1).faces.push_back(f + 1);
    }
}

Lattice Lattice::six_qubit() {
    // v1 at the origin with dangling edges 1 (up) and 2 (down); edge 3 joins v1 to v2;
    // v2 carries edges 4 (up), 5 (down) and 6 (right).
    std::vector<std::pair<Point, Point>> geometry = {
        {{0, 0}, {0, 1}}, {{0, 0}, {0, -1}}, {{0, 0}, {1, 0}},
        {{1, 0}, {1, 1}}, {{1, 0}, {1, -1}}, {{1, 0}, {2, 0}},
    };
    return Lattice(Kind::SixQubit, 0, {{1, 2, 3}, {3, 4, 5, 6}}, {{1, 3, 4}, {2, 3, 5}, {4, 6}, {5, 6}},
                   std::move(geometry));
}

Lattice Lattice::torus(std::size_t L) {
    if (L < 2) {
        throw std::invalid_argument("torus needs L >= 2, got " + std::to_string(L));
    }
    auto wrap = [L](long k) { return static_cast<std::size_t>(((k % static_cast<long>(L)) + L) % L); };
    auto h = [&](long r, long c) { return wrap(r) * L + wrap(c) + 1; };
    auto v = [&](long r, long c) { return L * L + wrap(r) * L + wrap(c) + 1; };
    std::vector<std::vector<std::size_t>> stars(L * L), boundaries(L * L);
    std::vector<std::pair<Point, Point>> geometry(2 * L * L);
    for (long r = 0; r < static_cast<long>(L); r++) {
        for (long c = 0; c < static_cast<long>(L); c++) {
            std::size_t id = r * L + c;
            stars[id] = {h(r, c), h(r, c - 1), v(r, c), v(r - 1, c)};
            boundaries[id] = {h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)};
            Point p{static_cast<double>(c), static_cast<double>(r)};
            geometry[h(r, c) - 1] = {p, {p[0] + 1, p[1]}};
            geometry[v(r, c) - 1] = {p, {p[0], p[1] + 1}};
        }
    }
    return Lattice(Kind::Torus, L, std::move(stars), std::move(boundaries), std::move(geometry));
}

const std::vector<std::size_t> &Lattice::star(std::size_t vertex) const {
    check_vertex(vertex);
    return stars_[vertex - 1];
}

const std::vector<std::size_t> &Lattice::boundary(std::size_t face) const {
    check_face(face);
    return boundaries_[face - 1];
}

const Edge &Lattice::edge(std::size_t id) const {
    check_edge(id);
    return edges_[id - 1];
}

PauliString Lattice::vertex_operator(std::size_t vertex) const {
    return PauliString::all_of(num_qubits(), PauliLetter::X, star(vertex));
}

PauliString Lattice::face_operator(std::size_t face) const {
    return PauliString::all_of(num_qubits(), PauliLetter::Z, boundary(face));
}

namespace {

std::size_t wrap_index(long k, std::size_t L) {
    long m = static_cast<long>(L);
    return static_cast<std::size_t>(((k % m) + m) % m);
}

}  // namespace

std::size_t Lattice::vertex_at(long r, long c) const {
    if (kind_ != Kind::Torus) throw std::logic_error("vertex_at needs a torus");
    return wrap_index(r, size_) * size_ + wrap_index(c, size_) + 1;
}

std::size_t Lattice::face_at(long r, long c) const { return vertex_at(r, c); }

std::size_t Lattice::horizontal_edge(long r, long c) const { return vertex_at(r, c); }

std::size_t Lattice::vertical_edge(long r, long c) const { return size_ * size_ + vertex_at(r, c); }

void Lattice::check_edge(std::size_t id) const {
    if (id < 1 || id > edges_.size()) {
        throw std::out_of_range("edge " + std::to_string(id) + " out of range 1.." + std::to_string(edges_.size()));
    }
}

void Lattice::check_vertex(std::size_t id) const {
    if (id < 1 || id > stars_.size()) {
        throw std::out_of_range("vertex " + std::to_string(id) + " out of range 1.." +
                                std::to_string(stars_.size()));
    }
}

void Lattice::check_face(std::size_t id) const {
    if (id < 1 || id > boundaries_.size()) {
        throw std::out_of_range("face " + std::to_string(id) + " out of range 1.." +
                                std::to_string(boundaries_.size()));
    }
}

std::string Lattice::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = kind_ == Kind::Torus ? "torus" : "six_qubit";
    if (kind_ == Kind::Torus) j["L"] = size_;
    j["n_qubits"] = num_qubits();
    auto &edges = j["edges"] = nlohmann::ordered_json::array();
    for (std::size_t e = 0; e < edges_.size(); e++) {
        edges.push_back({{"id", e + 1},
                         {"vertices", edges_[e].vertices},
                         {"faces", edges_[e].faces},
                         {"from", edges_[e].from},
                         {"to", edges_[e].to}});
    }
    auto &vertices = j["vertices"] = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < stars_.size(); v++) {
        vertices.push_back({{"id", v + 1}, {"star", stars_[v]}});
    }
    auto &faces = j["faces"] = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < boundaries_.size(); f++) {
        faces.push_back({{"id", f + 1}, {"boundary", boundaries_[f]}});
    }
    return j.dump(2);
}

std::size_t KitaevHamiltonian::num_vertex_terms() const {
    return static_cast<std::size_t>(
        std::count_if(terms.begin(), terms.end(), [](const auto &t) { return t.label.front() == 'A'; }));
}

double KitaevHamiltonian::energy(const QuantumState &state) const {
    double e = 0;
    for (const auto &t : terms) {
        e += t.coefficient * state.expectation(t.op);
    }
    return e;
}

KitaevHamiltonian kitaev_hamiltonian(const Lattice &lat) {
    KitaevHamiltonian h;
    for (std::size_t v = 1; v <= lat.num_vertices(); v++) {
        h.terms.push_back({"A" + std::to_string(v), -1.0, lat.vertex_operator(v)});
    }
    for (std::size_t f = 1; f <= lat.num_faces(); f++) {
        h.terms.push_back({"B" + std::to_string(f), -1.0, lat.face_operator(f)});
    }
    return h;
}

std::string Syndrome::str() const {
    std::string s = "{";
    bool first = true;
    for (auto v : excited_vertices) {
        s += (first ? "v" : ",v") + std::to_string(v);
        first = false;
    }
    for (auto f : excited_faces) {
        s += (first ? "f" : ",f") + std::to_string(f);
        first = false;
    }
    return s + "}";
}

Model six_qubit_model() {
    auto lat = Lattice::six_qubit();
    auto ham = kitaev_hamiltonian(lat);
    return {std::move(lat), std::move(ham)};
}

Model torus_model(std::size_t L) {
    auto lat = Lattice::torus(L);
    auto ham = kitaev_hamiltonian(lat);
    return {std::move(lat), std::move(ham)};
}

std::vector<PauliString> default_logical_sector(const Lattice &lat) {
    if (lat.kind() != Lattice::Kind::Torus) {
        return {};
    }
    std::size_t L = lat.size();
    std::vector<std::size_t> row, column;
    for (std::size_t k = 0; k < L; k++) {
        row.push_back(lat.horizontal_edge(0, static_cast<long>(k)));
        column.push_back(lat.vertical_edge(static_cast<long>(k), 0));
    }
    return {PauliString::all_of(lat.num_qubits(), PauliLetter::Z, row),
            PauliString::all_of(lat.num_qubits(), PauliLetter::Z, column)};
}

std::vector<PauliString> ground_state_generators(const Lattice &lat, const std::vector<PauliString> &sector) {
    std::vector<PauliString> gens;
    bool torus = lat.kind() == Lattice::Kind::Torus;
    std::size_t drop = torus ? 1 : 0;
    for (std::size_t v = 1; v + drop <= lat.num_vertices(); v++) gens.push_back(lat.vertex_operator(v));
    for (std::size_t f = 1; f + drop <= lat.num_faces(); f++) gens.push_back(lat.face_operator(f));
    if (torus) {
        const auto &s = sector.empty() ? default_logical_sector(lat) : sector;
        if (s.size() != 2) {
            throw std::invalid_argument("torus ground state needs exactly two sector operators");
        }
        for (const auto &op : s) {
            if (op.num_qubits() != lat.num_qubits()) {
                throw std::invalid_argument("sector operator size does not match the lattice");
            }
            for (std::size_t i = 0; i < gens.size(); i++) {
                if (!commutes(op, gens[i])) {
                    throw std::invalid_argument("sector operator " + op.str() + " anticommutes with a stabilizer");
                }
            }
        }
        if (!commutes(s[0], s[1])) {
            throw std::invalid_argument("sector operators anticommute");
        }
        gens.insert(gens.end(), s.begin(), s.end());
    } else if (!sector.empty()) {
        throw std::invalid_argument("the six-qubit model has a unique ground state; no sector allowed");
    }
    return gens;
}

QuantumState ground_state(const Lattice &lat, Backend backend, const std::vector<PauliString> &sector,
                          uint64_t seed) {
    auto gens = ground_state_generators(lat, sector);
    if (backend == Backend::Tableau) {
        return StabilizerTableau::from_generators(gens, seed);
    }
    return StateVector::from_generators(gens);
}

Syndrome syndrome(const QuantumState &state, const Lattice &lat) {
    if (state.num_qubits() != lat.num_qubits()) {
        throw std::invalid_argument("state and lattice sizes differ");
    }
    auto sign = [](double e, const std::string &what) {
        if (std::abs(e - 1) < 1e-9) return false;
        if (std::abs(e + 1) < 1e-9) return true;
        throw std::invalid_argument("state is not an eigenstate of " + what + " (expectation " + std::to_string(e) +
                                    ")");
    };
    Syndrome s;
    for (std::size_t v = 1; v <= lat.num_vertices(); v++) {
        if (sign(state.expectation(lat.vertex_operator(v)), "A" + std::to_string(v))) s.excited_vertices.insert(v);
    }
    for (std::size_t f = 1; f <= lat.num_faces(); f++) {
        if (sign(state.expectation(lat.face_operator(f)), "B" + std::to_string(f))) s.excited_faces.insert(f);
    }
    return s;
}

}  // namespace anyon
