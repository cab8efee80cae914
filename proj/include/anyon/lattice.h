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

#ifndef ANYON_LATTICE_H
#define ANYON_LATTICE_H

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "anyon/pauli_string.h"
#include "anyon/quantum_state.h"

namespace anyon {

using Point = std::array<double, 2>;

/// An edge (= qubit) with the vertices and faces it touches. Boundary edges of the
/// six-qubit model touch a single vertex and/or face.
struct Edge {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> faces;
    Point from;
    Point to;
};

/// Qubits on edges. Edge, vertex and face ids are all 1-based.
///
/// Torus edge numbering for L x L vertices at (row r, column c), 0 <= r, c < L:
///
///         v(r-1,c)
///            |
///  h(r,c-1)--+--h(r,c)        h(r,c) = r*L + c + 1          (horizontal, to the right)
///            |                v(r,c) = L*L + r*L + c + 1    (vertical, downwards)
///          v(r,c)
///
/// Vertex (r,c) and face (r,c) both have id r*L + c + 1; face (r,c) is the plaquette
/// whose top-left corner is vertex (r,c), bounded by h(r,c), h(r+1,c), v(r,c), v(r,c+1).
class Lattice {
   public:
    enum class Kind { SixQubit, Torus };

    static Lattice six_qubit();
    static Lattice torus(std::size_t L);

    Kind kind() const { return kind_; }
    /// Side length for a torus, 0 for the six-qubit model.
    std::size_t size() const { return size_; }
    std::size_t num_qubits() const { return edges_.size(); }
    std::size_t num_vertices() const { return stars_.size(); }
    std::size_t num_faces() const { return boundaries_.size(); }

    const std::vector<std::size_t> &star(std::size_t vertex) const;
    const std::vector<std::size_t> &boundary(std::size_t face) const;
    const Edge &edge(std::size_t id) const;

    /// A_v: X on every edge of the star.
    PauliString vertex_operator(std::size_t vertex) const;
    /// B_f: Z on every edge of the boundary.
    PauliString face_operator(std::size_t face) const;

    // Torus addressing; arguments are taken modulo L.
    std::size_t vertex_at(long r, long c) const;
    std::size_t face_at(long r, long c) const;
    std::size_t horizontal_edge(long r, long c) const;
    std::size_t vertical_edge(long r, long c) const;

    void check_edge(std::size_t id) const;
    void check_vertex(std::size_t id) const;
    void check_face(std::size_t id) const;

    /// JSON description: edges with endpoints and coordinates, vertex stars, face boundaries.
    std::string to_json() const;

   private:
    Lattice(Kind kind, std::size_t size, std::vector<std::vector<std::size_t>> stars,
            std::vector<std::vector<std::size_t>> boundaries, std::vector<std::pair<Point, Point>> geometry);

    Kind kind_;
    std::size_t size_;
    std::vector<std::vector<std::size_t>> stars_;
    std::vector<std::vector<std::size_t>> boundaries_;
    std::vector<Edge> edges_;
};

struct HamiltonianTerm {
    std::string label;
    double coefficient;
    PauliString op;
};

/// H = -sum_v A_v - sum_f B_f, vertex terms first.
struct KitaevHamiltonian {
    std::vector<HamiltonianTerm> terms;

    std::size_t num_vertex_terms() const;
    double energy(const QuantumState &state) const;
};

KitaevHamiltonian kitaev_hamiltonian(const Lattice &lat);

struct Syndrome {
    std::set<std::size_t> excited_vertices;
    std::set<std::size_t> excited_faces;

    bool empty() const { return excited_vertices.empty() && excited_faces.empty(); }
    bool operator==(const Syndrome &) const = default;
    std::string str() const;
};

struct Model {
    Lattice lattice;
    KitaevHamiltonian hamiltonian;
};

/// H_6 = -A1 - A2 - B1 - B2 - B3 - B4.
Model six_qubit_model();
Model torus_model(std::size_t L);

/// The two non-contractible Z loops fixing the default torus ground-state sector:
/// Z on the horizontal edges of row 0 and Z on the vertical edges of column 0.
std::vector<PauliString> default_logical_sector(const Lattice &lat);

/// A full-rank generator set for the ground state: every A_v and B_f for the six-qubit
/// model; for a torus the last A_v and B_f are dropped (each is the product of the rest)
/// and the two sector operators appended.
std::vector<PauliString> ground_state_generators(const Lattice &lat, const std::vector<PauliString> &sector);

QuantumState ground_state(const Lattice &lat, Backend backend, const std::vector<PauliString> &sector = {},
                          uint64_t seed = 0);

/// Vertices with <A_v> = -1 and faces with <B_f> = -1. Throws if any expectation is not ±1.
Syndrome syndrome(const QuantumState &state, const Lattice &lat);

}  // namespace anyon

#endif
