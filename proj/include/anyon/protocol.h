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

#ifndef ANYON_PROTOCOL_H
#define ANYON_PROTOCOL_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anyon/fringe.h"
#include "anyon/lattice.h"
#include "anyon/quantum_state.h"

namespace anyon {

/// e lives on vertices and is moved by Z; m lives on faces and is moved by X.
enum class Species { E, M };

std::string to_string(Species s);

struct AnyonOp {
    enum class Kind { CreateEPair, CreateMPair, MoveE, MoveM, SqrtZ, Raw };

    Kind kind;
    /// One edge for pair creation and sqrt_z, the edge path for moves.
    std::vector<std::size_t> edges;
    /// Only for Raw.
    std::optional<CliffordGate> gate;

    static AnyonOp create_e_pair(std::size_t edge);
    static AnyonOp create_m_pair(std::size_t edge);
    static AnyonOp move_e(std::vector<std::size_t> path);
    static AnyonOp move_m(std::vector<std::size_t> path);
    static AnyonOp sqrt_z(std::size_t qubit);
    static AnyonOp raw(const CliffordGate &gate);

    std::vector<CliffordGate> gates() const;
    /// Scenario directive, e.g. `op z 3` or `move m 6,5,3,4`.
    std::string str() const;
};

/// Applies the op. With `check_excited`, a move must start on a site whose stabilizer
/// currently reads -1. Throws std::invalid_argument for bad edges, disconnected paths
/// and moves from non-excited sites.
void apply_anyon_op(QuantumState &state, const Lattice &lat, const AnyonOp &op, bool check_excited = true);

/// Vertex operator (E) or face operator (M) of a site; site 0 is the open boundary.
PauliString site_operator(const Lattice &lat, Species s, std::size_t site);

/// Sites visited by walking `path` from `start`: start, then one site per edge.
/// Site 0 stands for the outside of the six-qubit patch. Empty when the walk breaks.
std::vector<std::size_t> walk_path(const Lattice &lat, Species s, std::size_t start,
                                   const std::vector<std::size_t> &path);

/// Product of X (M) or Z (E) over the loop's edges. Throws if the edges do not form a
/// closed walk on vertices (E) or faces (M).
PauliString loop_operator(const Lattice &lat, const std::vector<std::size_t> &edge_loop, Species s);

enum class LoopClass { Trivial = 1, Charged = -1 };

/// Eigenvalue of `loop_op` on the state. Throws if loop_op anticommutes with a vertex or
/// face term, or if the state is not an eigenstate of it.
LoopClass classify_loop(const Lattice &lat, const QuantumState &state, const PauliString &loop_op);

/// Dual loop (for M) around the vertex rectangle rows r0..r0+rows-1, columns
/// c0..c0+cols-1 of a torus. Its operator is the product of those vertices' A_v.
std::vector<std::size_t> dual_loop_around_vertices(const Lattice &lat, long r0, long c0, std::size_t rows,
                                                   std::size_t cols);
/// Primal loop (for E) around the face rectangle; its operator is the product of B_f.
std::vector<std::size_t> primal_loop_around_faces(const Lattice &lat, long r0, long c0, std::size_t rows,
                                                  std::size_t cols);
/// Edge path on a torus from one site to another, right then down.
std::vector<std::size_t> torus_string(const Lattice &lat, Species s, std::size_t from, std::size_t to);

/// Ops creating a pair of species s on two distinct torus sites.
std::vector<AnyonOp> create_pair_at(const Lattice &lat, Species s, std::size_t a, std::size_t b);

std::string syndrome_text(const QuantumState &state, const Lattice &lat);

struct TraceEntry {
    AnyonOp op;
    /// Excited sites after the op; `~` marks a site in superposition.
    std::string syndrome;
};

/// Ordered record of applied ops and the resulting syndromes.
class ProtocolTrace {
   public:
    void apply(QuantumState &state, const Lattice &lat, const AnyonOp &op, bool check_excited = true);
    const std::vector<TraceEntry> &entries() const { return entries_; }
    /// One `<step> <directive> -> <syndrome>` line per entry.
    std::string str() const;
    /// The ops as scenario directives, one per line.
    std::string to_scenario() const;

   private:
    std::vector<TraceEntry> entries_;
};

/// Interferometric braiding parameters. An e-pair on `reference_edge` is put in
/// superposition by sqrt_z; an m-pair created on `creation_edge` is moved around
/// `loop` (whose walk starts at a face of `creation_edge`) and fused again.
struct BraidingSetup {
    std::size_t reference_edge;
    /// Endpoint of reference_edge whose star is projected on |+> in the fringe scans.
    std::size_t fringe_vertex;
    std::size_t creation_edge;
    std::vector<std::size_t> loop;
    bool braid = true;
};

/// sqrt_z 3; create X4; braid X6 X5 X3 X4; fuse X4.
BraidingSetup six_qubit_braiding_setup();

/// Torus setup: reference edge h(0,0) probed at vertex (0,0); the m-loop encloses the
/// given vertex rectangle and the pair is created on the loop's last edge.
BraidingSetup torus_braiding_setup(const Lattice &lat, long r0, long c0, std::size_t rows, std::size_t cols);

struct BraidResult {
    /// Net product of the gates applied between the two scans.
    PauliString loop_operator;
    bool enclosed_charge_detected;
    /// Fitted post phase minus pre phase, in (-pi/2, 3pi/2] so that pi reads as +pi.
    double phase_difference;
    FringeScan pre;
    FringeScan post;
    /// arg of the |psi_e> component relative to |psi_g> before and after the braid;
    /// state-vector backend only.
    std::optional<double> relative_phase_pre;
    std::optional<double> relative_phase_post;
    ProtocolTrace trace;
    /// State after fusion.
    QuantumState final_state;
};

inline constexpr double kMaxFitResidual = 1e-9;

/// Runs the protocol from the ground state. Throws std::runtime_error when a fringe fit
/// residual exceeds kMaxFitResidual, DegenerateFitError when a fringe has no visibility.
BraidResult interferometric_braiding(const Lattice &lat, Backend backend, const BraidingSetup &setup,
                                     uint64_t seed = 0);

/// True iff the syndrome is empty; false also when some site is in superposition.
bool verify_fusion_vacuum(const QuantumState &state, const Lattice &lat);

/// Pass counts of the torus loop-statistics sweep, by probe kind and number of enclosed
/// particles (0, 1, 2).
struct StatisticsSweep {
    enum Probe { MLoopAroundE, ELoopAroundM, ELoopAroundE, MLoopAroundM };
    static constexpr std::array<const char *, 4> kProbeNames = {"m-loop/e", "e-loop/m", "e-loop/e", "m-loop/m"};

    struct Cell {
        std::size_t total = 0;
        std::size_t passed = 0;
    };

    std::size_t L = 0;
    std::array<std::array<Cell, 3>, 4> cells{};
    std::vector<std::string> failures;

    std::size_t total() const;
    bool all_passed() const;
    std::string matrix() const;
};

/// Every contractible rectangle loop against every pair placement, on the tableau backend,
/// in parallel over rectangles.
StatisticsSweep torus_statistics_sweep(std::size_t L, uint64_t seed = 0);

/// interferometric_braiding against classify_loop for every rectangle m-loop.
struct InterferometrySweep {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::vector<std::string> failures;
};

InterferometrySweep torus_interferometry_sweep(std::size_t L, Backend backend, uint64_t seed = 0);

}  // namespace anyon

#endif
