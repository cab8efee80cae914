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

#ifndef ANYON_TABLEAU_H
#define ANYON_TABLEAU_H

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "anyon/clifford_gate.h"
#include "anyon/pauli_string.h"

namespace anyon {

struct BlochVector {
    double x = 0;
    double y = 0;
    double z = 1;

    double norm() const;
};

/// Projector (I + n·sigma)/2 on one 1-based qubit.
struct QubitProjector {
    std::size_t qubit;
    BlochVector direction;
};

/// Raised by StabilizerTableau::from_generators. `generators` holds 0-based positions
/// in the input list: the offending pair for NonCommuting, and for Dependent /
/// MinusIdentity a subset whose product is +identity / -identity.
class GeneratorSetError : public std::invalid_argument {
   public:
    enum class Kind { WrongCount, NonHermitian, NonCommuting, Dependent, MinusIdentity };

    GeneratorSetError(Kind kind, std::vector<std::size_t> generators, const std::string &what)
        : std::invalid_argument(what), kind_(kind), generators_(std::move(generators)) {}

    Kind kind() const { return kind_; }
    const std::vector<std::size_t> &generators() const { return generators_; }

   private:
    Kind kind_;
    std::vector<std::size_t> generators_;
};

namespace detail {
struct TableauIndexCache;
}

/// Returns U p U† for the given Clifford gate, with the phase tracked exactly.
PauliString conjugated(const PauliString &p, const CliffordGate &gate);
void conjugate_in_place(PauliString &p, const CliffordGate &gate);

/// A stabilizer state held as n stabilizer and n destabilizer generators.
///
/// Destabilizer i anticommutes with stabilizer i and commutes with every other
/// generator. Stabilizer signs are +-1. Expectations are decided exactly by
/// group membership; only `measure` consumes randomness, from a seeded engine.
class StabilizerTableau {
   public:
    /// The all-|0> state.
    explicit StabilizerTableau(std::size_t num_qubits, uint64_t seed = 0);

    /// The unique joint eigenstate of n independent commuting Hermitian generators,
    /// with eigenvalue given by each generator's sign. Stabilizer i of the result is
    /// exactly gens[i].
    static StabilizerTableau from_generators(std::span<const PauliString> gens, uint64_t seed = 0);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<PauliString> &stabilizers() const { return stabilizers_; }
    const std::vector<PauliString> &destabilizers() const { return destabilizers_; }

    void apply(const CliffordGate &gate);
    void apply(std::span<const CliffordGate> gates);

    /// +1 or -1 when +-p is in the stabilizer group, 0 otherwise.
    int expectation(const PauliString &p) const;

    /// Probability that every listed single-qubit projector succeeds.
    /// Axis-aligned projectors (n = ±x, ±y, ±z) are handled by post-selection; at most
    /// kMaxGeneralProjectors others are expanded into Pauli terms.
    double projector_expectation(std::span<const QubitProjector> projectors) const;

    /// Measures a Hermitian Pauli, collapsing the state. Returns +1 or -1.
    int measure(const PauliString &p);

    /// Forces the outcome of measuring p. Returns its probability (0, 1/2 or 1);
    /// the state is updated only when that probability is nonzero.
    double postselect(const PauliString &p, int outcome);

    /// Throws std::logic_error when a generator relation is violated.
    void validate() const;

    /// `tableau n=<n>` followed by the stabilizers then destabilizers, one per line.
    std::string dump() const;
    static StabilizerTableau load(std::string_view text, uint64_t seed = 0);

    /// Exact equality of generators (ignores the random engine state).
    bool same_generators(const StabilizerTableau &other) const;

    static constexpr std::size_t kMaxGeneralProjectors = 20;

   private:
    StabilizerTableau(std::size_t num_qubits, std::vector<PauliString> stabilizers,
                      std::vector<PauliString> destabilizers, uint64_t seed);
    void check_observable(const PauliString &p) const;
    void invalidate_index();
    /// Qubit-major copy of the generators, built on first use after a mutation.
    const detail::TableauIndexCache &index() const;
    /// Index of the first stabilizer anticommuting with p, or num_qubits_ when none.
    std::size_t first_anticommuting_stabilizer(const PauliString &p) const;

    std::size_t num_qubits_;
    std::vector<PauliString> stabilizers_;
    std::vector<PauliString> destabilizers_;
    std::mt19937_64 rng_;
    std::shared_ptr<detail::TableauIndexCache> index_;
};

}  // namespace anyon

#endif
