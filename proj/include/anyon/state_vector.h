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

#ifndef ANYON_STATE_VECTOR_H
#define ANYON_STATE_VECTOR_H

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anyon/clifford_gate.h"
#include "anyon/pauli_string.h"
#include "anyon/tableau.h"

namespace anyon {

using Amplitude = std::complex<double>;

/// A normalized single-qubit state a|0> + b|1> used as a measurement projector.
struct QubitState {
    Amplitude zero;
    Amplitude one;

    static QubitState h() { return {1, 0}; }
    static QubitState v() { return {0, 1}; }
    static QubitState plus();
    static QubitState minus();
    /// (|+> + e^{i alpha} |->) / sqrt(2).
    static QubitState equator(double alpha);

    double norm() const;
    BlochVector bloch() const;
};

struct StateProjector {
    std::size_t qubit;
    QubitState state;
};

/// Dense 2^n amplitude vector. Qubit 1 is the most significant bit of the basis index,
/// so |b_1 b_2 ... b_n> has index sum_j b_j 2^(n-j). |H> = |0>, |V> = |1>.
/// Global phase is kept as computed.
class StateVector {
   public:
    static constexpr std::size_t kMaxQubits = 20;

    /// |0...0>.
    explicit StateVector(std::size_t num_qubits);
    /// Takes ownership of amplitudes; size must be a power of two and the norm 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);
    /// (|HHHHHH> + |VVVHHH> + |HHVVVV> + |VVHVVV>) / 2.
    static StateVector kitaev_six_qubit_ground_state();
    /// The joint +1 eigenstate of n independent commuting Hermitian generators,
    /// obtained by projecting a reference state. Throws if the projection vanishes.
    static StateVector from_generators(std::span<const PauliString> gens);
    static StateVector from_tableau(const StabilizerTableau &t);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Amplitude> &amplitudes() const { return amps_; }
    Amplitude amplitude(std::size_t index) const { return amps_.at(index); }
    /// Amplitude of a ket written as a string over {H,V} or {0,1}, qubit 1 first.
    Amplitude amplitude(std::string_view ket) const;
    double norm() const;

    void apply(const CliffordGate &gate);
    /// Arbitrary 2x2 (one target) or 4x4 (two targets, row index (t1 << 1) | t2) unitary.
    void apply_unitary(const Eigen::MatrixXcd &u, std::span<const std::size_t> targets);

    /// Applies the Pauli operator itself (not conjugation), including its phase.
    void apply_pauli(const PauliString &p);

    double pauli_expectation(const PauliString &p) const;
    /// Probability that every qubit is found in its listed state.
    double coincidence_probability(std::span<const StateProjector> projectors) const;

    /// <this|other>.
    Amplitude inner(const StateVector &other) const;

    /// Text dump: one CSV row `index,bitstring,real,imag` per amplitude above 1e-12.
    std::string dump_csv() const;

   private:
    StateVector(std::size_t num_qubits, std::vector<Amplitude> amps);
    std::size_t bit_of(std::size_t qubit) const { return std::size_t{1} << (num_qubits_ - qubit); }

    std::size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

/// |<reference|s>|^2.
double fidelity(const StateVector &s, const StateVector &reference);

/// arg(<b|s> / <a|s>) for s in the span of orthogonal states a and b, in (-pi, pi].
double relative_phase(const StateVector &s, const StateVector &a, const StateVector &b);

}  // namespace anyon

#endif
