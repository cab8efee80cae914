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

#ifndef ANYON_QUANTUM_STATE_H
#define ANYON_QUANTUM_STATE_H

#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "anyon/state_vector.h"
#include "anyon/tableau.h"

namespace anyon {

enum class Backend { Tableau, StateVector };

std::string to_string(Backend b);
Backend parse_backend(std::string_view name);

/// A simulated state on either backend, with the operations the protocol layer needs.
class QuantumState {
   public:
    QuantumState(StabilizerTableau t) : impl_(std::move(t)) {}
    QuantumState(StateVector s) : impl_(std::move(s)) {}

    Backend backend() const;
    std::size_t num_qubits() const;

    void apply(const CliffordGate &gate);
    /// Exact on the tableau backend (-1, 0, +1); <psi|P|psi> on the state vector.
    double expectation(const PauliString &p) const;
    double coincidence_probability(std::span<const StateProjector> projectors) const;

    const StabilizerTableau *tableau() const { return std::get_if<StabilizerTableau>(&impl_); }
    const StateVector *state_vector() const { return std::get_if<StateVector>(&impl_); }
    /// Dense form; converts a tableau (n <= 20) when needed.
    StateVector to_state_vector() const;

   private:
    std::variant<StabilizerTableau, StateVector> impl_;
};

}  // namespace anyon

#endif
