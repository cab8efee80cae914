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

#include "anyon/quantum_state.h"

#include <stdexcept>
#include <vector>

namespace anyon {

std::string to_string(Backend b) { return b == Backend::Tableau ? "tableau" : "statevec"; }

Backend parse_backend(std::string_view name) {
    if (name == "tableau") return Backend::Tableau;
    if (name == "statevec") return Backend::StateVector;
    throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

Backend QuantumState::backend() const { return tableau() ? Backend::Tableau : Backend::StateVector; }

std::size_t QuantumState::num_qubits() const {
    return std::visit([](const auto &s) { return s.num_qubits(); }, impl_);
}

void QuantumState::apply(const CliffordGate &gate) {
    std::visit([&](auto &s) { s.apply(gate); }, impl_);
}

double QuantumState::expectation(const PauliString &p) const {
    if (auto t = tableau()) {
        return t->expectation(p);
    }
    return state_vector()->pauli_expectation(p);
}

double QuantumState::coincidence_probability(std::span<const StateProjector> projectors) const {
    if (auto s = state_vector()) {
        return s->coincidence_probability(projectors);
    }
    std::vector<QubitProjector> bloch;
    bloch.reserve(projectors.size());
    for (const auto &p : projectors) {
        if (std::abs(p.state.norm() - 1) > 1e-9) {
            throw std::invalid_argument("projector state on qubit " + std::to_string(p.qubit) + " not normalized");
        }
        bloch.push_back({p.qubit, p.state.bloch()});
    }
    return tableau()->projector_expectation(bloch);
}

StateVector QuantumState::to_state_vector() const {
    if (auto s = state_vector()) {
        return *s;
    }
    return StateVector::from_tableau(*tableau());
}

}  // namespace anyon
