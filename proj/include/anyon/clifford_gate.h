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

#ifndef ANYON_CLIFFORD_GATE_H
#define ANYON_CLIFFORD_GATE_H

#include <cstddef>
#include <string>

#include <Eigen/Dense>

namespace anyon {

enum class GateKind { X, Z, Hadamard, SqrtZ, SqrtZDagger, CZ, CNOT };

/// A Clifford gate on one or two 1-based qubit labels.
/// SqrtZ is diag(1, i); for CNOT `target` is the control and `target2` the target.
struct CliffordGate {
    GateKind kind;
    std::size_t target;
    std::size_t target2 = 0;

    static CliffordGate x(std::size_t q) { return {GateKind::X, q}; }
    static CliffordGate z(std::size_t q) { return {GateKind::Z, q}; }
    static CliffordGate h(std::size_t q) { return {GateKind::Hadamard, q}; }
    static CliffordGate sqrt_z(std::size_t q) { return {GateKind::SqrtZ, q}; }
    static CliffordGate sqrt_z_dag(std::size_t q) { return {GateKind::SqrtZDagger, q}; }
    static CliffordGate cz(std::size_t a, std::size_t b) { return {GateKind::CZ, a, b}; }
    static CliffordGate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, control, target}; }

    bool is_two_qubit() const { return kind == GateKind::CZ || kind == GateKind::CNOT; }
    CliffordGate inverse() const;
    /// Throws if a target is outside 1..n or the two targets coincide.
    void validate(std::size_t num_qubits) const;
    /// 2x2 or 4x4 unitary; for two-qubit gates the row index is (target << 1) | target2.
    Eigen::MatrixXcd matrix() const;
    std::string str() const;

    bool operator==(const CliffordGate &) const = default;
};

}  // namespace anyon

#endif
