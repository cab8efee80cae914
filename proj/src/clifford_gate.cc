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

#include "anyon/clifford_gate.h"

#include <cmath>
#include <stdexcept>

namespace anyon {

CliffordGate CliffordGate::inverse() const {
    CliffordGate g = *this;
    if (kind == GateKind::SqrtZ) {
        g.kind = GateKind::SqrtZDagger;
    } else if (kind == GateKind::SqrtZDagger) {
        g.kind = GateKind::SqrtZ;
    }
    return g;
}

void CliffordGate::validate(std::size_t num_qubits) const {
    auto check = [&](std::size_t q) {
        if (q < 1 || q > num_qubits) {
            throw std::out_of_range(
                "gate " + str() + ": qubit " + std::to_string(q) + " out of range 1.." + std::to_string(num_qubits));
        }
    };
    check(target);
    if (is_two_qubit()) {
        check(target2);
        if (target == target2) {
            throw std::invalid_argument("gate " + str() + ": targets must be distinct");
        }
    }
}

Eigen::MatrixXcd CliffordGate::matrix() const {
    using C = std::complex<double>;
    const C i{0, 1};
    const double r = 1 / std::sqrt(2.0);
    Eigen::MatrixXcd m;
    switch (kind) {
        case GateKind::X:
            m.resize(2, 2);
            m << 0, 1, 1, 0;
            break;
        case GateKind::Z:
            m.resize(2, 2);
            m << 1, 0, 0, -1;
            break;
        case GateKind::Hadamard:
            m.resize(2, 2);
            m << r, r, r, -r;
            break;
        case GateKind::SqrtZ:
            m.resize(2, 2);
            m << 1, 0, 0, i;
            break;
        case GateKind::SqrtZDagger:
            m.resize(2, 2);
            m << 1, 0, 0, -i;
            break;
        case GateKind::CZ:
            m = Eigen::MatrixXcd::Identity(4, 4);
            m(3, 3) = -1;
            break;
        case GateKind::CNOT:
            m = Eigen::MatrixXcd::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            break;
    }
    return m;
}

std::string CliffordGate::str() const {
    switch (kind) {
        case GateKind::X:
            return "X" + std::to_string(target);
        case GateKind::Z:
            return "Z" + std::to_string(target);
        case GateKind::Hadamard:
            return "H" + std::to_string(target);
        case GateKind::SqrtZ:
            return "SqrtZ" + std::to_string(target);
        case GateKind::SqrtZDagger:
            return "SqrtZdag" + std::to_string(target);
        case GateKind::CZ:
            return "CZ" + std::to_string(target) + "," + std::to_string(target2);
        case GateKind::CNOT:
            return "CNOT" + std::to_string(target) + "," + std::to_string(target2);
    }
    return "?";
}

}  // namespace anyon
