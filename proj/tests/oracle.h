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

// Dense reference matrices written out by hand, kept apart from the library's own dense
// helpers so tests compare two independent constructions. Qubit 1 is the most
// significant tensor factor.

#ifndef ANYON_TESTS_ORACLE_H
#define ANYON_TESTS_ORACLE_H

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "anyon/clifford_gate.h"
#include "anyon/pauli_string.h"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

inline Mat single(char c) {
    Mat m(2, 2);
    const cd i(0, 1);
    switch (c) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -i, i, 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument("bad letter");
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); r++)
        for (Eigen::Index c = 0; c < a.cols(); c++) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

/// letters[0] acts on qubit 1.
inline Mat pauli(const std::string &letters, cd phase = 1) {
    Mat m = Mat::Identity(1, 1);
    for (char c : letters) m = kron(m, single(c));
    return phase * m;
}

inline Mat pauli(const anyon::PauliString &p) {
    std::string letters;
    for (std::size_t q = 1; q <= p.num_qubits(); q++) letters += anyon::to_char(p.letter(q));
    static const cd kPowers[4] = {1, cd(0, 1), -1, cd(0, -1)};
    return pauli(letters, kPowers[p.phase().log_i()]);
}

/// u on qubit q (1-based) of n.
inline Mat embed(const Mat &u, std::size_t q, std::size_t n) {
    Mat m = Mat::Identity(1, 1);
    for (std::size_t j = 1; j <= n; j++) m = kron(m, j == q ? u : Mat(Mat::Identity(2, 2)));
    return m;
}

inline Mat projector(char letter, int bit, std::size_t q, std::size_t n) {
    Mat p = (Mat::Identity(2, 2) + (bit ? -1.0 : 1.0) * single(letter)) / 2.0;
    return embed(p, q, n);
}

/// Controlled gates as sums of projected products, independent of any 4x4 layout.
inline Mat gate(const anyon::CliffordGate &g, std::size_t n) {
    using anyon::GateKind;
    const cd i(0, 1);
    Mat u(2, 2);
    switch (g.kind) {
        case GateKind::X:
            return embed(single('X'), g.target, n);
        case GateKind::Z:
            return embed(single('Z'), g.target, n);
        case GateKind::Hadamard:
            u << 1, 1, 1, -1;
            return embed(u / std::sqrt(2.0), g.target, n);
        case GateKind::SqrtZ:
            u << 1, 0, 0, i;
            return embed(u, g.target, n);
        case GateKind::SqrtZDagger:
            u << 1, 0, 0, -i;
            return embed(u, g.target, n);
        case GateKind::CZ:
            return projector('Z', 0, g.target, n) + projector('Z', 1, g.target, n) * embed(single('Z'), g.target2, n);
        case GateKind::CNOT:
            return projector('Z', 0, g.target, n) + projector('Z', 1, g.target, n) * embed(single('X'), g.target2, n);
    }
    throw std::logic_error("unreachable");
}

inline double max_abs_diff(const Mat &a, const Mat &b) { return (a - b).cwiseAbs().maxCoeff(); }

inline anyon::PauliString random_pauli(std::size_t n, std::mt19937_64 &rng, bool hermitian = true) {
    anyon::PauliString p(n);
    for (std::size_t q = 1; q <= n; q++) p.set_letter(q, static_cast<anyon::PauliLetter>(rng() % 4));
    int k = static_cast<int>(rng() % 4);
    if (hermitian) k &= 2;
    p.set_phase(anyon::Phase::from_log_i(k));
    return p;
}

inline anyon::CliffordGate random_gate(std::size_t n, std::mt19937_64 &rng) {
    using anyon::CliffordGate;
    std::size_t a = rng() % n + 1;
    std::size_t b = rng() % n + 1;
    if (n > 1)
        while (b == a) b = rng() % n + 1;
    switch (rng() % (n > 1 ? 7 : 5)) {
        case 0:
            return CliffordGate::x(a);
        case 1:
            return CliffordGate::z(a);
        case 2:
            return CliffordGate::h(a);
        case 3:
            return CliffordGate::sqrt_z(a);
        case 4:
            return CliffordGate::sqrt_z_dag(a);
        case 5:
            return CliffordGate::cz(a, b);
        default:
            return CliffordGate::cnot(a, b);
    }
}

}  // namespace oracle

#endif
