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

#include "anyon/state_vector.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace anyon {

namespace {

constexpr double kNormTol = 1e-10;

void check_qubit_count(std::size_t n) {
    if (n == 0 || n > StateVector::kMaxQubits) {
        throw std::invalid_argument("state vector supports 1.." + std::to_string(StateVector::kMaxQubits) +
                                    " qubits, got " + std::to_string(n));
    }
}

}  // namespace

QubitState QubitState::plus() {
    double r = 1 / std::sqrt(2.0);
    return {r, r};
}

QubitState QubitState::minus() {
    double r = 1 / std::sqrt(2.0);
    return {r, -r};
}

QubitState QubitState::equator(double alpha) {
    // (|+> + e^{ia}|->)/sqrt2 = ((1 + e^{ia})|0> + (1 - e^{ia})|1>) / 2
    Amplitude e = std::polar(1.0, alpha);
    return {(1.0 + e) / 2.0, (1.0 - e) / 2.0};
}

double QubitState::norm() const { return std::sqrt(std::norm(zero) + std::norm(one)); }

BlochVector QubitState::bloch() const {
    Amplitude c = std::conj(zero) * one;
    double nn = std::norm(zero) + std::norm(one);
    return {2 * c.real() / nn, 2 * c.imag() / nn, (std::norm(zero) - std::norm(one)) / nn};
}

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits);
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0, 0});
    amps_[0] = 1;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    std::size_t n = std::countr_zero(dim);
    check_qubit_count(n);
    StateVector s(n, std::move(amplitudes));
    if (std::abs(s.norm() - 1) > kNormTol) {
        throw std::invalid_argument("amplitudes are not normalized");
    }
    return s;
}

StateVector StateVector::kitaev_six_qubit_ground_state() {
    std::vector<Amplitude> amps(64, 0);
    for (const char *ket : {"000000", "111000", "001111", "110111"}) {
        amps[std::stoul(ket, nullptr, 2)] = 0.5;
    }
    return StateVector(6, std::move(amps));
}

StateVector StateVector::from_generators(std::span<const PauliString> gens) {
    if (gens.empty()) {
        throw std::invalid_argument("no generators given");
    }
    std::size_t n = gens.front().num_qubits();
    check_qubit_count(n);
    if (gens.size() != n) {
        throw std::invalid_argument("need exactly " + std::to_string(n) + " generators");
    }
    auto project = [&](StateVector s) {
        for (const auto &g : gens) {
            if (!g.is_hermitian() || g.num_qubits() != n) {
                throw std::invalid_argument("generator " + g.str() + " is not a Hermitian " + std::to_string(n) +
                                            "-qubit Pauli");
            }
            StateVector gs = s;
            gs.apply_pauli(g);
            for (std::size_t i = 0; i < s.amps_.size(); i++) {
                s.amps_[i] = 0.5 * (s.amps_[i] + gs.amps_[i]);
            }
        }
        return s;
    };
    // |0...0> works whenever the state has support there; otherwise fall back to a
    // fixed pseudo-random reference, which overlaps any state almost surely.
    StateVector s = project(StateVector(n));
    double nn = s.norm();
    if (nn < 1e-6) {
        std::mt19937_64 rng(0);
        std::normal_distribution<double> normal;
        std::vector<Amplitude> r(std::size_t{1} << n);
        for (auto &a : r) a = {normal(rng), normal(rng)};
        s = project(StateVector(n, std::move(r)));
        nn = s.norm();
    }
    if (nn < 1e-9) {
        throw std::invalid_argument("generators have no common +1 eigenstate");
    }
    for (auto &a : s.amps_) a /= nn;
    // The projector is a rank-1 check only if the set is complete; verify.
    for (const auto &g : gens) {
        if (std::abs(s.pauli_expectation(g) - 1) > 1e-9) {
            throw std::invalid_argument("generators do not pin down a common eigenstate");
        }
    }
    return s;
}

StateVector StateVector::from_tableau(const StabilizerTableau &t) { return from_generators(t.stabilizers()); }

Amplitude StateVector::amplitude(std::string_view ket) const {
    if (ket.size() != num_qubits_) {
        throw std::invalid_argument("ket length does not match qubit count");
    }
    std::size_t index = 0;
    for (char c : ket) {
        index <<= 1;
        if (c == '1' || c == 'V') {
            index |= 1;
        } else if (c != '0' && c != 'H') {
            throw std::invalid_argument(std::string("bad ket symbol '") + c + "'");
        }
    }
    return amps_[index];
}

double StateVector::norm() const {
    double s = 0;
    for (const auto &a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::apply(const CliffordGate &gate) {
    gate.validate(num_qubits_);
    if (gate.is_two_qubit()) {
        std::size_t t[2] = {gate.target, gate.target2};
        apply_unitary(gate.matrix(), t);
    } else {
        std::size_t t[1] = {gate.target};
        apply_unitary(gate.matrix(), t);
    }
}

void StateVector::apply_unitary(const Eigen::MatrixXcd &u, std::span<const std::size_t> targets) {
    std::size_t k = targets.size();
    if (k != 1 && k != 2) {
        throw std::invalid_argument("unitary must act on one or two qubits");
    }
    std::size_t d = std::size_t{1} << k;
    if (u.rows() != static_cast<Eigen::Index>(d) || u.cols() != static_cast<Eigen::Index>(d)) {
        throw std::invalid_argument("unitary dimension does not match target count");
    }
    if (((u.adjoint() * u) - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > kNormTol) {
        throw std::invalid_argument("matrix is not unitary");
    }
    for (auto q : targets) {
        if (q < 1 || q > num_qubits_) {
            throw std::out_of_range("target qubit " + std::to_string(q) + " out of range");
        }
    }
    if (k == 2 && targets[0] == targets[1]) {
        throw std::invalid_argument("two-qubit unitary needs distinct targets");
    }
    std::vector<std::size_t> bits(k);
    std::size_t mask = 0;
    for (std::size_t j = 0; j < k; j++) {
        bits[j] = bit_of(targets[j]);
        mask |= bits[j];
    }
    std::vector<std::size_t> idx(d);
    std::vector<Amplitude> in(d);
    for (std::size_t base = 0; base < amps_.size(); base++) {
        if (base & mask) continue;
        for (std::size_t m = 0; m < d; m++) {
            std::size_t i = base;
            for (std::size_t j = 0; j < k; j++) {
                if ((m >> (k - 1 - j)) & 1) i |= bits[j];
            }
            idx[m] = i;
            in[m] = amps_[i];
        }
        for (std::size_t r = 0; r < d; r++) {
            Amplitude acc = 0;
            for (std::size_t c = 0; c < d; c++) acc += u(r, c) * in[c];
            amps_[idx[r]] = acc;
        }
    }
}

void StateVector::apply_pauli(const PauliString &p) {
    if (p.num_qubits() != num_qubits_) {
        throw std::invalid_argument("Pauli size does not match state");
    }
    std::size_t flip = 0, zmask = 0;
    int y_count = 0;
    for (auto f : p.factors()) {
        auto l = static_cast<uint8_t>(f.letter);
        if (l & 1) flip |= bit_of(f.qubit);
        if (l & 2) zmask |= bit_of(f.qubit);
        if (l == 3) y_count++;
    }
    Amplitude base = p.phase().value() * Phase::from_log_i(y_count).value();
    std::vector<Amplitude> out(amps_.size());
    for (std::size_t b = 0; b < amps_.size(); b++) {
        bool neg = std::popcount(b & zmask) & 1;
        out[b ^ flip] = (neg ? -base : base) * amps_[b];
    }
    amps_ = std::move(out);
}

double StateVector::pauli_expectation(const PauliString &p) const {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("observable " + p.str() + " is not Hermitian");
    }
    StateVector ps = *this;
    ps.apply_pauli(p);
    return inner(ps).real();
}

double StateVector::coincidence_probability(std::span<const StateProjector> projectors) const {
    std::vector<Amplitude> psi = amps_;
    std::vector<bool> seen(num_qubits_ + 1, false);
    for (const auto &pr : projectors) {
        if (pr.qubit < 1 || pr.qubit > num_qubits_) {
            throw std::out_of_range("projector qubit " + std::to_string(pr.qubit) + " out of range");
        }
        if (seen[pr.qubit]) {
            throw std::invalid_argument("qubit " + std::to_string(pr.qubit) + " projected twice");
        }
        seen[pr.qubit] = true;
        if (std::abs(pr.state.norm() - 1) > 1e-9) {
            throw std::invalid_argument("projector state on qubit " + std::to_string(pr.qubit) + " not normalized");
        }
        std::size_t bit = bit_of(pr.qubit);
        for (std::size_t i0 = 0; i0 < psi.size(); i0++) {
            if (i0 & bit) continue;
            std::size_t i1 = i0 | bit;
            Amplitude c = std::conj(pr.state.zero) * psi[i0] + std::conj(pr.state.one) * psi[i1];
            psi[i0] = pr.state.zero * c;
            psi[i1] = pr.state.one * c;
        }
    }
    double p = 0;
    for (const auto &a : psi) p += std::norm(a);
    return p;
}

Amplitude StateVector::inner(const StateVector &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("state size mismatch");
    }
    Amplitude acc = 0;
    for (std::size_t i = 0; i < amps_.size(); i++) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

std::string StateVector::dump_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "index,bitstring,real,imag\n";
    for (std::size_t i = 0; i < amps_.size(); i++) {
        if (std::abs(amps_[i]) <= 1e-12) continue;
        std::string bits(num_qubits_, '0');
        for (std::size_t q = 1; q <= num_qubits_; q++) {
            if (i & bit_of(q)) bits[q - 1] = '1';
        }
        out << i << "," << bits << "," << amps_[i].real() << "," << amps_[i].imag() << "\n";
    }
    return out.str();
}

double fidelity(const StateVector &s, const StateVector &reference) { return std::norm(reference.inner(s)); }

double relative_phase(const StateVector &s, const StateVector &a, const StateVector &b) {
    constexpr double kTol = 1e-9;
    if (std::abs(a.inner(b)) > kTol) {
        throw std::invalid_argument("relative_phase: basis states are not orthogonal");
    }
    Amplitude ca = a.inner(s);
    Amplitude cb = b.inner(s);
    if (std::abs(ca) < kTol || std::abs(cb) < kTol) {
        throw std::invalid_argument("relative_phase: a component vanishes, phase undefined");
    }
    double residual = 0;
    for (std::size_t i = 0; i < s.dimension(); i++) {
        residual += std::norm(s.amplitude(i) - ca * a.amplitude(i) - cb * b.amplitude(i));
    }
    if (std::sqrt(residual) > kTol) {
        throw std::invalid_argument("relative_phase: state lies outside the span of the basis");
    }
    double phi = std::arg(cb / ca);
    return phi <= -std::numbers::pi ? phi + 2 * std::numbers::pi : phi;
}

}  // namespace anyon
