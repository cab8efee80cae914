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

#ifndef ANYON_PAULI_STRING_H
#define ANYON_PAULI_STRING_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace anyon {

/// An element of the group {+1, +i, -1, -i}, stored as the exponent k of i^k.
class Phase {
   public:
    constexpr Phase() = default;
    static constexpr Phase from_log_i(int k) {
        Phase p;
        p.log_i_ = static_cast<uint8_t>(((k % 4) + 4) % 4);
        return p;
    }
    static constexpr Phase plus() { return from_log_i(0); }
    static constexpr Phase minus() { return from_log_i(2); }
    static constexpr Phase sign_of(bool negative) { return from_log_i(negative ? 2 : 0); }

    constexpr uint8_t log_i() const { return log_i_; }
    /// True for +1 and -1.
    constexpr bool is_real() const { return (log_i_ & 1) == 0; }
    constexpr bool is_negative() const { return log_i_ == 2; }
    std::complex<double> value() const;

    constexpr Phase operator*(Phase other) const { return from_log_i(log_i_ + other.log_i_); }
    constexpr Phase &operator*=(Phase other) { return *this = *this * other; }
    constexpr Phase conj() const { return from_log_i(4 - log_i_); }
    constexpr bool operator==(const Phase &) const = default;

   private:
    uint8_t log_i_ = 0;
};

enum class PauliLetter : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(PauliLetter letter);

/// One non-identity factor of a Pauli string. Qubit labels are 1-based.
struct PauliFactor {
    std::size_t qubit;
    PauliLetter letter;
};

/// An n-qubit Pauli operator  phase * (sigma_1 ⊗ ... ⊗ sigma_n)  in symplectic form.
///
/// Qubit j carries I/X/Z/Y as (x, z) = (0,0)/(1,0)/(0,1)/(1,1), so a Y factor is the
/// Hermitian Pauli-Y matrix and the string is Hermitian exactly when the phase is real.
/// Bits are packed 64 per word; bits past n in the last word are always zero.
///
/// All qubit arguments in the public interface are 1-based.
class PauliString {
   public:
    /// The identity on n qubits.
    explicit PauliString(std::size_t num_qubits);

    static PauliString from_support(
        std::size_t num_qubits, std::span<const PauliFactor> factors, Phase phase = Phase::plus());
    static PauliString from_support(
        std::size_t num_qubits, std::initializer_list<PauliFactor> factors, Phase phase = Phase::plus());
    /// Product of `letter` over the listed qubits, e.g. all_of(6, X, {3,4,5,6}).
    static PauliString all_of(std::size_t num_qubits, PauliLetter letter, std::span<const std::size_t> qubits);
    static PauliString all_of(
        std::size_t num_qubits, PauliLetter letter, std::initializer_list<std::size_t> qubits);

    /// Parses the `+X1X2X3` / `-Z3` / `+iY2Z5` text form. `+I` is the identity.
    static PauliString parse(std::string_view text, std::size_t num_qubits);
    std::string str() const;

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t num_words() const { return xs_.size(); }
    Phase phase() const { return phase_; }
    void set_phase(Phase phase) { phase_ = phase; }
    bool is_hermitian() const { return phase_.is_real(); }

    PauliLetter letter(std::size_t qubit) const;
    void set_letter(std::size_t qubit, PauliLetter letter);
    std::size_t weight() const;
    bool is_identity_up_to_phase() const;
    /// 1-based labels of the non-identity qubits, ascending.
    std::vector<std::size_t> support() const;
    std::vector<PauliFactor> factors() const;

    std::span<const uint64_t> x_words() const { return xs_; }
    std::span<const uint64_t> z_words() const { return zs_; }
    std::span<uint64_t> x_words() { return xs_; }
    std::span<uint64_t> z_words() { return zs_; }

    /// In-place right multiplication: *this = *this * rhs, phase exact.
    PauliString &operator*=(const PauliString &rhs);
    bool operator==(const PauliString &) const = default;

   private:
    std::size_t num_qubits_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    Phase phase_;
};

PauliString multiply(const PauliString &a, const PauliString &b);
inline PauliString operator*(const PauliString &a, const PauliString &b) { return multiply(a, b); }

/// True iff the symplectic overlap count of a and b is even.
bool commutes(const PauliString &a, const PauliString &b);

/// Dense 2^n x 2^n matrix with qubit 1 as the most significant bit of the row index.
/// Limited to n <= 12.
Eigen::MatrixXcd to_dense(const PauliString &p);

inline constexpr std::size_t kMaxDenseQubits = 12;

}  // namespace anyon

#endif
