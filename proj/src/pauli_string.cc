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

#include "anyon/pauli_string.h"

#include <bit>
#include <charconv>
#include <stdexcept>

namespace anyon {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

void check_same_size(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "Pauli string size mismatch: " + std::to_string(a.num_qubits()) + " vs " +
            std::to_string(b.num_qubits()));
    }
}

void check_qubit(std::size_t qubit, std::size_t n) {
    if (qubit < 1 || qubit > n) {
        throw std::out_of_range(
            "qubit " + std::to_string(qubit) + " out of range 1.." + std::to_string(n));
    }
}

}  // namespace

std::complex<double> Phase::value() const {
    switch (log_i_) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

char to_char(PauliLetter letter) { return "IXZY"[static_cast<uint8_t>(letter)]; }

PauliString::PauliString(std::size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
    if (num_qubits == 0) {
        throw std::invalid_argument("Pauli string needs at least one qubit");
    }
}

PauliString PauliString::from_support(
    std::size_t num_qubits, std::span<const PauliFactor> factors, Phase phase) {
    PauliString result(num_qubits);
    for (const auto &f : factors) {
        check_qubit(f.qubit, num_qubits);
        if (result.letter(f.qubit) != PauliLetter::I) {
            throw std::invalid_argument("duplicate qubit " + std::to_string(f.qubit) + " in Pauli support");
        }
        if (f.letter == PauliLetter::I) {
            throw std::invalid_argument("identity factor listed explicitly for qubit " + std::to_string(f.qubit));
        }
        result.set_letter(f.qubit, f.letter);
    }
    result.phase_ = phase;
    return result;
}

PauliString PauliString::from_support(
    std::size_t num_qubits, std::initializer_list<PauliFactor> factors, Phase phase) {
    return from_support(num_qubits, std::span<const PauliFactor>(factors.begin(), factors.size()), phase);
}

PauliString PauliString::all_of(std::size_t num_qubits, PauliLetter letter, std::span<const std::size_t> qubits) {
    std::vector<PauliFactor> factors;
    factors.reserve(qubits.size());
    for (auto q : qubits) {
        factors.push_back({q, letter});
    }
    return from_support(num_qubits, factors);
}

PauliString PauliString::all_of(
    std::size_t num_qubits, PauliLetter letter, std::initializer_list<std::size_t> qubits) {
    return all_of(num_qubits, letter, std::span<const std::size_t>(qubits.begin(), qubits.size()));
}

PauliLetter PauliString::letter(std::size_t qubit) const {
    check_qubit(qubit, num_qubits_);
    std::size_t k = qubit - 1;
    uint8_t x = (xs_[k >> 6] >> (k & 63)) & 1;
    uint8_t z = (zs_[k >> 6] >> (k & 63)) & 1;
    return static_cast<PauliLetter>(x | (z << 1));
}

void PauliString::set_letter(std::size_t qubit, PauliLetter letter) {
    check_qubit(qubit, num_qubits_);
    std::size_t k = qubit - 1;
    uint64_t bit = uint64_t{1} << (k & 63);
    auto v = static_cast<uint8_t>(letter);
    xs_[k >> 6] = (v & 1) ? (xs_[k >> 6] | bit) : (xs_[k >> 6] & ~bit);
    zs_[k >> 6] = (v & 2) ? (zs_[k >> 6] | bit) : (zs_[k >> 6] & ~bit);
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < xs_.size(); i++) {
        w += std::popcount(xs_[i] | zs_[i]);
    }
    return w;
}

bool PauliString::is_identity_up_to_phase() const {
    for (std::size_t i = 0; i < xs_.size(); i++) {
        if (xs_[i] | zs_[i]) {
            return false;
        }
    }
    return true;
}

std::vector<std::size_t> PauliString::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < xs_.size(); i++) {
        uint64_t w = xs_[i] | zs_[i];
        while (w) {
            out.push_back(i * 64 + std::countr_zero(w) + 1);
            w &= w - 1;
        }
    }
    return out;
}

std::vector<PauliFactor> PauliString::factors() const {
    std::vector<PauliFactor> out;
    for (auto q : support()) {
        out.push_back({q, letter(q)});
    }
    return out;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    check_same_size(*this, rhs);
    // Per qubit, sigma_a * sigma_b = i^g sigma_c with g = +1 for the cyclic
    // orders XY, YZ, ZX and g = -1 for the reverse orders.
    int log_i = phase_.log_i() + rhs.phase_.log_i();
    for (std::size_t i = 0; i < xs_.size(); i++) {
        uint64_t x1 = xs_[i], z1 = zs_[i], x2 = rhs.xs_[i], z2 = rhs.zs_[i];
        uint64_t a_x = x1 & ~z1, a_y = x1 & z1, a_z = ~x1 & z1;
        uint64_t b_x = x2 & ~z2, b_y = x2 & z2, b_z = ~x2 & z2;
        uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
        uint64_t minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
        log_i += std::popcount(plus) - std::popcount(minus);
        xs_[i] = x1 ^ x2;
        zs_[i] = z1 ^ z2;
    }
    phase_ = Phase::from_log_i(log_i);
    return *this;
}

PauliString multiply(const PauliString &a, const PauliString &b) {
    PauliString result = a;
    result *= b;
    return result;
}

bool commutes(const PauliString &a, const PauliString &b) {
    check_same_size(a, b);
    auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
    uint64_t acc = 0;
    for (std::size_t i = 0; i < ax.size(); i++) {
        acc ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
    }
    return (std::popcount(acc) & 1) == 0;
}

std::string PauliString::str() const {
    static constexpr const char *kPrefix[] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[phase_.log_i()];
    auto sup = support();
    if (sup.empty()) {
        return out + "I";
    }
    for (auto q : sup) {
        out += to_char(letter(q));
        out += std::to_string(q);
    }
    return out;
}

PauliString PauliString::parse(std::string_view text, std::size_t num_qubits) {
    auto fail = [&](const std::string &why) {
        throw std::invalid_argument("cannot parse Pauli string '" + std::string(text) + "': " + why);
    };
    std::size_t pos = 0;
    int log_i = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        log_i = text[pos] == '-' ? 2 : 0;
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        log_i += 1;
        pos++;
    }
    PauliString result(num_qubits);
    result.phase_ = Phase::from_log_i(log_i);
    if (text.substr(pos) == "I") {
        return result;
    }
    if (pos == text.size()) {
        fail("no factors");
    }
    std::size_t previous = 0;
    while (pos < text.size()) {
        PauliLetter letter = PauliLetter::I;
        switch (text[pos]) {
            case 'X':
                letter = PauliLetter::X;
                break;
            case 'Y':
                letter = PauliLetter::Y;
                break;
            case 'Z':
                letter = PauliLetter::Z;
                break;
            default:
                fail(std::string("unexpected character '") + text[pos] + "'");
        }
        pos++;
        std::size_t qubit = 0;
        auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), qubit);
        if (ec != std::errc() || end == text.data() + pos) {
            fail("missing qubit index");
        }
        pos = static_cast<std::size_t>(end - text.data());
        if (qubit < 1 || qubit > num_qubits) {
            fail("qubit " + std::to_string(qubit) + " out of range");
        }
        if (qubit <= previous) {
            fail("qubit indices must be strictly ascending");
        }
        previous = qubit;
        result.set_letter(qubit, letter);
    }
    return result;
}

Eigen::MatrixXcd to_dense(const PauliString &p) {
    std::size_t n = p.num_qubits();
    if (n > kMaxDenseQubits) {
        throw std::invalid_argument(
            "to_dense limited to " + std::to_string(kMaxDenseQubits) + " qubits, got " + std::to_string(n));
    }
    // P|b> = phase * prod_j (i^{x_j z_j} (-1)^{z_j b_j}) |b xor x>, with Y = i X Z.
    std::size_t dim = std::size_t{1} << n;
    uint64_t flip = 0, zmask = 0;
    int y_count = 0;
    for (std::size_t q = 1; q <= n; q++) {
        auto l = static_cast<uint8_t>(p.letter(q));
        uint64_t bit = uint64_t{1} << (n - q);
        if (l & 1) flip |= bit;
        if (l & 2) zmask |= bit;
        if (l == 3) y_count++;
    }
    std::complex<double> base = p.phase().value() * Phase::from_log_i(y_count).value();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; col++) {
        bool neg = std::popcount(col & zmask) & 1;
        m(col ^ flip, col) = neg ? -base : base;
    }
    return m;
}

}  // namespace anyon
