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

#include "anyon/tableau.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <sstream>

namespace anyon {

namespace {

/// Word indices where p is non-identity. Commutation checks against p only need these.
std::vector<std::size_t> nonzero_words(const PauliString &p) {
    std::vector<std::size_t> out;
    auto xs = p.x_words(), zs = p.z_words();
    for (std::size_t i = 0; i < xs.size(); i++) {
        if (xs[i] | zs[i]) {
            out.push_back(i);
        }
    }
    return out;
}

bool anticommutes_on(const PauliString &row, const PauliString &p, std::span<const std::size_t> words) {
    auto rx = row.x_words(), rz = row.z_words(), px = p.x_words(), pz = p.z_words();
    uint64_t acc = 0;
    for (auto w : words) {
        acc ^= (rx[w] & pz[w]) ^ (rz[w] & px[w]);
    }
    return std::popcount(acc) & 1;
}

/// Generator matrix stored by qubit column: for each qubit, the x and z bits of every
/// row packed into words. A gate then touches only one or two columns.
class ColumnTableau {
   public:
    ColumnTableau(std::size_t rows, std::size_t qubits)
        : rows_(rows), qubits_(qubits), words_((rows + 63) / 64),
          xs_(qubits * words_, 0), zs_(qubits * words_, 0), signs_(words_, 0) {}

    std::size_t qubits() const { return qubits_; }
    std::span<uint64_t> x(std::size_t q) { return {xs_.data() + q * words_, words_}; }
    std::span<uint64_t> z(std::size_t q) { return {zs_.data() + q * words_, words_}; }

    bool x_bit(std::size_t q, std::size_t row) const { return (xs_[q * words_ + (row >> 6)] >> (row & 63)) & 1; }
    bool z_bit(std::size_t q, std::size_t row) const { return (zs_[q * words_ + (row >> 6)] >> (row & 63)) & 1; }
    bool sign(std::size_t row) const { return (signs_[row >> 6] >> (row & 63)) & 1; }
    void set_x(std::size_t q, std::size_t row) { xs_[q * words_ + (row >> 6)] |= uint64_t{1} << (row & 63); }
    void set_z(std::size_t q, std::size_t row) { zs_[q * words_ + (row >> 6)] |= uint64_t{1} << (row & 63); }
    void set_sign(std::size_t row) { signs_[row >> 6] |= uint64_t{1} << (row & 63); }

    /// Number of rows >= first with a non-identity entry on qubit q.
    std::size_t count_rows_from(std::size_t q, std::size_t first) const {
        std::size_t count = 0;
        for (std::size_t w = first >> 6; w < words_; w++) {
            uint64_t m = xs_[q * words_ + w] | zs_[q * words_ + w];
            if (w == (first >> 6)) m &= ~uint64_t{0} << (first & 63);
            count += std::popcount(m);
        }
        return count;
    }

    template <typename F>
    void for_each_row_from(std::size_t q, std::size_t first, F &&f) const {
        for (std::size_t w = first >> 6; w < words_; w++) {
            uint64_t m = xs_[q * words_ + w] | zs_[q * words_ + w];
            if (w == (first >> 6)) m &= ~uint64_t{0} << (first & 63);
            for (; m; m &= m - 1) f(w * 64 + std::countr_zero(m));
        }
    }

    /// Conjugates every row by the gate (0-based qubits).
    void apply(GateKind kind, std::size_t a, std::size_t b) {
        auto xa = x(a), za = z(a);
        switch (kind) {
            case GateKind::X:
                for (std::size_t w = 0; w < words_; w++) signs_[w] ^= za[w];
                break;
            case GateKind::Z:
                for (std::size_t w = 0; w < words_; w++) signs_[w] ^= xa[w];
                break;
            case GateKind::Hadamard:
                for (std::size_t w = 0; w < words_; w++) {
                    signs_[w] ^= xa[w] & za[w];
                    std::swap(xa[w], za[w]);
                }
                break;
            case GateKind::SqrtZ:
                for (std::size_t w = 0; w < words_; w++) {
                    signs_[w] ^= xa[w] & za[w];
                    za[w] ^= xa[w];
                }
                break;
            case GateKind::SqrtZDagger:
                for (std::size_t w = 0; w < words_; w++) {
                    signs_[w] ^= xa[w] & ~za[w];
                    za[w] ^= xa[w];
                }
                break;
            case GateKind::CNOT: {
                auto xb = x(b), zb = z(b);
                for (std::size_t w = 0; w < words_; w++) {
                    signs_[w] ^= xa[w] & zb[w] & ~(xb[w] ^ za[w]);
                    xb[w] ^= xa[w];
                    za[w] ^= zb[w];
                }
                break;
            }
            case GateKind::CZ: {
                auto xb = x(b), zb = z(b);
                for (std::size_t w = 0; w < words_; w++) {
                    signs_[w] ^= xa[w] & xb[w] & (za[w] ^ zb[w]);
                    zb[w] ^= xa[w];
                    za[w] ^= xb[w];
                }
                break;
            }
        }
    }

    std::vector<PauliString> to_rows() const {
        std::vector<PauliString> out(rows_, PauliString(qubits_));
        for (std::size_t q = 0; q < qubits_; q++) {
            for (std::size_t w = 0; w < words_; w++) {
                uint64_t xw = xs_[q * words_ + w];
                uint64_t zw = zs_[q * words_ + w];
                uint64_t bit = uint64_t{1} << (q & 63);
                for (uint64_t m = xw; m; m &= m - 1) {
                    out[w * 64 + std::countr_zero(m)].x_words()[q >> 6] |= bit;
                }
                for (uint64_t m = zw; m; m &= m - 1) {
                    out[w * 64 + std::countr_zero(m)].z_words()[q >> 6] |= bit;
                }
            }
        }
        for (std::size_t r = 0; r < rows_; r++) {
            out[r].set_phase(Phase::sign_of(sign(r)));
        }
        return out;
    }

   private:
    std::size_t rows_;
    std::size_t qubits_;
    std::size_t words_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint64_t> signs_;
};

std::string join_indices(std::span<const std::size_t> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); i++) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s;
}

}  // namespace

namespace detail {

/// For each qubit, which stabilizer / destabilizer rows carry an X or Z there.
/// Lets a sparse observable find the rows it anticommutes with in O(weight * n / 64).
struct TableauIndexCache {
    std::once_flag once;
    std::size_t words = 0;
    std::vector<uint64_t> stab_x, stab_z, destab_x, destab_z;

    void build(const std::vector<PauliString> &stabs, const std::vector<PauliString> &destabs) {
        std::size_t n = stabs.size();
        words = (n + 63) / 64;
        auto fill = [&](const std::vector<PauliString> &rows, std::vector<uint64_t> &xs, std::vector<uint64_t> &zs) {
            xs.assign(n * words, 0);
            zs.assign(n * words, 0);
            for (std::size_t r = 0; r < n; r++) {
                uint64_t bit = uint64_t{1} << (r & 63);
                auto rx = rows[r].x_words(), rz = rows[r].z_words();
                for (std::size_t w = 0; w < rx.size(); w++) {
                    for (uint64_t m = rx[w]; m; m &= m - 1) xs[(w * 64 + std::countr_zero(m)) * words + (r >> 6)] |= bit;
                    for (uint64_t m = rz[w]; m; m &= m - 1) zs[(w * 64 + std::countr_zero(m)) * words + (r >> 6)] |= bit;
                }
            }
        };
        fill(stabs, stab_x, stab_z);
        fill(destabs, destab_x, destab_z);
    }

    /// Bit r of the result is set iff row r anticommutes with p.
    std::vector<uint64_t> anticommuting_rows(const PauliString &p, bool destabilizers) const {
        const auto &xs = destabilizers ? destab_x : stab_x;
        const auto &zs = destabilizers ? destab_z : stab_z;
        std::vector<uint64_t> mask(words, 0);
        for (auto f : p.factors()) {
            std::size_t q = f.qubit - 1;
            auto l = static_cast<uint8_t>(f.letter);
            // p has X on q: rows with Z there anticommute; p has Z: rows with X.
            if (l & 1) for (std::size_t w = 0; w < words; w++) mask[w] ^= zs[q * words + w];
            if (l & 2) for (std::size_t w = 0; w < words; w++) mask[w] ^= xs[q * words + w];
        }
        return mask;
    }
};

}  // namespace detail

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

void conjugate_in_place(PauliString &p, const CliffordGate &gate) {
    gate.validate(p.num_qubits());
    std::size_t a = gate.target - 1;
    auto xs = p.x_words();
    auto zs = p.z_words();
    auto bit = [](std::span<uint64_t> v, std::size_t k) -> bool { return (v[k >> 6] >> (k & 63)) & 1; };
    auto flip = [](std::span<uint64_t> v, std::size_t k) { v[k >> 6] ^= uint64_t{1} << (k & 63); };
    bool xa = bit(xs, a), za = bit(zs, a);
    bool negate = false;
    switch (gate.kind) {
        case GateKind::X:
            negate = za;
            break;
        case GateKind::Z:
            negate = xa;
            break;
        case GateKind::Hadamard:
            negate = xa && za;
            if (xa != za) {
                flip(xs, a);
                flip(zs, a);
            }
            break;
        case GateKind::SqrtZ:
            negate = xa && za;
            if (xa) flip(zs, a);
            break;
        case GateKind::SqrtZDagger:
            negate = xa && !za;
            if (xa) flip(zs, a);
            break;
        case GateKind::CNOT: {
            std::size_t b = gate.target2 - 1;
            bool xb = bit(xs, b), zb = bit(zs, b);
            negate = xa && zb && (xb == za);
            if (xa) flip(xs, b);
            if (zb) flip(zs, a);
            break;
        }
        case GateKind::CZ: {
            std::size_t b = gate.target2 - 1;
            bool xb = bit(xs, b), zb = bit(zs, b);
            negate = xa && xb && (za != zb);
            if (xa) flip(zs, b);
            if (xb) flip(zs, a);
            break;
        }
    }
    if (negate) {
        p.set_phase(p.phase() * Phase::minus());
    }
}

PauliString conjugated(const PauliString &p, const CliffordGate &gate) {
    PauliString out = p;
    conjugate_in_place(out, gate);
    return out;
}

StabilizerTableau::StabilizerTableau(std::size_t num_qubits, uint64_t seed)
    : num_qubits_(num_qubits), rng_(seed), index_(std::make_shared<detail::TableauIndexCache>()) {
    if (num_qubits == 0) {
        throw std::invalid_argument("tableau needs at least one qubit");
    }
    stabilizers_.reserve(num_qubits);
    destabilizers_.reserve(num_qubits);
    for (std::size_t q = 1; q <= num_qubits; q++) {
        stabilizers_.push_back(PauliString::from_support(num_qubits, {{q, PauliLetter::Z}}));
        destabilizers_.push_back(PauliString::from_support(num_qubits, {{q, PauliLetter::X}}));
    }
}

StabilizerTableau::StabilizerTableau(std::size_t num_qubits, std::vector<PauliString> stabilizers,
                                     std::vector<PauliString> destabilizers, uint64_t seed)
    : num_qubits_(num_qubits),
      stabilizers_(std::move(stabilizers)),
      destabilizers_(std::move(destabilizers)),
      rng_(seed),
      index_(std::make_shared<detail::TableauIndexCache>()) {}

void StabilizerTableau::invalidate_index() { index_ = std::make_shared<detail::TableauIndexCache>(); }

const detail::TableauIndexCache &StabilizerTableau::index() const {
    std::call_once(index_->once, [this] { index_->build(stabilizers_, destabilizers_); });
    return *index_;
}

StabilizerTableau StabilizerTableau::from_generators(std::span<const PauliString> gens, uint64_t seed) {
    using Kind = GeneratorSetError::Kind;
    if (gens.empty()) {
        throw GeneratorSetError(Kind::WrongCount, {}, "no generators given");
    }
    std::size_t n = gens.front().num_qubits();
    if (gens.size() != n) {
        throw GeneratorSetError(Kind::WrongCount, {},
                                "need exactly " + std::to_string(n) + " generators on " + std::to_string(n) +
                                    " qubits, got " + std::to_string(gens.size()));
    }
    ColumnTableau work(n, n);
    for (std::size_t i = 0; i < n; i++) {
        const auto &g = gens[i];
        if (g.num_qubits() != n) {
            throw GeneratorSetError(Kind::WrongCount, {i}, "generator " + std::to_string(i) + " has wrong size");
        }
        if (!g.is_hermitian()) {
            throw GeneratorSetError(Kind::NonHermitian, {i}, "generator " + std::to_string(i) + " is not Hermitian");
        }
        for (auto f : g.factors()) {
            auto l = static_cast<uint8_t>(f.letter);
            if (l & 1) work.set_x(f.qubit - 1, i);
            if (l & 2) work.set_z(f.qubit - 1, i);
        }
        if (g.phase().is_negative()) {
            work.set_sign(i);
        }
    }

    // Reduce each generator in turn to a single-qubit Z on a fresh pivot qubit, by
    // conjugating the whole set with a Clifford circuit U. Generators already reduced
    // are untouched by later steps, so at the end U G_i U† = ±Z_{pivot(i)}, and the
    // state is U† applied to a computational basis state.
    //
    // The gates for generator i act only on its support S_i, so a later row can only
    // change on S_i, and only if it already overlapped S_i. Each row therefore keeps a
    // candidate support list instead of being rescanned across all columns. The pivot
    // is the support qubit shared with the fewest unreduced rows, which keeps fill-in
    // low for local generator sets.
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_of_qubit(n, kNone);
    std::vector<std::size_t> pivot(n);
    std::vector<std::vector<std::size_t>> candidates(n);
    for (std::size_t i = 0; i < n; i++) {
        candidates[i] = gens[i].support();
        for (auto &q : candidates[i]) q -= 1;
    }
    std::vector<CliffordGate> circuit;
    auto gate = [&](CliffordGate g) {
        work.apply(g.kind, g.target - 1, g.is_two_qubit() ? g.target2 - 1 : 0);
        circuit.push_back(g);
    };
    for (std::size_t i = 0; i < n; i++) {
        auto &cand = candidates[i];
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::vector<std::size_t> support;
        std::vector<std::size_t> certificate;
        std::size_t a = kNone;
        std::size_t best_count = kNone;
        bool best_has_x = false;
        for (auto q : cand) {
            bool xq = work.x_bit(q, i), zq = work.z_bit(q, i);
            if (!xq && !zq) continue;
            support.push_back(q);
            if (pivot_of_qubit[q] != kNone) {
                if (xq) {
                    std::vector<std::size_t> pair{pivot_of_qubit[q], i};
                    throw GeneratorSetError(Kind::NonCommuting, pair,
                                            "generators " + join_indices(pair) + " anticommute");
                }
                certificate.push_back(pivot_of_qubit[q]);
                continue;
            }
            std::size_t count = work.count_rows_from(q, i + 1);
            if (count < best_count || (count == best_count && xq && !best_has_x)) {
                a = q;
                best_count = count;
                best_has_x = xq;
            }
        }
        if (a == kNone) {
            bool negative = work.sign(i);
            for (auto j : certificate) {
                negative ^= work.sign(j);
            }
            certificate.push_back(i);
            std::sort(certificate.begin(), certificate.end());
            if (negative) {
                throw GeneratorSetError(Kind::MinusIdentity, certificate,
                                        "generators " + join_indices(certificate) + " multiply to -identity");
            }
            throw GeneratorSetError(Kind::Dependent, certificate,
                                    "generators " + join_indices(certificate) + " are dependent");
        }
        std::vector<std::size_t> touched;
        for (auto q : support) {
            work.for_each_row_from(q, i + 1, [&](std::size_t j) { touched.push_back(j); });
        }
        std::size_t qa = a + 1;
        if (!work.x_bit(a, i)) {
            gate(CliffordGate::h(qa));
        } else if (work.z_bit(a, i)) {
            gate(CliffordGate::sqrt_z_dag(qa));
        }
        for (auto q : support) {
            if (q != a && work.x_bit(q, i)) {
                gate(CliffordGate::cnot(qa, q + 1));
            }
        }
        for (auto q : support) {
            if (q != a && work.z_bit(q, i)) {
                gate(CliffordGate::cz(qa, q + 1));
            }
        }
        if (work.z_bit(a, i)) {
            gate(CliffordGate::sqrt_z_dag(qa));
        }
        gate(CliffordGate::h(qa));
        pivot[i] = a;
        pivot_of_qubit[a] = i;
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (auto j : touched) {
            auto &cj = candidates[j];
            cj.insert(cj.end(), support.begin(), support.end());
            if (cj.size() > 64) {
                std::sort(cj.begin(), cj.end());
                cj.erase(std::unique(cj.begin(), cj.end()), cj.end());
                std::erase_if(cj, [&](std::size_t q) { return !work.x_bit(q, j) && !work.z_bit(q, j); });
            }
        }
        std::vector<std::size_t>().swap(cand);
    }

    // Destabilizer i is U† X_{pivot(i)} U.
    ColumnTableau destab(n, n);
    for (std::size_t i = 0; i < n; i++) {
        destab.set_x(pivot[i], i);
    }
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        auto inv = it->inverse();
        destab.apply(inv.kind, inv.target - 1, inv.is_two_qubit() ? inv.target2 - 1 : 0);
    }
    std::vector<PauliString> stabilizers(gens.begin(), gens.end());
    return StabilizerTableau(n, std::move(stabilizers), destab.to_rows(), seed);
}

void StabilizerTableau::apply(const CliffordGate &gate) {
    gate.validate(num_qubits_);
    invalidate_index();
    for (auto &s : stabilizers_) {
        conjugate_in_place(s, gate);
    }
    for (auto &d : destabilizers_) {
        conjugate_in_place(d, gate);
    }
}

void StabilizerTableau::apply(std::span<const CliffordGate> gates) {
    for (const auto &g : gates) {
        apply(g);
    }
}

void StabilizerTableau::check_observable(const PauliString &p) const {
    if (p.num_qubits() != num_qubits_) {
        throw std::invalid_argument("observable has " + std::to_string(p.num_qubits()) + " qubits, state has " +
                                    std::to_string(num_qubits_));
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("observable " + p.str() + " is not Hermitian");
    }
}

std::size_t StabilizerTableau::first_anticommuting_stabilizer(const PauliString &p) const {
    auto words = nonzero_words(p);
    for (std::size_t i = 0; i < num_qubits_; i++) {
        if (anticommutes_on(stabilizers_[i], p, words)) {
            return i;
        }
    }
    return num_qubits_;
}

int StabilizerTableau::expectation(const PauliString &p) const {
    check_observable(p);
    const auto &idx = index();
    for (auto w : idx.anticommuting_rows(p, false)) {
        if (w) {
            return 0;
        }
    }
    // p commutes with the whole group, so ±p = product of the stabilizers whose
    // destabilizers it anticommutes with.
    PauliString product(num_qubits_);
    auto mask = idx.anticommuting_rows(p, true);
    for (std::size_t w = 0; w < mask.size(); w++) {
        for (uint64_t m = mask[w]; m; m &= m - 1) {
            product *= stabilizers_[w * 64 + std::countr_zero(m)];
        }
    }
    if (!std::equal(product.x_words().begin(), product.x_words().end(), p.x_words().begin()) ||
        !std::equal(product.z_words().begin(), product.z_words().end(), p.z_words().begin())) {
        throw std::logic_error("tableau is inconsistent: stabilizer product does not reproduce " + p.str());
    }
    return product.phase() == p.phase() ? +1 : -1;
}

double StabilizerTableau::postselect(const PauliString &p, int outcome) {
    check_observable(p);
    if (outcome != 1 && outcome != -1) {
        throw std::invalid_argument("measurement outcome must be +1 or -1");
    }
    std::size_t k = first_anticommuting_stabilizer(p);
    if (k == num_qubits_) {
        return expectation(p) == outcome ? 1.0 : 0.0;
    }
    invalidate_index();
    auto words = nonzero_words(p);
    const PauliString pivot = stabilizers_[k];
    for (std::size_t i = 0; i < num_qubits_; i++) {
        if (i != k && anticommutes_on(stabilizers_[i], p, words)) {
            stabilizers_[i] *= pivot;
        }
        if (i != k && anticommutes_on(destabilizers_[i], p, words)) {
            destabilizers_[i] *= pivot;
        }
    }
    destabilizers_[k] = pivot;
    stabilizers_[k] = p;
    if (outcome == -1) {
        stabilizers_[k].set_phase(p.phase() * Phase::minus());
    }
    return 0.5;
}

int StabilizerTableau::measure(const PauliString &p) {
    check_observable(p);
    int e = expectation(p);
    if (e != 0) {
        return e;
    }
    int outcome = std::bernoulli_distribution(0.5)(rng_) ? -1 : +1;
    postselect(p, outcome);
    return outcome;
}

double StabilizerTableau::projector_expectation(std::span<const QubitProjector> projectors) const {
    constexpr double kAxisTol = 1e-12;
    std::vector<bool> seen(num_qubits_ + 1, false);
    std::vector<PauliString> axis_terms;
    std::vector<QubitProjector> general;
    for (const auto &pr : projectors) {
        if (pr.qubit < 1 || pr.qubit > num_qubits_) {
            throw std::out_of_range("projector qubit " + std::to_string(pr.qubit) + " out of range");
        }
        if (seen[pr.qubit]) {
            throw std::invalid_argument("qubit " + std::to_string(pr.qubit) + " projected twice");
        }
        seen[pr.qubit] = true;
        if (std::abs(pr.direction.norm() - 1) > 1e-9) {
            throw std::invalid_argument("projector direction on qubit " + std::to_string(pr.qubit) +
                                        " is not a unit vector");
        }
        const double c[3] = {pr.direction.x, pr.direction.y, pr.direction.z};
        const PauliLetter letters[3] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
        bool axis = false;
        for (int k = 0; k < 3; k++) {
            if (std::abs(std::abs(c[k]) - 1) < kAxisTol) {
                axis_terms.push_back(
                    PauliString::from_support(num_qubits_, {{pr.qubit, letters[k]}}, Phase::sign_of(c[k] < 0)));
                axis = true;
            }
        }
        if (!axis) {
            general.push_back(pr);
        }
    }
    if (general.size() > kMaxGeneralProjectors) {
        throw std::invalid_argument("too many non-axis projectors: " + std::to_string(general.size()) + " > " +
                                    std::to_string(kMaxGeneralProjectors));
    }

    StabilizerTableau scratch = *this;
    double probability = 1;
    for (const auto &t : axis_terms) {
        probability *= scratch.postselect(t, +1);
        if (probability == 0) {
            return 0;
        }
    }

    // Expand prod_k (I + n_k·sigma_k)/2 into Pauli terms.
    struct Term {
        double coefficient;
        PauliString op;
    };
    std::vector<Term> terms{{1.0, PauliString(num_qubits_)}};
    for (const auto &pr : general) {
        std::vector<Term> next;
        next.reserve(terms.size() * 4);
        const double c[3] = {pr.direction.x, pr.direction.y, pr.direction.z};
        const PauliLetter letters[3] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
        for (const auto &t : terms) {
            next.push_back({t.coefficient * 0.5, t.op});
            for (int k = 0; k < 3; k++) {
                if (c[k] == 0) continue;
                Term u{t.coefficient * 0.5 * c[k], t.op};
                u.op.set_letter(pr.qubit, letters[k]);
                next.push_back(std::move(u));
            }
        }
        terms = std::move(next);
    }
    double total = 0;
    for (const auto &t : terms) {
        total += t.coefficient * scratch.expectation(t.op);
    }
    return std::clamp(probability * total, 0.0, 1.0);
}

void StabilizerTableau::validate() const {
    auto fail = [](const std::string &why) { throw std::logic_error("invalid tableau: " + why); };
    if (stabilizers_.size() != num_qubits_ || destabilizers_.size() != num_qubits_) {
        fail("wrong generator count");
    }
    for (std::size_t i = 0; i < num_qubits_; i++) {
        if (!stabilizers_[i].is_hermitian()) {
            fail("stabilizer " + std::to_string(i) + " has imaginary phase");
        }
        for (std::size_t j = 0; j < num_qubits_; j++) {
            if (j > i && !commutes(stabilizers_[i], stabilizers_[j])) {
                fail("stabilizers " + std::to_string(i) + "," + std::to_string(j) + " anticommute");
            }
            if (j > i && !commutes(destabilizers_[i], destabilizers_[j])) {
                fail("destabilizers " + std::to_string(i) + "," + std::to_string(j) + " anticommute");
            }
            if (commutes(destabilizers_[i], stabilizers_[j]) == (i == j)) {
                fail("destabilizer " + std::to_string(i) + " vs stabilizer " + std::to_string(j));
            }
        }
    }
}

std::string StabilizerTableau::dump() const {
    std::ostringstream out;
    out << "tableau n=" << num_qubits_ << "\n";
    for (const auto &s : stabilizers_) out << s.str() << "\n";
    for (const auto &d : destabilizers_) out << d.str() << "\n";
    return out.str();
}

StabilizerTableau StabilizerTableau::load(std::string_view text, uint64_t seed) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    if (!std::getline(in, line) || line.rfind("tableau n=", 0) != 0) {
        throw std::invalid_argument("tableau text must start with 'tableau n=<n>'");
    }
    try {
        n = std::stoul(line.substr(10));
    } catch (const std::exception &) {
        throw std::invalid_argument("bad tableau header: " + line);
    }
    if (n == 0) {
        throw std::invalid_argument("tableau header declares zero qubits");
    }
    std::vector<PauliString> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(PauliString::parse(line, n));
    }
    if (rows.size() != 2 * n) {
        throw std::invalid_argument("expected " + std::to_string(2 * n) + " tableau rows, got " +
                                    std::to_string(rows.size()));
    }
    std::vector<PauliString> destab(rows.begin() + n, rows.end());
    rows.erase(rows.begin() + n, rows.end());
    StabilizerTableau t(n, std::move(rows), std::move(destab), seed);
    t.validate();
    return t;
}

bool StabilizerTableau::same_generators(const StabilizerTableau &other) const {
    return stabilizers_ == other.stabilizers_ && destabilizers_ == other.destabilizers_;
}

}  // namespace anyon
