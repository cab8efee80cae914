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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "anyon/experiment.h"
#include "anyon/protocol.h"

using namespace anyon;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool passed;
    std::string detail;
};

const std::array<int, 6> kAllPlus = {1, 1, 1, 1, 1, 1};

// 1. Ground state from the six stabilizers, as a tableau, against the closed-form amplitudes.
Outcome ground_state_construction() {
    auto t0 = Clock::now();
    auto lat = Lattice::six_qubit();
    auto tableau = StabilizerTableau::from_generators(ground_state_generators(lat, {}));
    double f = fidelity(StateVector::from_tableau(tableau), StateVector::kitaev_six_qubit_ground_state());
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << "fidelity " << format_number(f) << ", " << dt << " s";
    return {f >= 1 - 1e-12 && dt < 1.0, d.str()};
}

// 2. Step (1) table.
Outcome ground_table() {
    auto model = six_qubit_model();
    bool ok = true;
    std::string detail;
    for (auto b : {Backend::Tableau, Backend::StateVector}) {
        auto t = expectation_table(ground_state(model.lattice, b), model.hamiltonian);
        ok = ok && t.matches(kAllPlus);
        detail += "[" + to_string(b) + "] " + t.str() + " ";
    }
    return {ok, detail};
}

// 3. Step (2) table and syndrome.
Outcome excited_table() {
    auto model = six_qubit_model();
    bool ok = true;
    std::string detail;
    for (auto b : {Backend::Tableau, Backend::StateVector}) {
        auto s = ground_state(model.lattice, b);
        s.apply(CliffordGate::z(3));
        s.apply(CliffordGate::x(4));
        auto t = expectation_table(s, model.hamiltonian);
        auto syn = syndrome(s, model.lattice).str();
        ok = ok && t.matches({-1, -1, -1, 1, -1, 1}) && syn == "{v1,v2,f1,f3}";
        detail += "[" + to_string(b) + "] " + t.str() + " " + syn + " ";
    }
    return {ok, detail};
}

// 4. Interferometric phase on both backends, fit quality, sine-model conformance.
Outcome braiding_phase() {
    auto lat = Lattice::six_qubit();
    bool ok = true;
    std::string detail;
    for (auto b : {Backend::Tableau, Backend::StateVector}) {
        auto r = interferometric_braiding(lat, b, six_qubit_braiding_setup());
        double worst = 0;
        for (const auto *scan : {&r.pre, &r.post}) {
            if (scan->alphas.size() != 8) ok = false;
            for (std::size_t k = 0; k < scan->alphas.size(); k++) {
                double model = scan->fit.scale * (1 + std::sin(scan->fit.phase - scan->alphas[k]));
                worst = std::max(worst, std::abs(model - scan->values[k]));
                ok = ok && std::abs(scan->alphas[k] - static_cast<double>(k) * pi / 4) == 0;
            }
            ok = ok && scan->fit.residual < 1e-9 && std::abs(scan->fit.visibility - 1) < 1e-9;
        }
        ok = ok && std::abs(r.phase_difference - pi) < 1e-9 && worst < 1e-9;
        detail += "[" + to_string(b) + "] dphi=" + format_number(r.phase_difference) +
                  " residual=" + format_number(std::max(r.pre.fit.residual, r.post.fit.residual)) + " ";
    }
    return {ok, detail};
}

// 5. Final state after the second sqrt(Z), with and without the braid.
Outcome final_state() {
    auto model = six_qubit_model();
    const auto &lat = model.lattice;
    auto psi6 = StateVector::kitaev_six_qubit_ground_state();
    auto psi_e = psi6;
    psi_e.apply(CliffordGate::z(3));
    bool ok = true;
    std::string detail;
    for (auto b : {Backend::Tableau, Backend::StateVector}) {
        for (bool braid : {true, false}) {
            auto setup = six_qubit_braiding_setup();
            setup.braid = braid;
            auto r = interferometric_braiding(lat, b, setup);
            auto s = r.final_state;
            s.apply(CliffordGate::sqrt_z(3));
            double f = fidelity(s.to_state_vector(), braid ? psi6 : psi_e);
            if (braid) ok = ok && expectation_table(s, model.hamiltonian).matches(kAllPlus);
            ok = ok && f >= 1 - 1e-9;
            detail += "[" + to_string(b) + (braid ? " braid" : " control") + "] F=" + format_number(f) + " ";
        }
    }
    return {ok, detail};
}

// 6. The m-loop product reduces to +A2, checked against dense matrices; the braid gates on
//    the bare ground state leave it unchanged.
Outcome loop_identity() {
    auto lat = Lattice::six_qubit();
    std::vector<std::size_t> sequence = {4, 6, 5, 3, 4, 4};
    PauliString chain(6);
    Eigen::MatrixXcd dense = Eigen::MatrixXcd::Identity(64, 64);
    for (auto q : sequence) {
        auto x = PauliString::all_of(6, PauliLetter::X, {q});
        chain *= x;
        // X on qubit q flips bit (6 - q) of the basis index.
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(64, 64);
        for (int i = 0; i < 64; i++) m(i ^ (1 << (6 - q)), i) = 1;
        dense = dense * m;
    }
    Eigen::MatrixXcd a2 = Eigen::MatrixXcd::Identity(64, 64);
    for (std::size_t q : {3, 4, 5, 6}) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(64, 64);
        for (int i = 0; i < 64; i++) m(i ^ (1 << (6 - q)), i) = 1;
        a2 = a2 * m;
    }
    bool ok = chain == lat.vertex_operator(2) && chain.phase() == Phase::plus() && dense == a2 &&
              to_dense(chain) == dense;
    double worst = 1;
    for (auto b : {Backend::Tableau, Backend::StateVector}) {
        auto g = ground_state(lat, b);
        auto s = g;
        apply_anyon_op(s, lat, AnyonOp::create_m_pair(4));
        apply_anyon_op(s, lat, AnyonOp::move_m({6, 5, 3, 4}));
        apply_anyon_op(s, lat, AnyonOp::create_m_pair(4));
        worst = std::min(worst, fidelity(s.to_state_vector(), g.to_state_vector()));
    }
    ok = ok && worst >= 1 - 1e-12;
    return {ok, "loop " + chain.str() + ", no-dynamical-phase fidelity " + format_number(worst)};
}

// 7. Loop statistics on L = 2, 3, 4.
Outcome torus_statistics() {
    auto t0 = Clock::now();
    bool ok = true;
    std::size_t total = 0;
    for (std::size_t L : {2, 3, 4}) {
        auto sweep = torus_statistics_sweep(L);
        ok = ok && sweep.all_passed();
        // Like-species loops need a 2x2 rectangle to enclose a site, so L = 2 has none.
        for (std::size_t p = 0; p < 4; p++)
            ok = ok && sweep.cells[p][0].total > 0 && (sweep.cells[p][1].total > 0 || (p >= 2 && L == 2));
        total += sweep.total();
    }
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << total << " configurations, " << dt << " s";
    return {ok && dt < 30, d.str()};
}

PauliString random_pauli(std::size_t n, std::mt19937_64 &rng) {
    PauliString p(n);
    for (std::size_t q = 1; q <= n; q++) p.set_letter(q, static_cast<PauliLetter>(rng() % 4));
    p.set_phase(rng() & 1 ? Phase::minus() : Phase::plus());
    return p;
}

CliffordGate random_gate(std::size_t n, std::mt19937_64 &rng) {
    std::size_t a = rng() % n + 1, b = rng() % n + 1;
    while (n > 1 && b == a) b = rng() % n + 1;
    switch (rng() % (n > 1 ? 7 : 5)) {
        case 0: return CliffordGate::x(a);
        case 1: return CliffordGate::z(a);
        case 2: return CliffordGate::h(a);
        case 3: return CliffordGate::sqrt_z(a);
        case 4: return CliffordGate::sqrt_z_dag(a);
        case 5: return CliffordGate::cz(a, b);
        default: return CliffordGate::cnot(a, b);
    }
}

// 8. Random Clifford circuits, tableau against state vector.
Outcome backend_equivalence() {
    std::mt19937_64 rng(8);
    std::size_t circuits = 0, checks = 0, nonzero = 0;
    for (; circuits < 500; circuits++) {
        std::size_t n = 1 + rng() % 10, depth = 1 + rng() % 200;
        StabilizerTableau t(n);
        StateVector s(n);
        for (std::size_t g = 0; g < depth; g++) {
            auto gate = random_gate(n, rng);
            t.apply(gate);
            s.apply(gate);
        }
        for (int k = 0; k < 50; k++, checks++) {
            PauliString p = random_pauli(n, rng);
            if (k % 2 == 0) {
                // Half the draws from the stabilizer group so the +-1 branch is exercised.
                p = PauliString(n);
                for (const auto &st : t.stabilizers())
                    if (rng() & 1) p *= st;
                if (rng() & 1) p.set_phase(p.phase() * Phase::minus());
            }
            double v = s.pauli_expectation(p), r = std::round(v);
            if (std::abs(v - r) >= 1e-9 || t.expectation(p) != static_cast<int>(r)) {
                return {false, "mismatch in circuit " + std::to_string(circuits) + " on " + p.str()};
            }
            nonzero += r != 0;
        }
    }
    return {true, std::to_string(circuits) + " circuits, " + std::to_string(checks) + " expectations (" +
                      std::to_string(nonzero) + " nonzero)"};
}

// 9. White-noise consistency.
Outcome noise_consistency() {
    auto noise = NoiseModel::fit_to_mean_expectation(0.625);
    double f = noisy_fidelity(noise, 6);
    bool ok = noise.p >= 0 && noise.p <= 1 && f >= 0.532;
    auto r = interferometric_braiding(Lattice::six_qubit(), Backend::Tableau, six_qubit_braiding_setup());
    double worst = 0;
    for (double p : {0.0, 0.2, noise.p, 0.6, 0.9, 0.999}) {
        auto model = NoiseModel::white_noise(p);
        auto pre = apply_white_noise_to_probabilities(r.pre.values, model, 6);
        auto post = apply_white_noise_to_probabilities(r.post.values, model, 6);
        worst = std::max(worst, angular_distance(fit_fringe(r.post.alphas, post).phase -
                                                     fit_fringe(r.pre.alphas, pre).phase,
                                                 pi));
    }
    ok = ok && worst < 1e-9;
    return {ok, "p=" + format_number(noise.p) + " fidelity=" + format_number(f) +
                    " max phase deviation=" + format_number(worst)};
}

// 10. L = 64 on the tableau backend: ground state, e-pair, m braided on a 2L-edge loop
//     around one e, fusion, syndrome readout.
Outcome large_torus() {
    auto t0 = Clock::now();
    const std::size_t L = 64;
    auto lat = Lattice::torus(L);
    auto state = ground_state(lat, Backend::Tableau);
    apply_anyon_op(state, lat, AnyonOp::create_e_pair(lat.horizontal_edge(0, 0)));
    // Encloses vertices (0,1)..(0,L-1): exactly one end of the e-pair.
    auto loop = dual_loop_around_vertices(lat, 0, 1, 1, L - 1);
    bool ok = loop.size() == 2 * L;
    auto loop_op = loop_operator(lat, loop, Species::M);
    ok = ok && classify_loop(lat, state, loop_op) == LoopClass::Charged;
    std::size_t creation = loop.back();
    apply_anyon_op(state, lat, AnyonOp::create_m_pair(creation));
    apply_anyon_op(state, lat, AnyonOp::move_m(loop));
    apply_anyon_op(state, lat, AnyonOp::create_m_pair(creation));
    auto syn = syndrome(state, lat);
    ok = ok && syn.excited_faces.empty() &&
         syn.excited_vertices == std::set<std::size_t>{lat.vertex_at(0, 0), lat.vertex_at(0, 1)};
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << lat.num_qubits() << " qubits, loop of " << loop.size() << " edges, syndrome " << syn.str() << ", " << dt
      << " s";
    return {ok && dt < 10, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"ground-state construction", ground_state_construction},
        {"step (1) table all +1", ground_table},
        {"step (2) table and syndrome", excited_table},
        {"step (3) interferometric phase pi", braiding_phase},
        {"final state after sqrt(Z3)", final_state},
        {"loop identity and no dynamical phase", loop_identity},
        {"torus loop statistics", torus_statistics},
        {"backend equivalence", backend_equivalence},
        {"noise consistency", noise_consistency},
        {"L=64 tableau performance", large_torus},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        failed += !o.passed;
        std::cout << (o.passed ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return failed ? 1 : 0;
}
