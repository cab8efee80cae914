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
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "anyon/lattice.h"
#include "anyon/state_vector.h"
#include "oracle.h"

namespace anyon {
namespace {

std::vector<PauliString> parse_all(std::initializer_list<const char *> texts, std::size_t n) {
    std::vector<PauliString> out;
    for (const char *t : texts) out.push_back(PauliString::parse(t, n));
    return out;
}

PauliString product_of(const std::vector<PauliString> &gens, const std::vector<std::size_t> &which) {
    PauliString p(gens.front().num_qubits());
    for (auto i : which) p *= gens[i];
    return p;
}

TEST(ConjugationTest, MatchesDenseOracle) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 600; trial++) {
        std::size_t n = 1 + rng() % 4;
        auto p = oracle::random_pauli(n, rng, false);
        auto g = oracle::random_gate(n, rng);
        oracle::Mat u = oracle::gate(g, n);
        oracle::Mat expected = u * oracle::pauli(p) * u.adjoint();
        EXPECT_LT(oracle::max_abs_diff(oracle::pauli(conjugated(p, g)), expected), 1e-12)
            << g.str() << " on " << p.str();
    }
}

TEST(ConjugationTest, KnownImages) {
    auto X = [](const char *t) { return PauliString::parse(t, 2); };
    EXPECT_EQ(conjugated(X("X1"), CliffordGate::sqrt_z(1)).str(), "+Y1");
    EXPECT_EQ(conjugated(X("Y1"), CliffordGate::sqrt_z(1)).str(), "-X1");
    EXPECT_EQ(conjugated(X("X1"), CliffordGate::h(1)).str(), "+Z1");
    EXPECT_EQ(conjugated(X("Y1"), CliffordGate::h(1)).str(), "-Y1");
    EXPECT_EQ(conjugated(X("X1"), CliffordGate::cnot(1, 2)).str(), "+X1X2");
    EXPECT_EQ(conjugated(X("Z2"), CliffordGate::cnot(1, 2)).str(), "+Z1Z2");
    EXPECT_EQ(conjugated(X("X2"), CliffordGate::cz(1, 2)).str(), "+Z1X2");
}

TEST(GateTest, LibraryMatricesMatchOracle) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; trial++) {
        auto g = oracle::random_gate(2, rng);
        auto u = g.matrix();
        oracle::Mat expected = oracle::gate(g.is_two_qubit() ? g : CliffordGate{g.kind, 1}, g.is_two_qubit() ? 2 : 1);
        if (g.is_two_qubit()) {
            // Library row index is (target << 1) | target2; the oracle orders qubits 1, 2.
            if (g.target == 2) {
                oracle::Mat swap = oracle::Mat::Zero(4, 4);
                swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
                expected = swap * expected * swap;
            }
        }
        EXPECT_LT(oracle::max_abs_diff(u, expected), 1e-12) << g.str();
        EXPECT_LT(oracle::max_abs_diff(g.inverse().matrix() * u,
                                       oracle::Mat::Identity(u.rows(), u.cols())),
                  1e-12)
            << g.str();
    }
}

TEST(FromGeneratorsTest, SixQubitGroundStateGenerators) {
    auto lat = Lattice::six_qubit();
    auto gens = ground_state_generators(lat, {});
    auto t = StabilizerTableau::from_generators(gens);
    ASSERT_EQ(t.stabilizers().size(), 6u);
    for (std::size_t i = 0; i < gens.size(); i++) EXPECT_EQ(t.stabilizers()[i], gens[i]);
    EXPECT_NO_THROW(t.validate());
    for (const auto &g : gens) EXPECT_EQ(t.expectation(g), 1);
    EXPECT_EQ(t.expectation(PauliString::parse("Z1", 6)), 0);
    EXPECT_EQ(t.expectation(PauliString::parse("-X1X2X3", 6)), -1);
}

TEST(FromGeneratorsTest, SignedGeneratorsFixEigenvalues) {
    auto gens = parse_all({"-Z1", "+X2X3", "-Z2Z3"}, 3);
    auto t = StabilizerTableau::from_generators(gens);
    EXPECT_EQ(t.expectation(PauliString::parse("Z1", 3)), -1);
    EXPECT_EQ(t.expectation(PauliString::parse("Y2Y3", 3)), 1);
    auto sv = StateVector::from_tableau(t);
    EXPECT_NEAR(sv.pauli_expectation(PauliString::parse("Z2Z3", 3)), -1, 1e-12);
}

TEST(FromGeneratorsTest, RejectsBadSetsWithCertificates) {
    auto expect_error = [](std::vector<PauliString> gens, GeneratorSetError::Kind kind) {
        try {
            StabilizerTableau::from_generators(gens);
            ADD_FAILURE() << "no error";
        } catch (const GeneratorSetError &e) {
            EXPECT_EQ(e.kind(), kind) << e.what();
            return e.generators();
        }
        return std::vector<std::size_t>{};
    };
    expect_error(parse_all({"Z1", "Z2"}, 3), GeneratorSetError::Kind::WrongCount);
    expect_error(parse_all({"Z1", "iZ2"}, 2), GeneratorSetError::Kind::NonHermitian);

    auto nc = expect_error(parse_all({"Z1", "Z2", "X1X3"}, 3), GeneratorSetError::Kind::NonCommuting);
    ASSERT_EQ(nc.size(), 2u);
    EXPECT_EQ(nc, (std::vector<std::size_t>{0, 2}));

    auto dep_gens = parse_all({"Z1Z2", "Z2Z3", "Z1Z3"}, 3);
    auto dep = expect_error(dep_gens, GeneratorSetError::Kind::Dependent);
    EXPECT_EQ(product_of(dep_gens, dep).str(), "+I");

    auto neg_gens = parse_all({"Z1Z2", "Z2Z3", "-Z1Z3"}, 3);
    auto neg = expect_error(neg_gens, GeneratorSetError::Kind::MinusIdentity);
    EXPECT_EQ(product_of(neg_gens, neg).str(), "-I");
}

TEST(FromGeneratorsTest, RandomStatesMatchProjectedStateVector) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; trial++) {
        std::size_t n = 2 + rng() % 5;
        StabilizerTableau t(n);
        for (int g = 0; g < 40; g++) t.apply(oracle::random_gate(n, rng));
        auto rebuilt = StabilizerTableau::from_generators(t.stabilizers());
        auto a = StateVector::from_tableau(t);
        auto b = StateVector::from_generators(t.stabilizers());
        EXPECT_GT(fidelity(a, b), 1 - 1e-12);
        EXPECT_GT(fidelity(StateVector::from_tableau(rebuilt), b), 1 - 1e-12);
    }
}

// Random Clifford circuits: exact tableau expectations against the dense state vector.
TEST(BackendEquivalenceTest, RandomCircuitsAgreeExactly) {
    std::mt19937_64 rng(2026);
    int circuits = 0;
    for (; circuits < 500; circuits++) {
        std::size_t n = 1 + rng() % 10;
        std::size_t depth = rng() % 201;
        StabilizerTableau t(n, circuits);
        StateVector sv(n);
        for (std::size_t g = 0; g < depth; g++) {
            auto gate = oracle::random_gate(n, rng);
            t.apply(gate);
            sv.apply(gate);
        }
        ASSERT_NO_THROW(t.validate());
        for (int k = 0; k < 50; k++) {
            auto p = oracle::random_pauli(n, rng, true);
            // Bias a share of the draws towards the stabilizer group, where the answer is +-1.
            if (k % 2 == 0) {
                p = PauliString(n);
                for (std::size_t i = 0; i < n; i++)
                    if (rng() & 1) p *= t.stabilizers()[i];
                if (rng() & 1) p.set_phase(p.phase() * Phase::minus());
            }
            double v = sv.pauli_expectation(p);
            double rounded = std::round(v);
            ASSERT_LT(std::abs(v - rounded), 1e-9) << p.str();
            ASSERT_EQ(t.expectation(p), static_cast<int>(rounded)) << "circuit " << circuits << " " << p.str();
        }
    }
    EXPECT_EQ(circuits, 500);
}

TEST(MeasureTest, CollapsesAndRepeats) {
    StabilizerTableau t(2, 5);
    t.apply(CliffordGate::h(1));
    t.apply(CliffordGate::cnot(1, 2));
    int first = t.measure(PauliString::parse("Z1", 2));
    EXPECT_EQ(t.expectation(PauliString::parse("Z1", 2)), first);
    EXPECT_EQ(t.expectation(PauliString::parse("Z2", 2)), first);
    EXPECT_EQ(t.measure(PauliString::parse("Z2", 2)), first);
    EXPECT_NO_THROW(t.validate());
}

TEST(MeasureTest, SeedDeterminesOutcomes) {
    auto run = [](uint64_t seed) {
        StabilizerTableau t(8, seed);
        for (std::size_t q = 1; q <= 8; q++) t.apply(CliffordGate::h(q));
        std::vector<int> out;
        for (std::size_t q = 1; q <= 8; q++) out.push_back(t.measure(PauliString::all_of(8, PauliLetter::Z, {q})));
        return out;
    };
    EXPECT_EQ(run(3), run(3));
}

TEST(PostselectTest, Probabilities) {
    StabilizerTableau t(2);
    t.apply(CliffordGate::h(1));
    auto z1 = PauliString::parse("Z1", 2);
    EXPECT_DOUBLE_EQ(t.postselect(PauliString::parse("Z2", 2), -1), 0.0);
    EXPECT_DOUBLE_EQ(t.postselect(z1, -1), 0.5);
    EXPECT_EQ(t.expectation(z1), -1);
    EXPECT_DOUBLE_EQ(t.postselect(z1, -1), 1.0);
    EXPECT_THROW(t.postselect(z1, 0), std::invalid_argument);
}

TEST(ProjectorExpectationTest, MatchesStateVector) {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> angle(0, 2 * M_PI);
    for (int trial = 0; trial < 60; trial++) {
        std::size_t n = 2 + rng() % 5;
        StabilizerTableau t(n);
        for (int g = 0; g < 30; g++) t.apply(oracle::random_gate(n, rng));
        auto sv = StateVector::from_tableau(t);
        std::vector<QubitProjector> tp;
        std::vector<StateProjector> sp;
        for (std::size_t q = 1; q <= n; q++) {
            if (rng() % 3 == 0) continue;
            QubitState s;
            switch (rng() % 4) {
                case 0: s = QubitState::h(); break;
                case 1: s = QubitState::minus(); break;
                case 2: s = QubitState::equator(M_PI / 2); break;
                default: s = QubitState::equator(angle(rng)); break;
            }
            tp.push_back({q, s.bloch()});
            sp.push_back({q, s});
        }
        EXPECT_NEAR(t.projector_expectation(tp), sv.coincidence_probability(sp), 1e-12);
    }
}

TEST(ProjectorExpectationTest, RejectsBadInput) {
    StabilizerTableau t(3);
    std::vector<QubitProjector> twice{{1, {0, 0, 1}}, {1, {1, 0, 0}}};
    EXPECT_THROW(t.projector_expectation(twice), std::invalid_argument);
    std::vector<QubitProjector> out_of_range{{4, {0, 0, 1}}};
    EXPECT_THROW(t.projector_expectation(out_of_range), std::out_of_range);
    std::vector<QubitProjector> not_unit{{1, {0, 0, 0.5}}};
    EXPECT_THROW(t.projector_expectation(not_unit), std::invalid_argument);
}

TEST(DumpTest, RoundTrip) {
    std::mt19937_64 rng(25);
    StabilizerTableau t(7);
    for (int g = 0; g < 80; g++) t.apply(oracle::random_gate(7, rng));
    auto text = t.dump();
    EXPECT_EQ(text.rfind("tableau n=7\n", 0), 0u);
    auto back = StabilizerTableau::load(text);
    EXPECT_TRUE(back.same_generators(t));
    EXPECT_EQ(back.dump(), text);
    EXPECT_THROW(StabilizerTableau::load("nonsense"), std::invalid_argument);
    EXPECT_THROW(StabilizerTableau::load("tableau n=2\n+Z1\n"), std::invalid_argument);
}

TEST(ExpectationTest, RejectsBadObservables) {
    StabilizerTableau t(2);
    EXPECT_THROW(t.expectation(PauliString(3)), std::invalid_argument);
    EXPECT_THROW(t.expectation(PauliString::parse("iZ1", 2)), std::invalid_argument);
}

TEST(SixQubitTableauTest, ExcitationsAndMeasurements) {
    auto lat = Lattice::six_qubit();
    auto ham = kitaev_hamiltonian(lat);
    auto gens = ground_state_generators(lat, {});
    auto t = StabilizerTableau::from_generators(gens, 9);

    auto z3 = t;
    z3.apply(CliffordGate::z(3));
    std::vector<int> signs;
    for (const auto &term : ham.terms) signs.push_back(z3.expectation(term.op));
    EXPECT_EQ(signs, (std::vector<int>{-1, -1, 1, 1, 1, 1}));

    auto em = z3;
    em.apply(CliffordGate::x(4));
    signs.clear();
    for (const auto &term : ham.terms) signs.push_back(em.expectation(term.op));
    EXPECT_EQ(signs, (std::vector<int>{-1, -1, -1, 1, -1, 1}));
    EXPECT_EQ(em.measure(lat.vertex_operator(1)), -1);

    auto twice = t;
    twice.apply(CliffordGate::sqrt_z(3));
    twice.apply(CliffordGate::sqrt_z(3));
    EXPECT_GT(fidelity(StateVector::from_tableau(twice), StateVector::from_tableau(z3)), 1 - 1e-12);

    auto xx = t;
    xx.apply(CliffordGate::x(5));
    xx.apply(CliffordGate::x(5));
    EXPECT_TRUE(xx.same_generators(t));

    auto measured = t;
    EXPECT_EQ(measured.measure(lat.face_operator(4)), 1);
    EXPECT_TRUE(measured.same_generators(t));
}

TEST(SixQubitTableauTest, ProductOfFacesReplacingOneFace) {
    auto lat = Lattice::six_qubit();
    // B1*B2 in place of B2 spans the same group: accepted, same state.
    std::vector<PauliString> same = {lat.vertex_operator(1), lat.vertex_operator(2), lat.face_operator(1),
                                     lat.face_operator(1) * lat.face_operator(2), lat.face_operator(3),
                                     lat.face_operator(4)};
    auto t = StabilizerTableau::from_generators(same);
    EXPECT_GT(fidelity(StateVector::from_tableau(t), StateVector::kitaev_six_qubit_ground_state()), 1 - 1e-12);

    // B1*B2 in place of B3 is dependent on B1 and B2.
    std::vector<PauliString> gens = {lat.vertex_operator(1), lat.vertex_operator(2), lat.face_operator(1),
                                     lat.face_operator(2), lat.face_operator(1) * lat.face_operator(2),
                                     lat.face_operator(4)};
    try {
        StabilizerTableau::from_generators(gens);
        FAIL() << "dependent set accepted";
    } catch (const GeneratorSetError &e) {
        EXPECT_EQ(e.kind(), GeneratorSetError::Kind::Dependent);
        EXPECT_EQ(e.generators(), (std::vector<std::size_t>{2, 3, 4}));
        EXPECT_EQ(product_of(gens, e.generators()).str(), "+I");
    }
}

TEST(SixQubitTableauTest, FringeProjectorMatchesStateVector) {
    auto t = StabilizerTableau::from_generators(ground_state_generators(Lattice::six_qubit(), {}));
    auto sv = StateVector::kitaev_six_qubit_ground_state();
    std::vector<QubitProjector> tp;
    std::vector<StateProjector> sp;
    for (std::size_t q = 1; q <= 6; q++) {
        auto s = q <= 3 ? QubitState::plus() : QubitState::h();
        tp.push_back({q, s.bloch()});
        sp.push_back({q, s});
    }
    EXPECT_NEAR(t.projector_expectation(tp), sv.coincidence_probability(sp), 1e-12);
    EXPECT_DOUBLE_EQ(t.projector_expectation({}), 1.0);

    StabilizerTableau zero(1);
    std::vector<QubitProjector> one{{1, {0, 0, -1}}};
    EXPECT_DOUBLE_EQ(zero.projector_expectation(one), 0.0);
    auto from_z = StabilizerTableau::from_generators(std::vector<PauliString>{PauliString::parse("+Z1", 1)});
    EXPECT_EQ(from_z.expectation(PauliString::parse("Z1", 1)), 1);
}

TEST(LargeTableauTest, TorusGroundStateIsFast) {
    auto lat = Lattice::torus(32);
    auto state = ground_state(lat, Backend::Tableau);
    EXPECT_TRUE(syndrome(state, lat).empty());
    EXPECT_NO_THROW(state.tableau()->validate());
}

}  // namespace
}  // namespace anyon
