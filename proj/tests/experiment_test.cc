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

#include "anyon/experiment.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

namespace anyon {
namespace {

using std::numbers::pi;

TEST(ExpectationTableTest, ThreeSteps) {
    auto model = six_qubit_model();
    const auto &lat = model.lattice;
    for (auto b : {Backend::Tableau, Backend::StateVector}) {
        auto g = ground_state(lat, b);
        auto t = expectation_table(g, model.hamiltonian);
        EXPECT_TRUE(t.matches({1, 1, 1, 1, 1, 1})) << t.str();
        auto e = g;
        e.apply(CliffordGate::z(3));
        e.apply(CliffordGate::x(4));
        auto te = expectation_table(e, model.hamiltonian);
        EXPECT_TRUE(te.matches({-1, -1, -1, 1, -1, 1})) << te.str();
        EXPECT_EQ(te.str(), "A1=-1 A2=-1 B1=-1 B2=1 B3=-1 B4=1");
    }
    EXPECT_THROW(expectation_table(ground_state(Lattice::torus(2), Backend::Tableau), kitaev_hamiltonian(Lattice::torus(2))),
                 std::invalid_argument);
}

TEST(ExpectationTableTest, SuperpositionIsNotRounded) {
    auto model = six_qubit_model();
    auto s = ground_state(model.lattice, Backend::StateVector);
    s.apply(CliffordGate::sqrt_z(3));
    auto t = expectation_table(s, model.hamiltonian);
    EXPECT_NEAR(t.values[0], 0, 1e-12);
    EXPECT_NEAR(t.values[1], 0, 1e-12);
    EXPECT_EQ(t.values[2], 1);
}

TEST(NoiseTest, Expectations) {
    ExpectationTable ideal;
    ideal.values = {1, 1, 1, 1, 1, 1};
    EXPECT_EQ(apply_white_noise_to_expectations(ideal, NoiseModel::white_noise(0)), ideal);
    auto zero = apply_white_noise_to_expectations(ideal, NoiseModel::white_noise(1));
    for (double v : zero.values) EXPECT_EQ(v, 0);
    auto fitted = NoiseModel::fit_to_mean_expectation(0.625);
    EXPECT_DOUBLE_EQ(fitted.p, 0.375);
    for (double v : apply_white_noise_to_expectations(ideal, fitted).values) {
        EXPECT_DOUBLE_EQ(v, 0.625);
        EXPECT_GE(v, 0.51);
        EXPECT_LE(v, 0.74);
    }
    EXPECT_THROW(NoiseModel::white_noise(-0.1), std::invalid_argument);
    EXPECT_THROW(NoiseModel::white_noise(1.5), std::invalid_argument);
    EXPECT_THROW(apply_white_noise_to_expectations(ideal, NoiseModel{2}), std::invalid_argument);
}

TEST(NoiseTest, Fidelity) {
    EXPECT_DOUBLE_EQ(noisy_fidelity(NoiseModel::white_noise(0), 6), 1.0);
    EXPECT_DOUBLE_EQ(noisy_fidelity(NoiseModel::white_noise(1), 6), 1.0 / 64);
    EXPECT_DOUBLE_EQ(noisy_fidelity(NoiseModel::white_noise(0.375), 6), 0.630859375);
    EXPECT_GE(noisy_fidelity(NoiseModel::white_noise(0.375), 6), 0.532);
}

TEST(NoiseTest, PhaseIsInvariantBelowFullMixing) {
    auto lat = Lattice::six_qubit();
    auto res = interferometric_braiding(lat, Backend::Tableau, six_qubit_braiding_setup());
    for (double p : {0.0, 0.1, 0.375, 0.7, 0.99, 0.999999}) {
        auto noise = NoiseModel::white_noise(p);
        auto pre = apply_white_noise_to_probabilities(res.pre.values, noise, 6);
        auto post = apply_white_noise_to_probabilities(res.post.values, noise, 6);
        auto fp = fit_fringe(res.pre.alphas, pre), fq = fit_fringe(res.post.alphas, post);
        EXPECT_LT(angular_distance(fq.phase - fp.phase, pi), 1e-9) << p;
        EXPECT_LT(fp.residual, 1e-9);
    }
    std::vector<double> flat = apply_white_noise_to_probabilities(res.pre.values, NoiseModel::white_noise(1), 6);
    for (double v : flat) EXPECT_DOUBLE_EQ(v, 1.0 / 64);
    EXPECT_THROW(fit_fringe(res.pre.alphas, flat), DegenerateFitError);
}

TEST(PoissonTest, EqualCounts) {
    std::vector<uint64_t> counts{200, 200};
    auto est = poisson_uncertainty(counts, parity_estimator({1, -1}));
    EXPECT_NEAR(est.value, 0, 1e-15);
    EXPECT_NEAR(est.sigma, 1 / std::sqrt(400.0), 1e-9);
    EXPECT_FALSE(est.boundary);

    std::vector<uint64_t> many(64, 10);
    std::vector<int> signs;
    for (int k = 0; k < 64; k++) signs.push_back(std::popcount(static_cast<unsigned>(k & 7)) % 2 ? -1 : 1);
    auto est64 = poisson_uncertainty(many, parity_estimator(signs));
    EXPECT_NEAR(est64.value, 0, 1e-15);
    EXPECT_NEAR(est64.sigma, 1 / std::sqrt(640.0), 1e-9);
}

TEST(PoissonTest, BoundaryAndErrors) {
    std::vector<uint64_t> single{0, 500, 0};
    auto est = poisson_uncertainty(single, parity_estimator({-1, 1, -1}));
    EXPECT_EQ(est.value, 1);
    EXPECT_EQ(est.sigma, 0);
    EXPECT_TRUE(est.boundary);
    std::vector<uint64_t> none, zeros{0, 0};
    EXPECT_THROW(poisson_uncertainty(none, parity_estimator({})), std::invalid_argument);
    EXPECT_THROW(poisson_uncertainty(zeros, parity_estimator({1, -1})), std::invalid_argument);
}

TEST(PoissonTest, MatchesClosedFormForUnequalCounts) {
    // E = (a - b)/(a + b); sigma^2 = 4ab/(a+b)^3.
    std::vector<uint64_t> counts{300, 80};
    auto est = poisson_uncertainty(counts, parity_estimator({1, -1}));
    double a = 300, b = 80;
    EXPECT_NEAR(est.sigma, std::sqrt(4 * a * b / std::pow(a + b, 3)), 1e-8);
}

// Synthetic six-fold coincidences over 64 outcomes at a few hundred events per observable,
// drawn from the white-noise model fitted to the observed mean.
TEST(PoissonTest, PaperScaleUncertainty) {
    std::mt19937_64 rng(61);
    const double expectation = 0.625;
    std::vector<int> signs;
    for (int k = 0; k < 64; k++) signs.push_back(std::popcount(static_cast<unsigned>(k >> 3)) % 2 ? -1 : 1);
    for (int trial = 0; trial < 20; trial++) {
        std::vector<uint64_t> counts;
        for (int k = 0; k < 64; k++) {
            double p = (1 + signs[k] * expectation) / 64;
            std::poisson_distribution<uint64_t> draw(600 * p);
            counts.push_back(draw(rng));
        }
        auto est = poisson_uncertainty(counts, parity_estimator(signs));
        EXPECT_GT(est.sigma, 0.025) << trial;
        EXPECT_LT(est.sigma, 0.045) << trial;
        EXPECT_NEAR(est.value, expectation, 0.15);
    }
}

TEST(FormatNumberTest, Rendering) {
    EXPECT_EQ(format_number(1), "1");
    EXPECT_EQ(format_number(-1), "-1");
    EXPECT_EQ(format_number(0.625), "0.625");
    EXPECT_EQ(format_number(3e-16), "0");
    EXPECT_EQ(format_number(-3e-16), "0");
    EXPECT_EQ(format_number(pi), "3.14159265358979");
}

TEST(ReproducePaperTest, DefaultRunPasses) {
    auto report = reproduce_paper();
    ASSERT_TRUE(report.all_passed()) << report.first_failure();
    ASSERT_EQ(report.runs.size(), 2u);
    for (const auto &run : report.runs) {
        EXPECT_NEAR(run.phase_difference, pi, 1e-9);
        EXPECT_TRUE(run.fig4b.matches({1, 1, 1, 1, 1, 1}));
        EXPECT_EQ(run.fig3b_syndrome, "{v1,v2,f1,f3}");
        EXPECT_EQ(run.final_syndrome, "{}");
        EXPECT_GE(run.final_fidelity, 1 - 1e-9);
        EXPECT_EQ(run.loop_operator, "+X3X4X5X6");
    }
    EXPECT_DOUBLE_EQ(report.noise.p, 0.375);
    EXPECT_DOUBLE_EQ(report.noise_fidelity, 0.630859375);
    EXPECT_NEAR(report.noisy_phase_difference, pi, 1e-9);

    auto files = report.csv_files();
    ASSERT_EQ(files.size(), 4u);
    EXPECT_EQ(files["fig3a.csv"],
              "operator,value,uncertainty,white_noise_value\nA1,1,0,0.625\nA2,1,0,0.625\nB1,1,0,0.625\n"
              "B2,1,0,0.625\nB3,1,0,0.625\nB4,1,0,0.625\n");
    EXPECT_EQ(files["fig3b.csv"], "operator,value,uncertainty\nA1,-1,0\nA2,-1,0\nB1,-1,0\nB2,1,0\nB3,-1,0\nB4,1,0\n");
    EXPECT_EQ(files["fig4a.csv"].rfind("alpha_radians,value_pre,value_post\n0,0.0625,0.0625\n", 0), 0u);

    auto j = nlohmann::json::parse(report.to_json());
    EXPECT_TRUE(j["all_passed"].get<bool>());
    EXPECT_EQ(j["runs"].size(), 2u);
    EXPECT_EQ(j["noise"]["p"], 0.375);
}

TEST(ReproducePaperTest, ControlRunWithoutBraid) {
    ReproduceOptions opt;
    opt.braid = false;
    auto report = reproduce_paper(opt);
    ASSERT_TRUE(report.all_passed()) << report.first_failure();
    for (const auto &run : report.runs) {
        EXPECT_NEAR(run.phase_difference, 0, 1e-9);
        EXPECT_TRUE(run.fig4b.matches({-1, -1, 1, 1, 1, 1}));
        EXPECT_EQ(run.final_syndrome, "{v1,v2}");
        EXPECT_GE(run.final_fidelity, 1 - 1e-9);
        EXPECT_EQ(run.loop_operator, "+I");
    }
}

TEST(ReproducePaperTest, DeterministicOutput) {
    ReproduceOptions opt;
    opt.seed = 7;
    auto a = reproduce_paper(opt), b = reproduce_paper(opt);
    EXPECT_EQ(a.csv_files(), b.csv_files());
    EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(ReproducePaperTest, FailureAbortsWithReport) {
    ReproduceOptions opt;
    opt.observed_mean_expectation = 0.3;  // noisy fig3a falls outside the observed range
    try {
        reproduce_paper(opt);
        FAIL() << "expected a check failure";
    } catch (const CheckFailure &e) {
        EXPECT_EQ(e.report().first_failure(), "noisy fig3a within observed range");
    }
    opt.abort_on_failure = false;
    EXPECT_FALSE(reproduce_paper(opt).all_passed());
    opt.backends.clear();
    EXPECT_THROW(reproduce_paper(opt), std::invalid_argument);
}

}  // namespace
}  // namespace anyon
