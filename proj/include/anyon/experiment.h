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

#ifndef ANYON_EXPERIMENT_H
#define ANYON_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "anyon/fringe.h"
#include "anyon/lattice.h"
#include "anyon/protocol.h"
#include "anyon/quantum_state.h"

namespace anyon {

/// Expectations of A1, A2, B1..B4 in that order.
struct ExpectationTable {
    static constexpr std::array<const char *, 6> kLabels = {"A1", "A2", "B1", "B2", "B3", "B4"};

    std::array<double, 6> values{};
    std::array<double, 6> uncertainties{};

    bool operator==(const ExpectationTable &) const = default;
    bool matches(const std::array<int, 6> &signs) const;
    std::string str() const;
};

/// Throws std::invalid_argument unless `ham` is the six-qubit Hamiltonian and sizes agree.
ExpectationTable expectation_table(const QuantumState &state, const KitaevHamiltonian &ham);

/// rho = (1-p) rho_ideal + p I/2^n.
struct NoiseModel {
    double p = 0;

    /// Throws std::invalid_argument unless 0 <= p <= 1.
    static NoiseModel white_noise(double p);
    /// The p for which an ideal +-1 expectation is observed as `mean_magnitude`.
    static NoiseModel fit_to_mean_expectation(double mean_magnitude);
};

ExpectationTable apply_white_noise_to_expectations(const ExpectationTable &table, const NoiseModel &noise);
/// Coincidence probabilities of rank-one product projectors: (1-p) v + p / 2^n.
std::vector<double> apply_white_noise_to_probabilities(std::span<const double> values, const NoiseModel &noise,
                                                       std::size_t num_qubits);
/// (1-p) + p / 2^n.
double noisy_fidelity(const NoiseModel &noise, std::size_t num_qubits);

struct PoissonEstimate {
    double value;
    double sigma;
    /// Every event fell in a single outcome, so the estimator sits at the edge of its range
    /// and first-order propagation gives 0.
    bool boundary;
};

using DerivedValueFn = std::function<double(std::span<const double>)>;

/// First-order propagation with sigma(count k) = sqrt(k); derivatives by central
/// differences. Throws std::invalid_argument for empty or all-zero counts.
PoissonEstimate poisson_uncertainty(std::span<const uint64_t> counts, const DerivedValueFn &fn);

/// sum_k sign_k n_k / sum_k n_k, the usual parity estimator.
DerivedValueFn parity_estimator(std::vector<int> signs);

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Results of the three experimental steps on one backend.
struct BackendRun {
    Backend backend;
    double ground_fidelity = 0;
    ExpectationTable fig3a;
    ExpectationTable fig3b;
    std::string fig3b_syndrome;
    FringeScan pre;
    FringeScan post;
    double phase_difference = 0;
    std::optional<double> relative_phase_pre;
    std::optional<double> relative_phase_post;
    std::string loop_operator;
    std::string trace;
    ExpectationTable fig4b;
    std::string final_syndrome;
    bool fusion_vacuum = false;
    /// Against |psi>_6 with the braid, against Z3|psi>_6 without.
    double final_fidelity = 0;
    /// The braid gate sequence on the bare ground state, compared with the ground state.
    double no_dynamical_phase_fidelity = 0;
};

struct ReproduceOptions {
    std::vector<Backend> backends = {Backend::Tableau, Backend::StateVector};
    bool braid = true;
    uint64_t seed = 0;
    /// Mean magnitude of the observed stabilizer expectations the noise model is fitted to.
    double observed_mean_expectation = 0.625;
    bool abort_on_failure = true;
};

struct PaperReport {
    ReproduceOptions options;
    std::vector<BackendRun> runs;
    NoiseModel noise;
    ExpectationTable noisy_fig3a;
    double noise_fidelity = 0;
    double noisy_phase_difference = 0;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    /// Name of the first failed check, empty when all pass.
    std::string first_failure() const;

    std::string to_json() const;
    /// File name -> CSV content for fig3a, fig3b, fig4a and fig4b.
    std::map<std::string, std::string> csv_files() const;
};

class CheckFailure : public std::runtime_error {
   public:
    CheckFailure(const std::string &check, PaperReport report)
        : std::runtime_error("check failed: " + check), report_(std::move(report)) {}
    const PaperReport &report() const { return report_; }

   private:
    PaperReport report_;
};

/// Steps (1)-(3) on every requested backend, concurrently. Throws CheckFailure naming the
/// first failed check when `abort_on_failure` is set.
PaperReport reproduce_paper(const ReproduceOptions &options = {});

/// Decimal rendering used in every output file: %.15g with values below 1e-14 printed as 0.
std::string format_number(double v);

}  // namespace anyon

#endif
