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

#ifndef ANYON_SCENARIO_H
#define ANYON_SCENARIO_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "anyon/experiment.h"
#include "anyon/protocol.h"

namespace anyon {

/// Parse error carrying the 1-based line number (0 when not tied to a line).
class ScenarioError : public std::invalid_argument {
   public:
    ScenarioError(std::size_t line, const std::string &what)
        : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

struct ScenarioStep {
    enum class Kind { Op, Expect, Syndrome, Fringe, Report };

    Kind kind = Kind::Op;
    std::size_t line = 0;
    std::optional<AnyonOp> op;
    /// Expect: the operand as written (A2, B4, +X1X2).
    std::string label;
    std::optional<PauliString> observable;
    /// Fringe.
    std::size_t qubit = 0;
    std::size_t steps = 0;
    /// Report.
    std::string path;

    std::string str() const;
};

/// Directives, one per line, `#` starts a comment:
///   model six_qubit | model torus L=<n>
///   backend tableau|statevec|both
///   seed <u64>
///   op z|x|sqrtz|h <edge>
///   move e|m <edge>,<edge>,...
///   expect A<i>|B<i>|<pauli string>
///   syndrome
///   fringe qubit=<q> steps=<k>
///   report <path>
/// `model` must precede every step. `op z` and `op x` create e and m pairs.
struct Scenario {
    Lattice::Kind model = Lattice::Kind::SixQubit;
    std::size_t L = 0;
    /// Empty when the script does not choose.
    std::vector<Backend> backends;
    std::optional<uint64_t> seed;
    std::vector<ScenarioStep> steps;

    Lattice lattice() const;
    /// Header lines followed by the steps.
    std::string str() const;
};

Scenario parse_scenario(std::string_view text);

/// `both` gives tableau then statevec.
std::vector<Backend> parse_backend_list(std::string_view name);

/// Scan angles k * 2pi / steps.
std::vector<double> fringe_grid(std::size_t steps);

struct ScenarioRun {
    Backend backend = Backend::Tableau;
    std::vector<std::string> log;
    ProtocolTrace trace;
    std::vector<double> expectations;
    std::vector<FringeScan> fringes;
    /// Fitted phase of each fringe minus that of the previous one.
    std::vector<double> phase_differences;
    std::string final_syndrome;
    std::optional<ExpectationTable> final_table;
    /// First execution error, empty on success.
    std::string error;
};

struct ScenarioResult {
    std::vector<ScenarioRun> runs;
    std::vector<CheckResult> checks;
    /// Paths named by `report` directives, in order.
    std::vector<std::string> reports;

    bool all_passed() const;
    std::string first_failure() const;
    std::string to_json() const;
    std::string text() const;
};

/// Executes the scenario on each backend (concurrently when several). Execution errors
/// are recorded per run and as failed checks rather than thrown.
ScenarioResult run_scenario(const Scenario &scenario, const std::vector<Backend> &backends, uint64_t seed);

/// The run's trace as a scenario with the same model, ready to re-parse.
std::string trace_to_scenario(const Scenario &scenario, const ScenarioRun &run);

}  // namespace anyon

#endif
