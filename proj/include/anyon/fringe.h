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

#ifndef ANYON_FRINGE_H
#define ANYON_FRINGE_H

#include <span>
#include <stdexcept>
#include <vector>

#include "anyon/lattice.h"
#include "anyon/quantum_state.h"

namespace anyon {

/// The fit has no usable phase: visibility below kMinVisibility or no signal at all.
class DegenerateFitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Least-squares fit of c * (1 + V sin(phi - alpha)).
struct SineFit {
    double scale = 0;       // c, in the units of the fitted data
    double visibility = 0;  // V
    double phase = 0;       // phi in (-pi, pi]
    double residual = 0;    // RMS residual of the mean-normalized data
};

inline constexpr double kMinVisibility = 1e-6;

/// Data are normalized to mean 1 before fitting; `scale` is reported in raw units.
/// Throws DegenerateFitError when V < kMinVisibility.
SineFit fit_fringe(std::span<const double> alphas, std::span<const double> values);

/// k * pi/4 for k = 0..steps-1, computed in double precision.
std::vector<double> quarter_pi_grid(std::size_t steps = 8);

/// Coincidence setting: the probe qubit is measured on (|+> + e^{i alpha}|->)/sqrt2 while
/// every other qubit is projected on a fixed state.
struct FringeSetting {
    std::size_t probe_qubit;
    std::vector<StateProjector> fixed;

    std::vector<StateProjector> projectors(double alpha) const;
};

/// Probe `qubit`; the other edges of `vertex`'s star on |+>, every remaining qubit on |H>.
/// For the six-qubit model with qubit 3 and vertex 1 this is qubits 1,2 on |+> and 4,5,6 on |H>.
FringeSetting fringe_setting(const Lattice &lat, std::size_t qubit, std::size_t vertex);

struct FringeScan {
    std::vector<double> alphas;
    std::vector<double> values;
    SineFit fit;
};

/// Coincidence probability at each alpha plus the sine fit.
FringeScan fringe_scan(const QuantumState &state, const FringeSetting &setting, std::span<const double> alphas);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);
/// |a - b| on the circle.
double angular_distance(double a, double b);

}  // namespace anyon

#endif
