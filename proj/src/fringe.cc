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

#include "anyon/fringe.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace anyon {

double wrap_angle(double a) {
    constexpr double kTwoPi = 2 * std::numbers::pi;
    double w = std::remainder(a, kTwoPi);
    return w <= -std::numbers::pi ? w + kTwoPi : w;
}

double angular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

SineFit fit_fringe(std::span<const double> alphas, std::span<const double> values) {
    if (alphas.size() != values.size()) {
        throw std::invalid_argument("fringe fit: alpha and value counts differ");
    }
    if (alphas.size() < 3) {
        throw std::invalid_argument("fringe fit needs at least 3 points");
    }
    double mean = 0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (!(std::abs(mean) > 0)) {
        throw DegenerateFitError("fringe fit: no signal (mean value is zero)");
    }

    // c(1 + V sin(phi - a)) = c + cV sin(phi) cos(a) - cV cos(phi) sin(a), linear in
    // (c, cV sin phi, -cV cos phi).
    const auto m = static_cast<Eigen::Index>(alphas.size());
    Eigen::MatrixXd design(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index k = 0; k < m; k++) {
        design(k, 0) = 1;
        design(k, 1) = std::cos(alphas[k]);
        design(k, 2) = std::sin(alphas[k]);
        y(k) = values[k] / mean;
    }
    Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);
    if (!(coef(0) > 0)) {
        throw DegenerateFitError("fringe fit: non-positive offset");
    }
    SineFit fit;
    fit.visibility = std::hypot(coef(1), coef(2)) / coef(0);
    if (fit.visibility < kMinVisibility) {
        throw DegenerateFitError("fringe fit: visibility " + std::to_string(fit.visibility) +
                                 " too small, phase undefined");
    }
    fit.scale = coef(0) * mean;
    fit.phase = wrap_angle(std::atan2(coef(1), -coef(2)));
    fit.residual = std::sqrt((design * coef - y).squaredNorm() / static_cast<double>(m));
    return fit;
}

std::vector<double> quarter_pi_grid(std::size_t steps) {
    std::vector<double> g(steps);
    for (std::size_t k = 0; k < steps; k++) {
        g[k] = static_cast<double>(k) * std::numbers::pi / 4;
    }
    return g;
}

std::vector<StateProjector> FringeSetting::projectors(double alpha) const {
    std::vector<StateProjector> out = fixed;
    out.push_back({probe_qubit, QubitState::equator(alpha)});
    return out;
}

FringeSetting fringe_setting(const Lattice &lat, std::size_t qubit, std::size_t vertex) {
    lat.check_edge(qubit);
    const auto &star = lat.star(vertex);
    if (!std::binary_search(star.begin(), star.end(), qubit)) {
        throw std::invalid_argument("probe qubit " + std::to_string(qubit) + " is not on vertex " +
                                    std::to_string(vertex));
    }
    FringeSetting s{qubit, {}};
    for (std::size_t q = 1; q <= lat.num_qubits(); q++) {
        if (q == qubit) continue;
        bool on_star = std::binary_search(star.begin(), star.end(), q);
        s.fixed.push_back({q, on_star ? QubitState::plus() : QubitState::h()});
    }
    return s;
}

FringeScan fringe_scan(const QuantumState &state, const FringeSetting &setting, std::span<const double> alphas) {
    FringeScan scan;
    scan.alphas.assign(alphas.begin(), alphas.end());
    for (double a : alphas) {
        scan.values.push_back(state.coincidence_probability(setting.projectors(a)));
    }
    scan.fit = fit_fringe(scan.alphas, scan.values);
    return scan;
}

}  // namespace anyon
