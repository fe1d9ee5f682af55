// Copyright 2026 The oamsq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OAMSQ_ANALYSIS_H
#define OAMSQ_ANALYSIS_H

#include <array>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <vector>

#include "oamsq/detection.h"
#include "oamsq/gaussian.h"

namespace oamsq {

double db_linear(double db);
double linear_db(double v);

/// Rewrites a state carrying HG10/HG01 into the LG0^{±1} basis (labels
/// LG0+1, LG0-1 in place of HG10, HG01), and back.
GaussianState to_lg_basis(const GaussianState &s);
GaussianState to_hg_basis(const GaussianState &s);

struct WitnessResult {
    double duan_sum = 0;
    double bound = 2;
    bool entangled = false;
    double v_x_hg10 = 0;
    double v_x_hg01 = 0;

    nlohmann::json to_json() const;
};

/// V((X+ + X−)/√2) + V((P+ − P−)/√2) on a state with LG0^{±1} modes. The
/// HG-basis reduction V(X_HG10) + V(X_HG01) is computed separately and must
/// agree within 1e-10.
WitnessResult duan_witness(const GaussianState &s);

/// Witness from the two measured HG amplitude variances.
WitnessResult witness_from_components(double v_x_hg10, double v_x_hg01);

/// 1 + (V − 1)/η. DomainError(unreachable_target) when V ≤ 1 − η.
double infer_lossless(double v_measured, double eta);

/// Normalized variances of the linearized orbital parameters
/// (δO1, δO2, δO3) ∝ (δX_bright, δX_dark, δP_dark), referred to the bright
/// mode's phase. A coherent state gives (1, 1, 1).
struct OrbitalEllipsoid {
    std::array<double, 3> axes{1, 1, 1};
    ModeLabel bright = kHG10;

    nlohmann::json to_json() const;
};

OrbitalEllipsoid orbital_ellipsoid(const GaussianState &s, const ModeLabel &bright = kHG10);

/// Surface of the uncertainty ellipsoid centred at the bright mode's
/// sphere point, semi-axes scale·√axes along (o1, o2, o3).
std::vector<std::array<double, 3>> ellipsoid_surface(
    const OrbitalEllipsoid &e, double scale = 0.2, int n_polar = 24, int n_azimuth = 48);
std::array<double, 3> ellipsoid_center(const OrbitalEllipsoid &e);

struct SqueezeFit {
    double v_min = 1;
    double v_max = 1;
    double theta0 = 0;
    double residual = 0;  // rms
    double v_min_stderr = 0;
    double v_max_stderr = 0;

    nlohmann::json to_json() const;
};

/// Least squares of V(θ) = V_min cos²(θ−θ0) + V_max sin²(θ−θ0), solved
/// linearly in (1, cos 2θ, sin 2θ). θ0 ∈ (−π/2, π/2], and 0 for a flat
/// curve.
SqueezeFit fit_squeezing_curve(const VarianceTrace &trace);

struct RingRow {
    double psi = 0;
    double estimate = 0;
    double stderr_ = 0;
    double truth = 0;
    std::array<double, 3> o{};
};

struct RingReport {
    std::vector<RingRow> rows;
    double fraction_within_2sigma = 0;
};

RingReport ring_report(const VarianceTrace &trace, const GaussianState &s);
void write_ring_csv(std::ostream &out, const RingReport &report);

}  // namespace oamsq

#endif
