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

#ifndef OAMSQ_OPO_H
#define OAMSQ_OPO_H

#include <array>

#include "oamsq/gaussian.h"

namespace oamsq {

struct DetectionChain;

enum class LockMode { deamplification, amplification };

/// Below-threshold, spatially non-degenerate OPO. Each first-order HG mode
/// has its own pump parameter x = √(P/P_threshold), which lets the model
/// carry different squeezing levels for HG10 and HG01.
struct OpoConfig {
    std::array<double, 2> pump_param{0, 0};  // (HG10, HG01)
    double omega = 0.5;                      // sideband / cavity half-linewidth
    double eta_cav = 0.94;
    double seed_amp = 100;  // coherent amplitude in HG10, vacuum units
    LockMode lock = LockMode::deamplification;

    void validate() const;
};

/// Linear-unit variances of one mode, QNL = 1.
struct SqueezingSpec {
    double v_sq = 1;
    double v_anti = 1;

    void validate() const;
};

/// V∓ = 1 ∓ η_cav·4x / ((1 ± x)² + Ω²).
SqueezingSpec sideband_variances(double x, double omega, double eta_cav);

/// Two-mode product state labelled (HG10, HG01). HG10 carries the seed,
/// mean (2·seed_amp, 0). Under de-amplification lock the amplitude
/// quadrature is the squeezed one.
GaussianState opo_output_state(const OpoConfig &cfg, const std::array<SqueezingSpec, 2> &specs);
GaussianState opo_output_state(const OpoConfig &cfg);

/// Finds per-mode pump parameters so that, after the OPO escape efficiency
/// and `chain`, the amplitude variances equal `target_db`. Bisection on
/// [0, 1); DomainError(unreachable_target) when no x below threshold gets
/// there.
OpoConfig calibrate_to_paper(
    const std::array<double, 2> &target_db, const DetectionChain &chain, double omega, double eta_cav = 0.94,
    double seed_amp = 100, LockMode lock = LockMode::deamplification);

}  // namespace oamsq

#endif
