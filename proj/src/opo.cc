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

#include "oamsq/opo.h"

#include <cmath>

#include "oamsq/detection.h"
#include "oamsq/errors.h"
#include "oamsq/io.h"

namespace oamsq {

void OpoConfig::validate() const {
    for (double x : pump_param) {
        if (x >= 1) {
            throw DomainError(Errc::above_threshold, "pump parameter " + format_number(x) + " is at or above threshold");
        }
        if (!(x >= 0)) {
            throw DomainError(Errc::out_of_range, "pump parameter must be >= 0");
        }
    }
    if (!(omega >= 0) || !std::isfinite(omega)) {
        throw DomainError(Errc::out_of_range, "sideband frequency must be finite and >= 0");
    }
    if (!(eta_cav > 0 && eta_cav <= 1)) {
        throw DomainError(Errc::out_of_range, "escape efficiency must be in (0, 1]");
    }
    if (!std::isfinite(seed_amp)) {
        throw DomainError(Errc::out_of_range, "seed amplitude must be finite");
    }
}

void SqueezingSpec::validate() const {
    if (!(v_sq > 0 && v_sq <= 1 && v_anti >= 1 && std::isfinite(v_anti))) {
        throw DomainError(
            Errc::out_of_range,
            "squeezing spec needs 0 < V_sq <= 1 <= V_anti (got " + format_number(v_sq) + ", " + format_number(v_anti) + ")");
    }
    if (!(v_sq * v_anti >= 1 - 1e-12)) {
        throw DomainError(Errc::out_of_range, "V_sq * V_anti below the uncertainty bound");
    }
}

SqueezingSpec sideband_variances(double x, double omega, double eta_cav) {
    if (x >= 1) {
        throw DomainError(Errc::above_threshold, "pump parameter " + format_number(x) + " is at or above threshold");
    }
    if (!(x >= 0) || !(omega >= 0) || !(eta_cav > 0 && eta_cav <= 1)) {
        throw DomainError(Errc::out_of_range, "need 0 <= x < 1, omega >= 0, 0 < eta_cav <= 1");
    }
    double w2 = omega * omega;
    return {
        1 - eta_cav * 4 * x / ((1 + x) * (1 + x) + w2),
        1 + eta_cav * 4 * x / ((1 - x) * (1 - x) + w2),
    };
}

GaussianState opo_output_state(const OpoConfig &cfg, const std::array<SqueezingSpec, 2> &specs) {
    cfg.validate();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4, 4);
    for (int k = 0; k < 2; k++) {
        specs[k].validate();
        bool amplitude_squeezed = cfg.lock == LockMode::deamplification;
        cov(2 * k, 2 * k) = amplitude_squeezed ? specs[k].v_sq : specs[k].v_anti;
        cov(2 * k + 1, 2 * k + 1) = amplitude_squeezed ? specs[k].v_anti : specs[k].v_sq;
    }
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
    mean(0) = 2 * cfg.seed_amp;
    return make_state({kHG10, kHG01}, mean, cov);
}

GaussianState opo_output_state(const OpoConfig &cfg) {
    cfg.validate();
    return opo_output_state(
        cfg, {sideband_variances(cfg.pump_param[0], cfg.omega, cfg.eta_cav),
              sideband_variances(cfg.pump_param[1], cfg.omega, cfg.eta_cav)});
}

OpoConfig calibrate_to_paper(
    const std::array<double, 2> &target_db, const DetectionChain &chain, double omega, double eta_cav,
    double seed_amp, LockMode lock) {
    chain.validate();
    OpoConfig cfg;
    cfg.omega = omega;
    cfg.eta_cav = eta_cav;
    cfg.seed_amp = seed_amp;
    cfg.lock = lock;
    cfg.validate();

    const double eta = chain.eta_chain();
    auto measured = [&](double x) {
        return 1 + eta * (sideband_variances(x, omega, eta_cav).v_sq - 1);
    };
    const double floor = 1 - chain.eta_total(eta_cav) * 4 / (4 + omega * omega);

    for (int k = 0; k < 2; k++) {
        if (target_db[k] == 0) {
            cfg.pump_param[k] = 0;
            continue;
        }
        double target = std::pow(10.0, target_db[k] / 10);
        if (!(target < 1 && target > floor)) {
            throw DomainError(
                Errc::unreachable_target,
                format_number(target_db[k]) + " dB is outside the reachable range (" + format_number(10 * std::log10(floor)) +
                    ", 0] dB for this chain and sideband frequency");
        }
        double lo = 0;
        double hi = 1;
        for (int it = 0; it < 200 && hi - lo > 1e-16; it++) {
            double mid = 0.5 * (lo + hi);
            if (measured(mid) > target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        cfg.pump_param[k] = 0.5 * (lo + hi);
    }
    return cfg;
}

}  // namespace oamsq
