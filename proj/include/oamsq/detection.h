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

#ifndef OAMSQ_DETECTION_H
#define OAMSQ_DETECTION_H

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "oamsq/gaussian.h"

namespace oamsq {

/// Measurement path after the OPO. The cavity escape efficiency belongs to
/// the source (OpoConfig); the frequency settings are metadata.
struct DetectionChain {
    double eta_prop = 0.97;
    double eta_det = 0.90;
    double eta_hd = 0.96;
    double analysis_freq_hz = 5.5e6;
    double rbw_hz = 300e3;
    double vbw_hz = 300;

    void validate() const;
    /// η_prop·η_det·η_hd.
    double eta_chain() const {
        return eta_prop * eta_det * eta_hd;
    }
    /// η_cav·η_prop·η_det·η_hd.
    double eta_total(double eta_cav) const {
        return eta_cav * eta_chain();
    }
    /// Independent samples averaged per displayed point, RBW/VBW.
    int window_samples() const;
};

/// Loss η_chain on every mode of the state.
GaussianState apply_chain(const GaussianState &s, const DetectionChain &chain);

/// θ(t) = theta0 + rate·t for t ∈ [0, duration).
struct PhaseRamp {
    double theta0 = 0;
    double rate = 0;
    double duration = 0;
};

struct LOSpec {
    ModeCoefficients mode;
    std::variant<double, PhaseRamp> phase;

    double phase_at(double t) const;
};

/// Quadrature variance seen by a homodyne detector with LO `lo` at t = 0.
double homodyne_variance(const GaussianState &s, const LOSpec &lo);

/// window_samples = 0 means the infinite-window limit (exact variances,
/// zero stderr).
struct Estimator {
    int window_samples = 1000;
    int n_points = 500;
};

struct TraceSample {
    double index = 0;  // t for phase scans, ψ for ring scans
    double phase = 0;  // LO phase θ
    double variance = 0;
    double stderr_ = 0;
};

struct VarianceTrace {
    std::string index_name;  // "t" or "psi"
    std::vector<TraceSample> samples;
    std::uint64_t seed = 0;
    int window_samples = 0;
};

/// Scans the LO phase along its ramp; each point is a scaled chi-square
/// estimate of the true variance with window_samples − 1 degrees of
/// freedom. Each point draws from its own (seed, index) stream, so output
/// does not depend on evaluation order.
VarianceTrace scan_trace(const GaussianState &s, const LOSpec &lo, const Estimator &estimator, std::uint64_t seed);

/// Amplitude quadrature (LO phase `theta`) of ring_mode(ψ) for each ψ.
VarianceTrace ring_scan(
    const GaussianState &s, std::span<const double> psi, double theta, const Estimator &estimator,
    std::uint64_t seed);

/// Header: one "# {json}" metadata line, then
/// index_variable,variance_linear,variance_dB,stderr.
void write_trace_csv(std::ostream &out, const VarianceTrace &trace);

}  // namespace oamsq

#endif
