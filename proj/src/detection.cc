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

#include "oamsq/detection.h"

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <ostream>
#include <random>

#include "oamsq/errors.h"
#include "oamsq/io.h"

namespace oamsq {

namespace {

// Stream tags keep phase scans and ring scans on disjoint RNG streams.
constexpr std::uint32_t kScanStream = 0x5343414e;
constexpr std::uint32_t kRingStream = 0x52494e47;

void check_estimator(const Estimator &e) {
    if (e.window_samples == 1 || e.window_samples < 0) {
        throw DomainError(Errc::insufficient_data, "window_samples must be >= 2 (or 0 for the exact limit)");
    }
    if (e.n_points < 1) {
        throw DomainError(Errc::insufficient_data, "estimator needs at least one point");
    }
}

TraceSample estimate(double truth, int window, std::uint64_t seed, std::uint32_t stream, std::uint64_t point) {
    TraceSample out;
    if (window == 0) {
        out.variance = truth;
        return out;
    }
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream,
        static_cast<std::uint32_t>(point), static_cast<std::uint32_t>(point >> 32)};
    std::mt19937_64 rng(seq);
    const double dof = window - 1;
    std::chi_squared_distribution<double> chi2(dof);
    out.variance = truth * chi2(rng) / dof;
    out.stderr_ = out.variance * std::sqrt(2 / dof);
    return out;
}

}  // namespace

void DetectionChain::validate() const {
    for (double eta : {eta_prop, eta_det, eta_hd}) {
        if (!(eta >= 0 && eta <= 1)) {
            throw DomainError(Errc::out_of_range, "efficiency " + format_number(eta) + " outside [0, 1]");
        }
    }
    if (!(rbw_hz > 0 && vbw_hz > 0 && analysis_freq_hz > 0)) {
        throw DomainError(Errc::out_of_range, "analyzer frequencies must be positive");
    }
}

int DetectionChain::window_samples() const {
    validate();
    long n = std::lround(rbw_hz / vbw_hz);
    return static_cast<int>(std::max(2L, n));
}

GaussianState apply_chain(const GaussianState &s, const DetectionChain &chain) {
    chain.validate();
    GaussianState out = s;
    const double eta = chain.eta_chain();
    for (int k = 0; k < s.n_modes(); k++) {
        out = loss(out, k, eta);
    }
    return out;
}

double LOSpec::phase_at(double t) const {
    if (const auto *fixed = std::get_if<double>(&phase)) {
        return *fixed;
    }
    const auto &ramp = std::get<PhaseRamp>(phase);
    return ramp.theta0 + ramp.rate * t;
}

double homodyne_variance(const GaussianState &s, const LOSpec &lo) {
    return quad_variance(s, lo.mode, lo.phase_at(0));
}

VarianceTrace scan_trace(const GaussianState &s, const LOSpec &lo, const Estimator &estimator, std::uint64_t seed) {
    check_estimator(estimator);
    const auto *ramp = std::get_if<PhaseRamp>(&lo.phase);
    if (ramp == nullptr) {
        throw DomainError(Errc::insufficient_data, "phase scan needs a ramped LO");
    }
    if (!(std::abs(ramp->rate) * ramp->duration >= std::numbers::pi - 1e-12)) {
        throw DomainError(Errc::insufficient_data, "LO ramp must cover at least pi of phase");
    }
    VarianceTrace trace{"t", {}, seed, estimator.window_samples};
    trace.samples.reserve(static_cast<size_t>(estimator.n_points));
    for (int k = 0; k < estimator.n_points; k++) {
        double t = ramp->duration * k / estimator.n_points;
        double theta = lo.phase_at(t);
        double truth = quad_variance(s, lo.mode, theta);
        TraceSample sample = estimate(truth, estimator.window_samples, seed, kScanStream, static_cast<std::uint64_t>(k));
        sample.index = t;
        sample.phase = theta;
        trace.samples.push_back(sample);
    }
    return trace;
}

VarianceTrace ring_scan(
    const GaussianState &s, std::span<const double> psi, double theta, const Estimator &estimator,
    std::uint64_t seed) {
    check_estimator(estimator);
    if (psi.empty()) {
        throw DomainError(Errc::insufficient_data, "ring scan needs at least one psi");
    }
    s.require(kHG10);
    s.require(kHG01);
    VarianceTrace trace{"psi", {}, seed, estimator.window_samples};
    for (size_t k = 0; k < psi.size(); k++) {
        double truth = quad_variance(s, ring_mode(psi[k]), theta);
        TraceSample sample = estimate(truth, estimator.window_samples, seed, kRingStream, k);
        sample.index = psi[k];
        sample.phase = theta;
        trace.samples.push_back(sample);
    }
    return trace;
}

void write_trace_csv(std::ostream &out, const VarianceTrace &trace) {
    nlohmann::json meta;
    meta["index_variable"] = trace.index_name;
    meta["seed"] = trace.seed;
    meta["window_samples"] = trace.window_samples;
    meta["n_points"] = trace.samples.size();
    meta["normalization"] = "QNL=1";
    out << "# " << meta.dump() << "\n";
    out << "index_variable,variance_linear,variance_dB,stderr\n";
    for (const auto &s : trace.samples) {
        out << format_number(s.index) << "," << format_number(s.variance) << ","
            << format_number(10 * std::log10(s.variance)) << "," << format_number(s.stderr_) << "\n";
    }
}

}  // namespace oamsq
