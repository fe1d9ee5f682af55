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

#include "oamsq/analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "oamsq/errors.h"
#include "oamsq/io.h"

namespace oamsq {

namespace {

std::vector<cdouble> unit_mode(const GaussianState &s, int mode) {
    std::vector<cdouble> c(static_cast<size_t>(s.n_modes()), 0.0);
    c[static_cast<size_t>(mode)] = 1;
    return c;
}

GaussianState change_basis(
    const GaussianState &s, const ModeBasis &from, const ModeBasis &to, const Eigen::Matrix2cd &u) {
    const int modes[2] = {s.require(from[0]), s.require(from[1])};
    GaussianState out = mode_unitary(s, u, modes);
    auto labels = out.labels();
    labels[static_cast<size_t>(modes[0])] = to[0];
    labels[static_cast<size_t>(modes[1])] = to[1];
    return out.relabeled(std::move(labels));
}

// Rounding must not turn a separable state at the bound into a witness.
bool below_bound(double sum, double bound) {
    return sum < bound - 1e-12;
}

}  // namespace

double db_linear(double db) {
    return std::pow(10.0, db / 10);
}

double linear_db(double v) {
    if (!(v > 0)) {
        throw DomainError(Errc::out_of_range, "dB needs a positive variance");
    }
    return 10 * std::log10(v);
}

GaussianState to_lg_basis(const GaussianState &s) {
    return change_basis(s, kHGBasis, kLGBasis, lg_hg_unitary().adjoint());
}

GaussianState to_hg_basis(const GaussianState &s) {
    return change_basis(s, kLGBasis, kHGBasis, lg_hg_unitary());
}

nlohmann::json WitnessResult::to_json() const {
    return {
        {"duan_sum", duan_sum},
        {"bound", bound},
        {"entangled", entangled},
        {"components", {{"V_X_HG10", v_x_hg10}, {"V_X_HG01", v_x_hg01}}},
    };
}

WitnessResult witness_from_components(double v_x_hg10, double v_x_hg01) {
    WitnessResult w;
    w.v_x_hg10 = v_x_hg10;
    w.v_x_hg01 = v_x_hg01;
    w.duan_sum = v_x_hg10 + v_x_hg01;
    w.entangled = below_bound(w.duan_sum, w.bound);
    return w;
}

WitnessResult duan_witness(const GaussianState &s) {
    const int plus = s.require(kLGplus);
    const int minus = s.require(kLGminus);
    const double r = 1 / std::sqrt(2.0);
    Eigen::VectorXd x_sum = Eigen::VectorXd::Zero(2 * s.n_modes());
    x_sum(2 * plus) = r;
    x_sum(2 * minus) = r;
    Eigen::VectorXd p_diff = Eigen::VectorXd::Zero(2 * s.n_modes());
    p_diff(2 * plus + 1) = r;
    p_diff(2 * minus + 1) = -r;
    const double lg_sum = quadrature_variance(s, x_sum) + quadrature_variance(s, p_diff);

    GaussianState hg = to_hg_basis(s);
    WitnessResult w = witness_from_components(
        quad_variance(hg, unit_mode(hg, hg.require(kHG10)), 0), quad_variance(hg, unit_mode(hg, hg.require(kHG01)), 0));
    if (!(std::abs(w.duan_sum - lg_sum) <= 1e-10)) {
        throw std::logic_error("LG and HG witness routes disagree by " + format_number(w.duan_sum - lg_sum));
    }
    w.duan_sum = lg_sum;
    w.entangled = below_bound(lg_sum, w.bound);
    return w;
}

double infer_lossless(double v_measured, double eta) {
    if (!(eta > 0 && eta <= 1)) {
        throw DomainError(Errc::out_of_range, "efficiency must be in (0, 1]");
    }
    if (!(v_measured > 1 - eta)) {
        throw DomainError(
            Errc::unreachable_target,
            "V=" + format_number(v_measured) + " is below the loss floor 1 - eta = " + format_number(1 - eta));
    }
    return 1 + (v_measured - 1) / eta;
}

nlohmann::json OrbitalEllipsoid::to_json() const {
    return {
        {"axes", {{"O1", axes[0]}, {"O2", axes[1]}, {"O3", axes[2]}}},
        {"axes_dB", {linear_db(axes[0]), linear_db(axes[1]), linear_db(axes[2])}},
        {"bright_mode", bright.str()},
        {"normalization", "coherent state = 1"},
    };
}

OrbitalEllipsoid orbital_ellipsoid(const GaussianState &s, const ModeLabel &bright) {
    if (!(bright == kHG10) && !(bright == kHG01)) {
        throw DomainError(Errc::bad_labels, "bright mode must be HG10 or HG01");
    }
    const ModeLabel dark_label = bright == kHG10 ? kHG01 : kHG10;
    const int b = s.require(bright);
    const int d = s.require(dark_label);
    const cdouble alpha = s.amplitude(b);
    if (!(std::abs(alpha) > 1e-9)) {
        throw DomainError(Errc::linearization_invalid, "bright mode " + bright.str() + " has no coherent amplitude");
    }
    if (!(std::abs(s.amplitude(d)) <= 1e-6 * std::abs(alpha))) {
        throw DomainError(Errc::linearization_invalid, "dark mode " + dark_label.str() + " carries a mean field");
    }
    // Quadratures are referred to the bright field's phase.
    const double phi = std::arg(alpha);
    OrbitalEllipsoid e;
    e.bright = bright;
    e.axes = {
        quad_variance(s, unit_mode(s, b), phi),
        quad_variance(s, unit_mode(s, d), phi),
        quad_variance(s, unit_mode(s, d), phi + std::numbers::pi / 2),
    };
    return e;
}

std::array<double, 3> ellipsoid_center(const OrbitalEllipsoid &e) {
    return e.bright == kHG10 ? std::array<double, 3>{1, 0, 0} : std::array<double, 3>{-1, 0, 0};
}

std::vector<std::array<double, 3>> ellipsoid_surface(const OrbitalEllipsoid &e, double scale, int n_polar, int n_azimuth) {
    if (n_polar < 1 || n_azimuth < 1 || !(scale > 0)) {
        throw DomainError(Errc::out_of_range, "surface needs positive resolution and scale");
    }
    const auto c = ellipsoid_center(e);
    std::array<double, 3> semi{};
    for (int k = 0; k < 3; k++) {
        semi[k] = scale * std::sqrt(e.axes[k]);
    }
    std::vector<std::array<double, 3>> points;
    for (int i = 0; i <= n_polar; i++) {
        double u = std::numbers::pi * i / n_polar;
        for (int j = 0; j < n_azimuth; j++) {
            double v = 2 * std::numbers::pi * j / n_azimuth;
            points.push_back({
                c[0] + semi[0] * std::sin(u) * std::cos(v),
                c[1] + semi[1] * std::sin(u) * std::sin(v),
                c[2] + semi[2] * std::cos(u),
            });
            if (i == 0 || i == n_polar) {
                break;  // poles
            }
        }
    }
    return points;
}

nlohmann::json SqueezeFit::to_json() const {
    return {
        {"V_min", v_min},
        {"V_max", v_max},
        {"V_min_dB", linear_db(v_min)},
        {"V_max_dB", linear_db(v_max)},
        {"V_min_stderr", v_min_stderr},
        {"V_max_stderr", v_max_stderr},
        {"theta0", theta0},
        {"residual_rms", residual},
    };
}

SqueezeFit fit_squeezing_curve(const VarianceTrace &trace) {
    const auto n = static_cast<Eigen::Index>(trace.samples.size());
    if (n < 8) {
        throw DomainError(Errc::insufficient_data, "fit needs at least 8 points");
    }
    double lo = trace.samples.front().phase;
    double hi = lo;
    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd v(n);
    for (Eigen::Index k = 0; k < n; k++) {
        const auto &s = trace.samples[static_cast<size_t>(k)];
        if (!(s.variance > 0)) {
            throw DomainError(Errc::out_of_range, "variances must be positive");
        }
        lo = std::min(lo, s.phase);
        hi = std::max(hi, s.phase);
        a(k, 0) = 1;
        a(k, 1) = std::cos(2 * s.phase);
        a(k, 2) = std::sin(2 * s.phase);
        v(k) = s.variance;
    }
    if (!(hi - lo >= std::numbers::pi - 1e-9)) {
        throw DomainError(Errc::insufficient_data, "trace must span at least pi of LO phase");
    }
    Eigen::Vector3d coef = a.colPivHouseholderQr().solve(v);
    const double mean = coef(0);
    const double rho = std::hypot(coef(1), coef(2));

    SqueezeFit fit;
    fit.v_min = mean - rho;
    fit.v_max = mean + rho;
    const bool flat = rho <= 1e-13 * std::max(1.0, std::abs(mean));
    fit.theta0 = flat ? 0.0 : 0.5 * std::atan2(-coef(2), -coef(1));
    if (fit.theta0 <= -std::numbers::pi / 2) {
        fit.theta0 += std::numbers::pi;
    }
    Eigen::VectorXd resid = a * coef - v;
    fit.residual = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
    if (n > 3) {
        Eigen::Matrix3d cov = (resid.squaredNorm() / static_cast<double>(n - 3)) * (a.transpose() * a).inverse();
        Eigen::Vector3d g = flat ? Eigen::Vector3d(1, 0, 0) : Eigen::Vector3d(1, coef(1) / rho, coef(2) / rho);
        fit.v_max_stderr = std::sqrt(std::max(0.0, g.dot(cov * g)));
        g.tail<2>() *= -1;
        fit.v_min_stderr = std::sqrt(std::max(0.0, g.dot(cov * g)));
    }
    return fit;
}

RingReport ring_report(const VarianceTrace &trace, const GaussianState &s) {
    if (trace.index_name != "psi") {
        throw DomainError(Errc::bad_labels, "ring report needs a ring-scan trace (index psi)");
    }
    s.require(kHG10);
    s.require(kHG01);
    RingReport report;
    int inside = 0;
    for (const auto &sample : trace.samples) {
        RingRow row;
        row.psi = sample.index;
        row.estimate = sample.variance;
        row.stderr_ = sample.stderr_;
        auto mode = ring_mode(sample.index);
        row.truth = quad_variance(s, mode, sample.phase);
        row.o = sphere_point(mode).o;
        double band = sample.stderr_ > 0 ? 2 * sample.stderr_ : 1e-12;
        if (std::abs(row.estimate - row.truth) <= band) {
            inside++;
        }
        report.rows.push_back(row);
    }
    report.fraction_within_2sigma = report.rows.empty() ? 0.0 : static_cast<double>(inside) / static_cast<double>(report.rows.size());
    return report;
}

void write_ring_csv(std::ostream &out, const RingReport &report) {
    out << "psi,variance_estimate,stderr,variance_true,variance_true_dB,o1,o2,o3\n";
    for (const auto &r : report.rows) {
        out << format_number(r.psi) << "," << format_number(r.estimate) << "," << format_number(r.stderr_) << ","
            << format_number(r.truth) << "," << format_number(linear_db(r.truth)) << "," << format_number(r.o[0]) << ","
            << format_number(r.o[1]) << "," << format_number(r.o[2]) << "\n";
    }
}

}  // namespace oamsq
