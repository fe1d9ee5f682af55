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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oamsq/errors.h"
#include "oamsq/opo.h"

using namespace oamsq;

namespace {

GaussianState random_hg_state(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    auto s = two_mode_squeeze(vacuum(2), 0, 1, u(rng));
    s = single_mode_squeeze(s, 0, u(rng), 3 * u(rng));
    s = single_mode_squeeze(s, 1, u(rng), 3 * u(rng));
    s = loss(s, 0, u(rng));
    return displace(s, 0, cdouble(5 * u(rng), u(rng)));
}

VarianceTrace exact_scan(const GaussianState &s, const ModeCoefficients &mode, int n, double theta0 = 0) {
    return scan_trace(s, LOSpec{mode, PhaseRamp{theta0, 2 * std::numbers::pi, 1}}, {0, n}, 0);
}

}  // namespace

TEST(analysis, db_conversions) {
    EXPECT_NEAR(db_linear(-1.6), 0.691831, 1e-6);
    EXPECT_NEAR(db_linear(-1.4), 0.724436, 1e-6);
    EXPECT_NEAR(linear_db(db_linear(-2.15)), -2.15, 1e-12);
    EXPECT_THROW(linear_db(0), DomainError);
}

TEST(analysis, basis_round_trip) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 50; k++) {
        auto s = random_hg_state(rng);
        auto lg = to_lg_basis(s);
        EXPECT_EQ(lg.labels()[0], kLGplus);
        auto back = to_hg_basis(lg);
        EXPECT_LT((back.cov() - s.cov()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((back.mean() - s.mean()).cwiseAbs().maxCoeff(), 1e-12);
    }
    EXPECT_THROW(to_hg_basis(vacuum(2)), DomainError);
}

TEST(analysis, lg_quadratures_in_hg_terms) {
    // X_HG10 = (X_LG- + X_LG+)/√2 and X_HG01 = (P_LG- − P_LG+)/√2.
    std::mt19937_64 rng(47);
    const double r = 1 / std::sqrt(2.0);
    for (int k = 0; k < 20; k++) {
        auto s = random_hg_state(rng);
        auto lg = to_lg_basis(s);
        Eigen::VectorXd x10(4), x01(4);
        x10 << r, 0, r, 0;
        x01 << 0, -r, 0, r;
        EXPECT_NEAR(quadrature_variance(lg, x10), s.cov()(0, 0), 1e-12);
        EXPECT_NEAR(quadrature_variance(lg, x01), s.cov()(2, 2), 1e-12);
        EXPECT_NEAR((x10.transpose() * lg.mean())(0), s.mean()(0), 1e-12);
    }
}

TEST(analysis, witness_identity_property) {
    std::mt19937_64 rng(53);
    for (int k = 0; k < 200; k++) {
        auto s = random_hg_state(rng);
        auto w = duan_witness(to_lg_basis(s));
        EXPECT_NEAR(w.duan_sum, s.cov()(0, 0) + s.cov()(2, 2), 1e-10);
        EXPECT_EQ(w.entangled, w.duan_sum < 2);
    }
}

TEST(analysis, witness_of_vacuum_and_coherent) {
    auto v = duan_witness(to_lg_basis(vacuum(2)));
    EXPECT_NEAR(v.duan_sum, 2, 1e-12);
    EXPECT_FALSE(v.entangled);
    auto c = duan_witness(to_lg_basis(displace(vacuum(2), 0, 100.0)));
    EXPECT_NEAR(c.duan_sum, 2, 1e-12);
    EXPECT_FALSE(c.entangled);
    EXPECT_THROW(duan_witness(vacuum(2)), DomainError);
}

TEST(analysis, witness_published_numbers) {
    auto measured = witness_from_components(db_linear(-1.6), db_linear(-1.4));
    EXPECT_NEAR(measured.duan_sum, 1.416, 1e-3);
    EXPECT_TRUE(measured.entangled);
    auto inferred = witness_from_components(infer_lossless(db_linear(-1.6), 0.79), infer_lossless(db_linear(-1.4), 0.79));
    EXPECT_NEAR(linear_db(inferred.v_x_hg10), -2.15, 0.01);
    EXPECT_NEAR(linear_db(inferred.v_x_hg01), -1.86, 0.01);
    EXPECT_NEAR(inferred.duan_sum, 1.26, 2e-3);
}

TEST(analysis, infer_lossless_inverts_loss) {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.05, 1);
    for (int k = 0; k < 100; k++) {
        double v = u(rng) * 3;
        double eta = u(rng);
        Eigen::MatrixXd cov(2, 2);
        cov << v, 0, 0, 1 / v;
        auto lossy = loss(GaussianState({kHG10}, Eigen::VectorXd::Zero(2), cov), 0, eta);
        EXPECT_NEAR(infer_lossless(lossy.cov()(0, 0), eta), v, 1e-9);
    }
    try {
        infer_lossless(0.1, 0.5);
        FAIL();
    } catch (const DomainError &e) {
        EXPECT_EQ(e.code(), Errc::unreachable_target);
    }
    EXPECT_THROW(infer_lossless(0.9, 0), DomainError);
}

TEST(analysis, ellipsoid_axes) {
    OpoConfig cfg;
    cfg.pump_param = {0.15, 0.13};
    auto s = opo_output_state(cfg);
    auto e = orbital_ellipsoid(s);
    EXPECT_NEAR(e.axes[0], s.cov()(0, 0), 1e-15);
    EXPECT_NEAR(e.axes[1], s.cov()(2, 2), 1e-15);
    EXPECT_NEAR(e.axes[2], s.cov()(3, 3), 1e-12);
    auto c = ellipsoid_center(e);
    EXPECT_EQ(c[0], 1);
    auto j = e.to_json();
    EXPECT_EQ(j.at("bright_mode"), "HG10");
}

TEST(analysis, ellipsoid_is_referenced_to_bright_phase) {
    OpoConfig cfg;
    cfg.pump_param = {0.15, 0.13};
    cfg.seed_amp = 0;
    auto base = opo_output_state(cfg);
    const double phi = 0.7;
    Eigen::Matrix2cd u = Eigen::Vector2cd(std::polar(1.0, phi), std::polar(1.0, phi)).asDiagonal();
    const int modes[] = {0, 1};
    auto rotated = displace(mode_unitary(base, u, modes), 0, std::polar(50.0, phi));
    auto reference = orbital_ellipsoid(displace(base, 0, 50.0));
    auto e = orbital_ellipsoid(rotated);
    for (int k = 0; k < 3; k++) {
        EXPECT_NEAR(e.axes[k], reference.axes[k], 1e-12);
    }
}

TEST(analysis, ellipsoid_needs_bright_mode) {
    OpoConfig cfg;
    cfg.seed_amp = 0;
    try {
        orbital_ellipsoid(opo_output_state(cfg));
        FAIL();
    } catch (const DomainError &e) {
        EXPECT_EQ(e.code(), Errc::linearization_invalid);
    }
    auto both = displace(displace(vacuum(2), 0, 10.0), 1, 1.0);
    EXPECT_THROW(orbital_ellipsoid(both), DomainError);
    EXPECT_THROW(orbital_ellipsoid(vacuum(2), kLGplus), DomainError);
}

TEST(analysis, ellipsoid_surface_points) {
    OrbitalEllipsoid e;
    e.axes = {0.69, 0.72, 1.5};
    auto pts = ellipsoid_surface(e, 0.2, 24, 48);
    EXPECT_EQ(pts.size(), 2u + 23u * 48u);
    for (const auto &p : pts) {
        double q = 0;
        const std::array<double, 3> c{1, 0, 0};
        for (int k = 0; k < 3; k++) {
            double semi = 0.2 * std::sqrt(e.axes[k]);
            q += std::pow((p[k] - c[k]) / semi, 2);
        }
        EXPECT_NEAR(q, 1, 1e-12);
    }
    EXPECT_THROW(ellipsoid_surface(e, 0, 24, 48), DomainError);
}

TEST(analysis, fit_exact_on_noiseless_trace) {
    auto s = single_mode_squeeze(vacuum(2), 0, 0.3, 0.4);
    auto fit = fit_squeezing_curve(exact_scan(s, ModeCoefficients::hg(1, 0), 100));
    EXPECT_NEAR(fit.v_min, std::exp(-0.6), 1e-12);
    EXPECT_NEAR(fit.v_max, std::exp(0.6), 1e-12);
    EXPECT_NEAR(fit.theta0, 0.4, 1e-12);
    EXPECT_LT(fit.residual, 1e-12);
    EXPECT_LT(fit.v_min_stderr, 1e-10);
}

TEST(analysis, fit_flat_trace) {
    auto fit = fit_squeezing_curve(exact_scan(vacuum(2), ModeCoefficients::hg(1, 0), 50));
    EXPECT_NEAR(fit.v_min, 1, 1e-12);
    EXPECT_NEAR(fit.v_max, 1, 1e-12);
    EXPECT_EQ(fit.theta0, 0);
}

TEST(analysis, fit_requires_data) {
    auto s = vacuum(2);
    EXPECT_THROW(fit_squeezing_curve(exact_scan(s, ModeCoefficients::hg(1, 0), 7)), DomainError);
    VarianceTrace narrow{"t", {}, 0, 0};
    for (int k = 0; k < 20; k++) {
        narrow.samples.push_back({k * 0.1, k * 0.1, 1.0, 0});
    }
    try {
        fit_squeezing_curve(narrow);
        FAIL();
    } catch (const DomainError &e) {
        EXPECT_EQ(e.code(), Errc::insufficient_data);
    }
}

TEST(analysis, fit_recovers_noisy_extrema) {
    auto s = single_mode_squeeze(vacuum(2), 0, 0.2, 0);
    LOSpec lo{ModeCoefficients::hg(1, 0), PhaseRamp{0, 2 * std::numbers::pi, 1}};
    double worst = 0;
    for (std::uint64_t seed = 1; seed <= 20; seed++) {
        auto fit = fit_squeezing_curve(scan_trace(s, lo, {}, seed));
        worst = std::max(worst, std::abs(fit.v_min / std::exp(-0.4) - 1));
        EXPECT_GT(fit.v_min_stderr, 0);
    }
    EXPECT_LT(worst, 0.02);
}

TEST(analysis, ring_report_rows) {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4, 4);
    cov.diagonal() << 0.69, 1.5, 0.72, 1.4;
    GaussianState s({kHG10, kHG01}, Eigen::VectorXd::Zero(4), cov);
    std::vector<double> psi;
    for (int k = 0; k < 32; k++) {
        psi.push_back(2 * std::numbers::pi * k / 32);
    }
    auto report = ring_report(ring_scan(s, psi, 0, {0, 1}, 3), s);
    EXPECT_EQ(report.fraction_within_2sigma, 1);
    for (const auto &row : report.rows) {
        double c = std::cos(row.psi);
        double sn = std::sin(row.psi);
        EXPECT_NEAR(row.truth, 0.5 * (0.69 + c * c * 0.72 + sn * sn * 1.4), 1e-12);
        EXPECT_NEAR(row.o[0], 0, 1e-15);
        EXPECT_NEAR(row.o[1], c, 1e-15);
    }
    auto noisy = ring_report(ring_scan(s, psi, 0, {}, 3), s);
    EXPECT_GT(noisy.fraction_within_2sigma, 0.75);

    std::ostringstream out;
    write_ring_csv(out, report);
    EXPECT_EQ(out.str().rfind("psi,variance_estimate,stderr,variance_true,variance_true_dB,o1,o2,o3\n", 0), 0u);
    auto scan = exact_scan(s, ModeCoefficients::hg(1, 0), 10);
    EXPECT_THROW(ring_report(scan, s), DomainError);
}
