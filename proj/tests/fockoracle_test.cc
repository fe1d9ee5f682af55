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

#include "oamsq/fockoracle.h"

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oamsq/errors.h"

using namespace oamsq;
using namespace oamsq::fock;

namespace {

const cdouble kI{0, 1};

Eigen::MatrixXcd number_operator(int d) {
    Eigen::MatrixXcd a = ladder(d, 0);
    Eigen::MatrixXcd b = ladder(d, 1);
    return a.adjoint() * a + b.adjoint() * b;
}

}  // namespace

TEST(fockoracle, ladder_action) {
    const int d = 5;
    auto a = ladder(d, 0);
    auto psi = fock::apply(a, fock_state(d, 3, 1));
    EXPECT_NEAR(std::abs(psi.at(2, 1) - std::sqrt(3.0)), 0, 1e-15);
    auto b = ladder(d, 1);
    EXPECT_NEAR(std::abs(fock::apply(b, fock_state(d, 3, 1)).at(3, 0) - 1.0), 0, 1e-15);
}

TEST(fockoracle, cutoff_limits) {
    EXPECT_THROW(ladder(2, 0), DomainError);
    EXPECT_THROW(orbital_operators(kMaxCutoff + 1), DomainError);
    EXPECT_THROW(ladder(4, 2), DomainError);
    try {
        two_mode_squeezed_vector(3.0, 10);
        FAIL();
    } catch (const DomainError &e) {
        EXPECT_EQ(e.code(), Errc::insufficient_cutoff);
    }
}

TEST(fockoracle, passive_unitary_transforms_ladders) {
    const int d = 8;
    const double s = 1 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    m << s, s, -s, s;
    for (const Eigen::Matrix2cd &mm : {Eigen::Matrix2cd(m), Eigen::Matrix2cd(lg_hg_unitary().adjoint())}) {
        auto w = passive_unitary(d, mm);
        Eigen::MatrixXcd a0 = ladder(d, 0);
        Eigen::MatrixXcd a1 = ladder(d, 1);
        Eigen::MatrixXcd lhs = w.adjoint() * a0 * w;
        Eigen::MatrixXcd rhs = mm(0, 0) * a0 + mm(0, 1) * a1;
        EXPECT_LT(safe_norm(lhs - rhs, d), 1e-10);
    }
}

TEST(fockoracle, routes_agree) {
    const int d = 10;
    auto conj = orbital_operators(d);
    auto lit = orbital_operators_literal(d);
    EXPECT_LT(safe_norm(conj.o1.matrix - lit.o1.matrix, d), 1e-10);
    EXPECT_LT(safe_norm(conj.o2.matrix - lit.o2.matrix, d), 1e-10);
    EXPECT_LT(safe_norm(conj.o3.matrix - lit.o3.matrix, d), 1e-10);
}

TEST(fockoracle, ladder_forms_of_o2_o3) {
    const int d = 8;
    auto ops = orbital_operators_literal(d);
    Eigen::MatrixXcd a10 = ladder(d, 0);
    Eigen::MatrixXcd a01 = ladder(d, 1);
    Eigen::MatrixXcd o2 = a10.adjoint() * a01 + a01.adjoint() * a10;
    Eigen::MatrixXcd o3 = kI * (a01.adjoint() * a10 - a10.adjoint() * a01);
    EXPECT_LT(safe_norm(ops.o2.matrix - o2, d), 1e-12);
    EXPECT_LT(safe_norm(ops.o3.matrix - o3, d), 1e-12);
}

TEST(fockoracle, commutators_close_with_factor_two) {
    for (int d : {6, 12, 20}) {
        auto ops = orbital_operators(d);
        const std::array<const Eigen::MatrixXcd *, 3> o{&ops.o1.matrix, &ops.o2.matrix, &ops.o3.matrix};
        for (int k = 0; k < 3; k++) {
            const auto &a = *o[k];
            const auto &b = *o[(k + 1) % 3];
            const auto &c = *o[(k + 2) % 3];
            Eigen::MatrixXcd comm = a * b - b * a;
            double scale = safe_norm(c, d);
            EXPECT_LT(safe_norm(comm - 2.0 * kI * c, d) / scale, 1e-10) << "d=" << d << " k=" << k;
            // The unscaled relation does not hold.
            EXPECT_GT(safe_norm(comm - kI * c, d) / scale, 0.5);
        }
    }
}

TEST(fockoracle, casimir) {
    const int d = 10;
    auto ops = orbital_operators_literal(d);
    Eigen::MatrixXcd n = number_operator(d);
    Eigen::MatrixXcd lhs = ops.o1.matrix * ops.o1.matrix + ops.o2.matrix * ops.o2.matrix +
                           ops.o3.matrix * ops.o3.matrix;
    Eigen::MatrixXcd rhs = n * (n + 2.0 * Eigen::MatrixXcd::Identity(d * d, d * d));
    EXPECT_LT(safe_norm(lhs - rhs, d), 1e-9);
}

TEST(fockoracle, o3_single_photon_eigenstates) {
    const int d = 4;
    auto ops = orbital_operators(d);
    auto plus = single_photon(d, ModeCoefficients::lg(1, 0));
    auto minus = single_photon(d, ModeCoefficients::lg(0, 1));
    auto op = fock::apply(ops.o3.matrix, plus);
    EXPECT_LT((op.amplitudes - plus.amplitudes).norm(), 1e-12);
    auto om = fock::apply(ops.o3.matrix, minus);
    EXPECT_LT((om.amplitudes + minus.amplitudes).norm(), 1e-12);

    Eigen::Matrix2cd block;
    const int idx[] = {1 * d + 0, 0 * d + 1};
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            block(r, c) = ops.o3.matrix(idx[r], idx[c]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
    EXPECT_NEAR(es.eigenvalues()(0), -1, 1e-12);
    EXPECT_NEAR(es.eigenvalues()(1), 1, 1e-12);
}

TEST(fockoracle, single_photon_quadrature_variance) {
    auto psi = fock_state(6, 1, 0);
    EXPECT_NEAR(oracle_variance(psi, {{1, 0, 0, 0}}), 3, 1e-12);
    EXPECT_NEAR(oracle_variance(psi, {{0, 0, 1, 0}}), 1, 1e-12);
    EXPECT_NEAR(oracle_variance(fock_state(6, 0, 0), {{0, 1, 0, 0}}), 1, 1e-12);
}

TEST(fockoracle, two_mode_squeezed_duan_sum) {
    auto psi = two_mode_squeezed_vector(0.3, 20);
    EXPECT_NEAR(psi.amplitudes.norm(), 1, 1e-12);
    EXPECT_NEAR(oracle_duan_sum(psi), 2 * std::exp(-0.6), 1e-6);
    EXPECT_NEAR(oracle_duan_sum(psi), 1.097623, 1e-6);
    EXPECT_LT(psi.at(1, 1).real(), 0);
    Eigen::MatrixXcd a = ladder(20, 0);
    EXPECT_NEAR(expectation(a.adjoint() * a, psi).real(), std::sinh(0.3) * std::sinh(0.3), 1e-9);
}

TEST(fockoracle, squeezed_product_variances) {
    double r1 = 0.2;
    double r2 = 0.35;
    auto psi = squeezed_vacuum_product(r1, r2, 24);
    EXPECT_NEAR(oracle_variance(psi, {{1, 0, 0, 0}}), std::exp(-2 * r1), 1e-8);
    EXPECT_NEAR(oracle_variance(psi, {{0, 1, 0, 0}}), std::exp(2 * r1), 1e-8);
    EXPECT_NEAR(oracle_variance(psi, {{0, 0, 1, 0}}), std::exp(-2 * r2), 1e-8);
    EXPECT_NEAR(oracle_variance(psi, {{0, 0, 0, 1}}), std::exp(2 * r2), 1e-8);
}

TEST(fockoracle, orbital_expectations_on_sphere) {
    const int d = 4;
    auto ops = orbital_operators(d);
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g;
    for (int k = 0; k < 20; k++) {
        cdouble a{g(rng), g(rng)};
        cdouble b{g(rng), g(rng)};
        double n = std::sqrt(std::norm(a) + std::norm(b));
        auto c = ModeCoefficients::hg(a / n, b / n);
        auto psi = single_photon(d, c);
        auto p = sphere_point(c);
        EXPECT_NEAR(expectation(ops.o1.matrix, psi).real(), p.o[0], 1e-10);
        EXPECT_NEAR(expectation(ops.o2.matrix, psi).real(), p.o[1], 1e-10);
        EXPECT_NEAR(expectation(ops.o3.matrix, psi).real(), p.o[2], 1e-10);
    }
}

TEST(fockoracle, operator_csv) {
    auto ops = orbital_operators_literal(3);
    std::ostringstream out;
    write_operator_csv(out, ops.o1);
    EXPECT_EQ(out.str().rfind("row,col,re,im\n", 0), 0u);
    EXPECT_NE(out.str().find("\n3,3,1,0\n"), std::string::npos);
}
