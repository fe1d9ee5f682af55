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
#include <ostream>
#include <unsupported/Eigen/MatrixFunctions>

#include "oamsq/errors.h"
#include "oamsq/io.h"

namespace oamsq::fock {

namespace {

void check_cutoff(int d) {
    if (d < 3 || d > kMaxCutoff) {
        throw DomainError(
            Errc::insufficient_cutoff, "cutoff must be in [3, " + std::to_string(kMaxCutoff) + "], got " + std::to_string(d));
    }
}

Eigen::MatrixXcd number_difference(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return a.adjoint() * a - b.adjoint() * b;
}

Eigen::MatrixXcd quadrature(int d, int mode, bool momentum) {
    Eigen::MatrixXcd a = ladder(d, mode);
    if (momentum) {
        return cdouble(0, -1) * (a - a.adjoint());
    }
    return a + a.adjoint();
}

// Amplitudes of an amplitude-squeezed vacuum, checked against truncation.
Eigen::VectorXcd squeezed_vacuum_1d(double r, int d) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    double t = std::tanh(r);
    double c = 1 / std::sqrt(std::cosh(r));
    for (int k = 0; 2 * k < d; k++) {
        if (k > 0) {
            c *= -t * std::sqrt((2.0 * k) * (2.0 * k - 1)) / (2.0 * k);
        }
        v(2 * k) = c;
    }
    double n = v.squaredNorm();
    if (!(n >= 1 - 1e-8)) {
        throw DomainError(Errc::insufficient_cutoff, "cutoff too small for squeezing r=" + format_number(r));
    }
    return v / std::sqrt(n);
}

}  // namespace

Eigen::MatrixXcd ladder(int d, int mode) {
    check_cutoff(d);
    if (mode != 0 && mode != 1) {
        throw DomainError(Errc::bad_index, "two-mode space has modes 0 and 1");
    }
    Eigen::MatrixXcd single = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 1; n < d; n++) {
        single(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int n1 = 0; n1 < d; n1++) {
        for (int n2 = 0; n2 < d; n2++) {
            int col = n1 * d + n2;
            if (mode == 0 && n1 > 0) {
                out((n1 - 1) * d + n2, col) = single(n1 - 1, n1);
            } else if (mode == 1 && n2 > 0) {
                out(n1 * d + n2 - 1, col) = single(n2 - 1, n2);
            }
        }
    }
    return out;
}

Eigen::MatrixXcd passive_unitary(int d, const Eigen::Matrix2cd &m) {
    Eigen::Matrix2cd t = m.log();
    std::array<Eigen::MatrixXcd, 2> a{ladder(d, 0), ladder(d, 1)};
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int j = 0; j < 2; j++) {
        for (int k = 0; k < 2; k++) {
            h += t(j, k) * a[j].adjoint() * a[k];
        }
    }
    return h.exp();
}

OrbitalOperators orbital_operators(int d) {
    check_cutoff(d);
    Eigen::MatrixXcd o1 = number_difference(ladder(d, 0), ladder(d, 1));
    const double s = 1 / std::sqrt(2.0);
    Eigen::Matrix2cd rot45;
    rot45 << s, s, -s, s;
    Eigen::MatrixXcd w45 = passive_unitary(d, rot45);
    Eigen::MatrixXcd wlg = passive_unitary(d, lg_hg_unitary().adjoint());
    return {
        {d, o1},
        {d, w45.adjoint() * o1 * w45},
        {d, wlg.adjoint() * o1 * wlg},
    };
}

OrbitalOperators orbital_operators_literal(int d) {
    check_cutoff(d);
    Eigen::MatrixXcd a10 = ladder(d, 0);
    Eigen::MatrixXcd a01 = ladder(d, 1);
    const double s = 1 / std::sqrt(2.0);
    const cdouble i{0, 1};
    Eigen::MatrixXcd a45 = s * (a10 + a01);
    Eigen::MatrixXcd a135 = s * (-a10 + a01);
    // Mode operator of a field mode with coefficients c is Σ conj(c_k) a_k.
    Eigen::MatrixXcd a_plus = s * (a10 - i * a01);
    Eigen::MatrixXcd a_minus = s * (a10 + i * a01);
    return {
        {d, number_difference(a10, a01)},
        {d, number_difference(a45, a135)},
        {d, number_difference(a_plus, a_minus)},
    };
}

double safe_norm(const Eigen::MatrixXcd &op, int d) {
    double total = 0;
    for (int r = 0; r < d * d; r++) {
        if (r / d + r % d > d - 2) {
            continue;
        }
        for (int c = 0; c < d * d; c++) {
            if (c / d + c % d > d - 2) {
                continue;
            }
            total += std::norm(op(r, c));
        }
    }
    return std::sqrt(total);
}

double unsafe_weight(const TruncatedStateVector &psi) {
    const int d = psi.cutoff;
    double w = 0;
    for (int k = 0; k < d * d; k++) {
        if (k / d + k % d > d - 2) {
            w += std::norm(psi.amplitudes(k));
        }
    }
    return w;
}

TruncatedStateVector fock_state(int d, int n1, int n2) {
    check_cutoff(d);
    if (n1 < 0 || n2 < 0 || n1 >= d || n2 >= d) {
        throw DomainError(Errc::insufficient_cutoff, "photon numbers outside the truncated space");
    }
    TruncatedStateVector psi{d, Eigen::VectorXcd::Zero(d * d)};
    psi.amplitudes(n1 * d + n2) = 1;
    return psi;
}

TruncatedStateVector single_photon(int d, const ModeCoefficients &c) {
    check_cutoff(d);
    auto h = c.to_hg();
    TruncatedStateVector psi{d, Eigen::VectorXcd::Zero(d * d)};
    psi.amplitudes(1 * d + 0) = h[0];
    psi.amplitudes(0 * d + 1) = h[1];
    return psi;
}

TruncatedStateVector two_mode_squeezed_vector(double r, int d) {
    check_cutoff(d);
    if (!(r >= 0)) {
        throw DomainError(Errc::out_of_range, "squeezing parameter must be >= 0");
    }
    double t = std::tanh(r);
    TruncatedStateVector psi{d, Eigen::VectorXcd::Zero(d * d)};
    double c = 1 / std::cosh(r);
    for (int n = 0; n < d; n++) {
        psi.amplitudes(n * d + n) = c;
        c *= -t;
    }
    double norm = psi.amplitudes.squaredNorm();
    if (!(norm >= 1 - 1e-8)) {
        throw DomainError(
            Errc::insufficient_cutoff,
            "cutoff " + std::to_string(d) + " keeps only " + format_number(norm) + " of the norm at r=" + format_number(r));
    }
    psi.amplitudes /= std::sqrt(norm);
    return psi;
}

TruncatedStateVector squeezed_vacuum_product(double r1, double r2, int d) {
    check_cutoff(d);
    if (!(r1 >= 0 && r2 >= 0)) {
        throw DomainError(Errc::out_of_range, "squeezing parameters must be >= 0");
    }
    Eigen::VectorXcd u = squeezed_vacuum_1d(r1, d);
    Eigen::VectorXcd v = squeezed_vacuum_1d(r2, d);
    TruncatedStateVector psi{d, Eigen::VectorXcd::Zero(d * d)};
    for (int n1 = 0; n1 < d; n1++) {
        for (int n2 = 0; n2 < d; n2++) {
            psi.amplitudes(n1 * d + n2) = u(n1) * v(n2);
        }
    }
    return psi;
}

TruncatedStateVector apply(const Eigen::MatrixXcd &op, const TruncatedStateVector &psi) {
    return {psi.cutoff, op * psi.amplitudes};
}

cdouble expectation(const Eigen::MatrixXcd &op, const TruncatedStateVector &psi) {
    return psi.amplitudes.dot(op * psi.amplitudes);
}

double oracle_variance(const TruncatedStateVector &psi, const QuadratureSpec &q) {
    const int d = psi.cutoff;
    check_cutoff(d);
    double dropped = unsafe_weight(psi);
    if (!(dropped <= 1e-8)) {
        throw DomainError(
            Errc::insufficient_cutoff, "state has weight " + format_number(dropped) + " beyond the trusted subspace");
    }
    Eigen::VectorXcd v = psi.amplitudes;
    for (int k = 0; k < d * d; k++) {
        if (k / d + k % d > d - 2) {
            v(k) = 0;
        }
    }
    v /= v.norm();

    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int k = 0; k < 4; k++) {
        if (q.weights[k] != 0) {
            op += q.weights[k] * quadrature(d, k / 2, k % 2 == 1);
        }
    }
    Eigen::VectorXcd qv = op * v;
    double first = v.dot(qv).real();
    double second = qv.squaredNorm();
    return second - first * first;
}

double oracle_duan_sum(const TruncatedStateVector &psi) {
    const double s = 1 / std::sqrt(2.0);
    return oracle_variance(psi, {{s, 0, s, 0}}) + oracle_variance(psi, {{0, s, 0, -s}});
}

void write_operator_csv(std::ostream &out, const TruncatedOperator &op) {
    out << "row,col,re,im\n";
    for (Eigen::Index r = 0; r < op.matrix.rows(); r++) {
        for (Eigen::Index c = 0; c < op.matrix.cols(); c++) {
            cdouble v = op.matrix(r, c);
            if (v != cdouble(0)) {
                out << r << "," << c << "," << format_number(v.real()) << "," << format_number(v.imag()) << "\n";
            }
        }
    }
}

}  // namespace oamsq::fock
