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

#ifndef OAMSQ_FOCKORACLE_H
#define OAMSQ_FOCKORACLE_H

#include <Eigen/Dense>
#include <array>
#include <iosfwd>

#include "oamsq/modespace.h"

// Brute-force two-mode Fock space used to validate the Gaussian layer.
// Basis |n1, n2⟩ with n1, n2 < d is stored at index n1·d + n2; mode 1 is
// HG10 and mode 2 is HG01 unless stated otherwise.
//
// Operators built at cutoff d are trusted on the total photon number
// N ≤ d − 2 subspace only.
namespace oamsq::fock {

inline constexpr int kMaxCutoff = 30;

struct TruncatedOperator {
    int cutoff = 0;
    Eigen::MatrixXcd matrix;
};

struct TruncatedStateVector {
    int cutoff = 0;
    Eigen::VectorXcd amplitudes;

    cdouble at(int n1, int n2) const {
        return amplitudes(n1 * cutoff + n2);
    }
};

struct OrbitalOperators {
    TruncatedOperator o1;
    TruncatedOperator o2;
    TruncatedOperator o3;
};

/// a_1 (mode = 0) or a_2 (mode = 1), truncated.
Eigen::MatrixXcd ladder(int d, int mode);

/// Fock-space unitary W with W†·a_k·W = Σ_j m(k, j)·a_j, for 2×2 unitary m.
/// Exact on every N ≤ d − 1 block.
Eigen::MatrixXcd passive_unitary(int d, const Eigen::Matrix2cd &m);

/// O1 = n_HG10 − n_HG01, and O2, O3 by conjugating O1 with the passive
/// unitaries of the 45° rotation and of the HG→LG basis change.
OrbitalOperators orbital_operators(int d);

/// Same operators built directly as A†A − B†B from the rotated ladder
/// operators of the 45°/135° and LG0^{±1} modes.
OrbitalOperators orbital_operators_literal(int d);

/// Frobenius norm of `op` restricted to the N ≤ d − 2 subspace.
double safe_norm(const Eigen::MatrixXcd &op, int d);

/// Weight of `psi` outside the N ≤ d − 2 subspace.
double unsafe_weight(const TruncatedStateVector &psi);

TruncatedStateVector fock_state(int d, int n1, int n2);

/// One photon in the HG-basis mode c10·HG10 + c01·HG01.
TruncatedStateVector single_photon(int d, const ModeCoefficients &c);

/// Σ (−tanh r)^n |n, n⟩ / cosh r, renormalized after truncation. Throws
/// DomainError(insufficient_cutoff) when the truncated norm is below 1 − 1e-8.
TruncatedStateVector two_mode_squeezed_vector(double r, int d);

/// Product of amplitude-squeezed vacua, V_X = e^{-2 r_k} in each mode.
TruncatedStateVector squeezed_vacuum_product(double r1, double r2, int d);

TruncatedStateVector apply(const Eigen::MatrixXcd &op, const TruncatedStateVector &psi);
cdouble expectation(const Eigen::MatrixXcd &op, const TruncatedStateVector &psi);

/// Weights over (x1, p1, x2, p2).
struct QuadratureSpec {
    std::array<double, 4> weights{};
};

/// ⟨Q²⟩ − ⟨Q⟩² from dense matrices, after projecting `psi` on the trusted
/// subspace. Throws insufficient_cutoff if more than 1e-8 of the weight is
/// discarded by that projection.
double oracle_variance(const TruncatedStateVector &psi, const QuadratureSpec &q);

/// V((X1 + X2)/√2) + V((P1 − P2)/√2).
double oracle_duan_sum(const TruncatedStateVector &psi);

/// Rows of "row,col,re,im" for the non-zero entries.
void write_operator_csv(std::ostream &out, const TruncatedOperator &op);

}  // namespace oamsq::fock

#endif
