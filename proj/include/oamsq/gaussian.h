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

#ifndef OAMSQ_GAUSSIAN_H
#define OAMSQ_GAUSSIAN_H

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <span>
#include <vector>

#include "oamsq/modespace.h"

namespace oamsq {

/// Gaussian state over N bosonic modes.
///
/// Quadratures are X = a + a†, P = −i(a − a†), so the vacuum covariance is
/// the identity (QNL = 1). Phase-space vectors are ordered
/// (x1, p1, x2, p2, ...), and the covariance is ½⟨{ΔR_i, ΔR_j}⟩.
class GaussianState {
   public:
    /// Checks shapes and symmetry (1e-12). Physicality is not enforced here;
    /// see is_physical().
    GaussianState(std::vector<ModeLabel> labels, Eigen::VectorXd mean, Eigen::MatrixXd cov);

    int n_modes() const {
        return static_cast<int>(labels_.size());
    }
    const std::vector<ModeLabel> &labels() const {
        return labels_;
    }
    const Eigen::VectorXd &mean() const {
        return mean_;
    }
    const Eigen::MatrixXd &cov() const {
        return cov_;
    }

    /// Index of the mode carrying `label`, or -1.
    int find(const ModeLabel &label) const;
    /// As find(), but throws DomainError(bad_labels).
    int require(const ModeLabel &label) const;

    /// ⟨a_k⟩ = (⟨x_k⟩ + i⟨p_k⟩)/2.
    cdouble amplitude(int mode) const;

    /// Ascending symplectic eigenvalues, one per mode.
    std::vector<double> symplectic_eigenvalues() const;
    bool is_physical(double tol = 1e-9) const;

    /// Σ_k ⟨a_k†a_k⟩ = tr(cov − I)/4 + |mean|²/4.
    double mean_photon_number() const;

    GaussianState relabeled(std::vector<ModeLabel> labels) const;

    nlohmann::json to_json() const;
    static GaussianState from_json(const nlohmann::json &j);

   private:
    std::vector<ModeLabel> labels_;
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

/// Constructs a state and records it in the physicality audit. Use this
/// rather than the constructor for any state a model emits.
GaussianState make_state(std::vector<ModeLabel> labels, Eigen::VectorXd mean, Eigen::MatrixXd cov);

/// Block-diagonal [[0, 1], [-1, 0]] form.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Vacuum labelled HG10, HG01, ... by default (labels.size() must equal n).
GaussianState vacuum(int n_modes, std::vector<ModeLabel> labels = {});

/// Squeezes the quadrature x·cos(axis) + p·sin(axis) of `mode` by e^{-2r}.
GaussianState single_mode_squeeze(const GaussianState &s, int mode, double r, double axis);

/// Two-mode squeezer with V((X_i + X_j)/√2) = V((P_i − P_j)/√2) = e^{-2r}
/// on vacuum input.
GaussianState two_mode_squeeze(const GaussianState &s, int i, int j, double r);

/// Coherent displacement ⟨a⟩ += alpha.
GaussianState displace(const GaussianState &s, int mode, cdouble alpha);

/// Passive mode transformation b = U·a on the listed modes. U must be
/// unitary within 1e-10 (DomainError(not_unitary)).
GaussianState mode_unitary(const GaussianState &s, const Eigen::MatrixXcd &u, std::span<const int> modes);

/// Beam splitter with transmission `eta` against vacuum.
GaussianState loss(const GaussianState &s, int mode, double eta);

/// Variance of Σ_k w_k R_k for a phase-space weight vector w (length 2N).
double quadrature_variance(const GaussianState &s, const Eigen::VectorXd &weights);

/// Variance of X_θ = A e^{-iθ} + A† e^{iθ} with A = Σ conj(c_k) a_k. `c`
/// holds field coefficients over all modes of the state and must be
/// normalized within 1e-12.
double quad_variance(const GaussianState &s, std::span<const cdouble> c, double theta);

/// As above, locating the basis labels of `m` among the state's modes.
double quad_variance(const GaussianState &s, const ModeCoefficients &m, double theta);

/// Phase-space weights of X_θ for the mode `c` (used by quad_variance).
Eigen::VectorXd quadrature_weights(std::span<const cdouble> c, double theta);

/// Running check of every state returned by the operations above.
struct PhysicalityAudit {
    long long checked = 0;
    long long violations = 0;
    double min_symplectic_eigenvalue = 0;
};
PhysicalityAudit physicality_audit();

}  // namespace oamsq

#endif
