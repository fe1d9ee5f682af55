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

#include "oamsq/gaussian.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "oamsq/errors.h"
#include "oamsq/io.h"

namespace oamsq {

namespace {

std::atomic<long long> g_checked{0};
std::atomic<long long> g_violations{0};
std::atomic<double> g_min_nu{std::numeric_limits<double>::infinity()};

GaussianState audited(GaussianState s) {
    auto nus = s.symplectic_eigenvalues();
    double lowest = nus.empty() ? std::numeric_limits<double>::infinity() : nus.front();
    g_checked.fetch_add(1, std::memory_order_relaxed);
    if (!(lowest >= 1 - 1e-9)) {
        g_violations.fetch_add(1, std::memory_order_relaxed);
    }
    double seen = g_min_nu.load(std::memory_order_relaxed);
    while (lowest < seen && !g_min_nu.compare_exchange_weak(seen, lowest, std::memory_order_relaxed)) {
    }
    return s;
}

void check_mode(const GaussianState &s, int mode) {
    if (mode < 0 || mode >= s.n_modes()) {
        throw DomainError(
            Errc::bad_index,
            "mode " + std::to_string(mode) + " not in a " + std::to_string(s.n_modes()) + "-mode state");
    }
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd &m) {
    return 0.5 * (m + m.transpose());
}

GaussianState transformed(const GaussianState &s, const Eigen::MatrixXd &S) {
    return audited(GaussianState(s.labels(), S * s.mean(), symmetrized(S * s.cov() * S.transpose())));
}

}  // namespace

GaussianState::GaussianState(std::vector<ModeLabel> labels, Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : labels_(std::move(labels)), mean_(std::move(mean)), cov_(std::move(cov)) {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(labels_.size());
    if (labels_.empty()) {
        throw DomainError(Errc::bad_index, "a state needs at least one mode");
    }
    if (mean_.size() != dim || cov_.rows() != dim || cov_.cols() != dim) {
        throw DomainError(Errc::bad_index, "mean/cov dimensions do not match 2 x n_modes");
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
        throw DomainError(Errc::out_of_range, "non-finite moments");
    }
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw DomainError(Errc::out_of_range, "covariance matrix is not symmetric");
    }
    for (size_t a = 0; a < labels_.size(); a++) {
        if (std::find(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(a), labels_[a]) !=
            labels_.begin() + static_cast<std::ptrdiff_t>(a)) {
            throw DomainError(Errc::bad_labels, "duplicate mode label " + labels_[a].str());
        }
    }
}

int GaussianState::find(const ModeLabel &label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

int GaussianState::require(const ModeLabel &label) const {
    int k = find(label);
    if (k < 0) {
        throw DomainError(Errc::bad_labels, "state has no mode labelled " + label.str());
    }
    return k;
}

cdouble GaussianState::amplitude(int mode) const {
    check_mode(*this, mode);
    return {mean_(2 * mode) / 2, mean_(2 * mode + 1) / 2};
}

std::vector<double> GaussianState::symplectic_eigenvalues() const {
    // Ω·σ has eigenvalues ±iν_k.
    Eigen::EigenSolver<Eigen::MatrixXd> solver(symplectic_form(n_modes()) * cov_, false);
    std::vector<double> mags;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); k++) {
        mags.push_back(std::abs(solver.eigenvalues()(k)));
    }
    std::sort(mags.begin(), mags.end());
    std::vector<double> out;
    for (size_t k = 0; k < mags.size(); k += 2) {
        out.push_back(0.5 * (mags[k] + mags[k + 1]));
    }
    return out;
}

bool GaussianState::is_physical(double tol) const {
    auto nus = symplectic_eigenvalues();
    return nus.front() >= 1 - tol;
}

double GaussianState::mean_photon_number() const {
    return (cov_.trace() - static_cast<double>(cov_.rows())) / 4 + mean_.squaredNorm() / 4;
}

GaussianState GaussianState::relabeled(std::vector<ModeLabel> labels) const {
    if (labels.size() != labels_.size()) {
        throw DomainError(Errc::bad_labels, "relabel needs one label per mode");
    }
    return GaussianState(std::move(labels), mean_, cov_);
}

nlohmann::json GaussianState::to_json() const {
    nlohmann::json j;
    j["labels"] = nlohmann::json::array();
    for (const auto &l : labels_) {
        j["labels"].push_back(l.str());
    }
    j["ordering"] = "x1,p1,x2,p2,...";
    j["normalization"] = "vacuum=1";
    j["mean"] = std::vector<double>(mean_.data(), mean_.data() + mean_.size());
    std::vector<double> flat;
    for (Eigen::Index r = 0; r < cov_.rows(); r++) {
        for (Eigen::Index c = 0; c < cov_.cols(); c++) {
            flat.push_back(cov_(r, c));
        }
    }
    j["cov"] = flat;
    return j;
}

GaussianState GaussianState::from_json(const nlohmann::json &j) {
    if (j.value("normalization", "") != "vacuum=1") {
        throw DomainError(Errc::out_of_range, "state JSON must declare normalization \"vacuum=1\"");
    }
    std::vector<ModeLabel> labels;
    for (const auto &l : j.at("labels")) {
        labels.push_back(ModeLabel::parse(l.get<std::string>()));
    }
    auto mean = j.at("mean").get<std::vector<double>>();
    auto flat = j.at("cov").get<std::vector<double>>();
    const auto dim = static_cast<Eigen::Index>(mean.size());
    if (static_cast<Eigen::Index>(flat.size()) != dim * dim) {
        throw DomainError(Errc::bad_index, "cov must hold (2N)^2 entries");
    }
    Eigen::MatrixXd cov(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            cov(r, c) = flat[static_cast<size_t>(r * dim + c)];
        }
    }
    return GaussianState(std::move(labels), Eigen::Map<Eigen::VectorXd>(mean.data(), dim), cov);
}

GaussianState make_state(std::vector<ModeLabel> labels, Eigen::VectorXd mean, Eigen::MatrixXd cov) {
    return audited(GaussianState(std::move(labels), std::move(mean), std::move(cov)));
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; k++) {
        omega(2 * k, 2 * k + 1) = 1;
        omega(2 * k + 1, 2 * k) = -1;
    }
    return omega;
}

GaussianState vacuum(int n_modes, std::vector<ModeLabel> labels) {
    if (n_modes < 1) {
        throw DomainError(Errc::bad_index, "vacuum needs n >= 1");
    }
    if (labels.empty()) {
        for (int k = 0; k < n_modes; k++) {
            labels.push_back(k == 1 ? kHG01 : ModeLabel::hg(k == 0 ? 1 : k, 0));
        }
    }
    if (static_cast<int>(labels.size()) != n_modes) {
        throw DomainError(Errc::bad_labels, "vacuum needs one label per mode");
    }
    return audited(GaussianState(
        std::move(labels), Eigen::VectorXd::Zero(2 * n_modes), Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes)));
}

GaussianState single_mode_squeeze(const GaussianState &s, int mode, double r, double axis) {
    check_mode(s, mode);
    if (!(r >= 0)) {
        throw DomainError(Errc::out_of_range, "squeezing parameter must be >= 0");
    }
    Eigen::Matrix2d rot;
    rot << std::cos(axis), -std::sin(axis), std::sin(axis), std::cos(axis);
    Eigen::Matrix2d block = rot * Eigen::Vector2d(std::exp(-r), std::exp(r)).asDiagonal() * rot.transpose();
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * s.n_modes(), 2 * s.n_modes());
    S.block<2, 2>(2 * mode, 2 * mode) = block;
    return transformed(s, S);
}

GaussianState two_mode_squeeze(const GaussianState &s, int i, int j, double r) {
    check_mode(s, i);
    check_mode(s, j);
    if (i == j) {
        throw DomainError(Errc::bad_index, "two-mode squeezing needs distinct modes");
    }
    if (!(r >= 0)) {
        throw DomainError(Errc::out_of_range, "squeezing parameter must be >= 0");
    }
    double ch = std::cosh(r);
    double sh = std::sinh(r);
    Eigen::Matrix2d z = Eigen::Vector2d(1, -1).asDiagonal();
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * s.n_modes(), 2 * s.n_modes());
    S.block<2, 2>(2 * i, 2 * i) = ch * Eigen::Matrix2d::Identity();
    S.block<2, 2>(2 * j, 2 * j) = ch * Eigen::Matrix2d::Identity();
    S.block<2, 2>(2 * i, 2 * j) = -sh * z;
    S.block<2, 2>(2 * j, 2 * i) = -sh * z;
    return transformed(s, S);
}

GaussianState displace(const GaussianState &s, int mode, cdouble alpha) {
    check_mode(s, mode);
    Eigen::VectorXd mean = s.mean();
    mean(2 * mode) += 2 * alpha.real();
    mean(2 * mode + 1) += 2 * alpha.imag();
    return audited(GaussianState(s.labels(), mean, s.cov()));
}

GaussianState mode_unitary(const GaussianState &s, const Eigen::MatrixXcd &u, std::span<const int> modes) {
    const auto k = static_cast<Eigen::Index>(modes.size());
    if (u.rows() != k || u.cols() != k) {
        throw DomainError(Errc::bad_index, "unitary size does not match the mode list");
    }
    for (size_t a = 0; a < modes.size(); a++) {
        check_mode(s, modes[a]);
        for (size_t b = 0; b < a; b++) {
            if (modes[a] == modes[b]) {
                throw DomainError(Errc::bad_index, "repeated mode in mode list");
            }
        }
    }
    double defect = (u * u.adjoint() - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
    if (!(defect <= 1e-10)) {
        throw DomainError(Errc::not_unitary, "U·U† deviates from I by " + format_number(defect));
    }
    // b = (A + iB)(x + ip)/2  =>  x' = A x − B p,  p' = B x + A p.
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * s.n_modes(), 2 * s.n_modes());
    for (Eigen::Index a = 0; a < k; a++) {
        for (Eigen::Index b = 0; b < k; b++) {
            double re = u(a, b).real();
            double im = u(a, b).imag();
            Eigen::Matrix2d block;
            block << re, -im, im, re;
            S.block<2, 2>(2 * modes[a], 2 * modes[b]) = block;
        }
    }
    return transformed(s, S);
}

GaussianState loss(const GaussianState &s, int mode, double eta) {
    check_mode(s, mode);
    if (!(eta >= 0 && eta <= 1)) {
        throw DomainError(Errc::out_of_range, "efficiency " + format_number(eta) + " outside [0, 1]");
    }
    Eigen::MatrixXd K = Eigen::MatrixXd::Identity(2 * s.n_modes(), 2 * s.n_modes());
    K(2 * mode, 2 * mode) = std::sqrt(eta);
    K(2 * mode + 1, 2 * mode + 1) = std::sqrt(eta);
    Eigen::MatrixXd cov = K * s.cov() * K.transpose();
    cov.block<2, 2>(2 * mode, 2 * mode) += (1 - eta) * Eigen::Matrix2d::Identity();
    return audited(GaussianState(s.labels(), K * s.mean(), symmetrized(cov)));
}

double quadrature_variance(const GaussianState &s, const Eigen::VectorXd &weights) {
    if (weights.size() != s.cov().rows()) {
        throw DomainError(Errc::bad_index, "weight vector length must be 2 x n_modes");
    }
    return weights.dot(s.cov() * weights);
}

Eigen::VectorXd quadrature_weights(std::span<const cdouble> c, double theta) {
    Eigen::VectorXd w(2 * static_cast<Eigen::Index>(c.size()));
    const cdouble phase = std::polar(1.0, -theta);
    for (size_t k = 0; k < c.size(); k++) {
        cdouble g = std::conj(c[k]) * phase;
        w(2 * k) = g.real();
        w(2 * k + 1) = -g.imag();
    }
    return w;
}

double quad_variance(const GaussianState &s, std::span<const cdouble> c, double theta) {
    if (static_cast<int>(c.size()) != s.n_modes()) {
        throw DomainError(Errc::bad_index, "mode coefficients must cover every mode of the state");
    }
    double n = 0;
    for (const auto &v : c) {
        n += std::norm(v);
    }
    if (!(std::abs(n - 1) <= 1e-12)) {
        throw DomainError(Errc::not_normalized, "projected mode has norm^2 " + format_number(n));
    }
    return quadrature_variance(s, quadrature_weights(c, theta));
}

double quad_variance(const GaussianState &s, const ModeCoefficients &m, double theta) {
    std::vector<cdouble> c(static_cast<size_t>(s.n_modes()), 0.0);
    for (size_t k = 0; k < 2; k++) {
        c[static_cast<size_t>(s.require(m.basis()[k]))] += m[k];
    }
    return quad_variance(s, c, theta);
}

PhysicalityAudit physicality_audit() {
    PhysicalityAudit a;
    a.checked = g_checked.load();
    a.violations = g_violations.load();
    a.min_symplectic_eigenvalue = g_min_nu.load();
    return a;
}

}  // namespace oamsq
