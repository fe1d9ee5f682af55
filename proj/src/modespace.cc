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

#include "oamsq/modespace.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <regex>

#include "oamsq/errors.h"
#include "oamsq/io.h"

namespace oamsq {

namespace {

constexpr double kPi = std::numbers::pi;

double hermite(int n, double x) {
    double h0 = 1;
    if (n == 0) {
        return h0;
    }
    double h1 = 2 * x;
    for (int k = 1; k < n; k++) {
        double h2 = 2 * x * h1 - 2 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

double laguerre(int p, int alpha, double x) {
    double l0 = 1;
    if (p == 0) {
        return l0;
    }
    double l1 = 1 + alpha - x;
    for (int k = 1; k < p; k++) {
        double l2 = ((2 * k + 1 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

double factorial(int n) {
    return std::tgamma(n + 1.0);
}

// Normalized 1-D Hermite-Gaussian with w0 = 1: ∫ u_m² dx = 1.
double hg_1d(int m, double x) {
    double norm = std::pow(2 / kPi, 0.25) / std::sqrt(std::pow(2.0, m) * factorial(m));
    return norm * hermite(m, std::sqrt(2.0) * x) * std::exp(-x * x);
}

void check_same_grid(const GridSpec &a, const GridSpec &b) {
    if (!(a == b)) {
        throw DomainError(Errc::incompatible_grids, "fields sampled on different grids");
    }
}

}  // namespace

bool ModeLabel::is_first_order() const {
    if (family == ModeFamily::HG) {
        return first >= 0 && second >= 0 && first + second == 1;
    }
    return first == 0 && std::abs(second) == 1;
}

std::string ModeLabel::str() const {
    std::string out;
    if (family == ModeFamily::HG) {
        out = "HG";
        if (first < 10 && second < 10) {
            out += std::to_string(first) + std::to_string(second);
        } else {
            out += std::to_string(first) + "," + std::to_string(second);
        }
        if (orientation_deg != 0) {
            out += "@" + format_number(orientation_deg);
        }
    } else {
        out = "LG" + std::to_string(first) + (second >= 0 ? "+" : "-") + std::to_string(std::abs(second));
    }
    return out;
}

ModeLabel ModeLabel::parse(const std::string &text) {
    static const std::regex hg_short(R"(HG(\d)(\d)(?:@([-+]?[0-9.eE+-]+))?)");
    static const std::regex hg_long(R"(HG(\d+),(\d+)(?:@([-+]?[0-9.eE+-]+))?)");
    static const std::regex lg(R"(LG(\d+)([+-]\d+))");
    std::smatch m;
    if (std::regex_match(text, m, hg_short) || std::regex_match(text, m, hg_long)) {
        double orientation = m[3].matched ? std::stod(m[3].str()) : 0.0;
        return hg(std::stoi(m[1].str()), std::stoi(m[2].str()), orientation);
    }
    if (std::regex_match(text, m, lg)) {
        return ModeLabel::lg(std::stoi(m[1].str()), std::stoi(m[2].str()));
    }
    throw DomainError(Errc::bad_labels, "cannot parse mode label '" + text + "'");
}

ModeCoefficients::ModeCoefficients(ModeBasis basis, cdouble c0, cdouble c1) : basis_(basis), c_{c0, c1} {
    if (!(basis_ == kHGBasis) && !(basis_ == kLGBasis)) {
        throw DomainError(Errc::bad_labels, "coefficients must be in the (HG10, HG01) or (LG0+1, LG0-1) basis");
    }
    double n = std::norm(c0) + std::norm(c1);
    if (!(std::abs(n - 1) <= 1e-12)) {
        throw DomainError(Errc::not_normalized, "|c0|^2 + |c1|^2 = " + format_number(n));
    }
}

Eigen::Matrix2cd lg_hg_unitary() {
    const double s = 1 / std::sqrt(2.0);
    const cdouble i{0, 1};
    Eigen::Matrix2cd u;
    u << s, s, i * s, -i * s;
    return u;
}

ModeCoefficients ModeCoefficients::to_hg() const {
    if (in_hg_basis()) {
        return *this;
    }
    Eigen::Vector2cd v(c_[0], c_[1]);
    Eigen::Vector2cd h = lg_hg_unitary() * v;
    return hg(h(0), h(1));
}

ModeCoefficients ModeCoefficients::to_lg() const {
    if (!in_hg_basis()) {
        return *this;
    }
    Eigen::Vector2cd v(c_[0], c_[1]);
    Eigen::Vector2cd l = lg_hg_unitary().adjoint() * v;
    return lg(l(0), l(1));
}

SpherePoint sphere_point(const ModeCoefficients &c) {
    auto h = c.to_hg();
    cdouble cross = std::conj(h[0]) * h[1];
    SpherePoint p;
    p.o = {std::norm(h[0]) - std::norm(h[1]), 2 * cross.real(), 2 * cross.imag()};
    p.polar = std::acos(std::clamp(p.o[2], -1.0, 1.0));
    p.azimuth = (std::hypot(p.o[0], p.o[1]) > 1e-15) ? std::atan2(p.o[1], p.o[0]) : 0.0;
    return p;
}

ModeCoefficients coefficients_at(double polar, double azimuth) {
    return ModeCoefficients::lg(std::cos(polar / 2), std::polar(std::sin(polar / 2), azimuth));
}

ModeCoefficients ring_mode(double psi) {
    const double s = 1 / std::sqrt(2.0);
    return ModeCoefficients::hg(s, std::polar(s, psi));
}

ModeCoefficients rotate(const ModeCoefficients &c, double angle_deg) {
    double a = angle_deg * kPi / 180;
    auto h = c.to_hg();
    double ca = std::cos(a);
    double sa = std::sin(a);
    auto out = ModeCoefficients::hg(ca * h[0] - sa * h[1], sa * h[0] + ca * h[1]);
    return c.in_hg_basis() ? out : out.to_lg();
}

ModeCoefficients rotate_45(const ModeCoefficients &c) {
    return rotate(c, 45);
}

void GridSpec::validate() const {
    if (nx <= 0 || ny <= 0 || !(extent_w0 > 0) || !std::isfinite(extent_w0)) {
        throw DomainError(
            Errc::invalid_grid,
            "grid needs positive sample counts and extent (got nx=" + std::to_string(nx) +
                ", ny=" + std::to_string(ny) + ", extent_w0=" + format_number(extent_w0) + ")");
    }
}

double SampledField::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes) {
        total += std::norm(a);
    }
    return total * grid.cell_area();
}

SampledField hg_mode(int m, int n, double orientation_deg, const GridSpec &grid) {
    grid.validate();
    if (m < 0 || n < 0) {
        throw DomainError(Errc::bad_index, "HG indices must be non-negative");
    }
    double a = orientation_deg * kPi / 180;
    double ca = std::cos(a);
    double sa = std::sin(a);
    SampledField f{grid, std::vector<cdouble>(grid.size())};
    for (int j = 0; j < grid.ny; j++) {
        double y = grid.y(j);
        for (int i = 0; i < grid.nx; i++) {
            double x = grid.x(i);
            double xr = x * ca + y * sa;
            double yr = -x * sa + y * ca;
            f.amplitudes[static_cast<size_t>(j) * grid.nx + i] = hg_1d(m, xr) * hg_1d(n, yr);
        }
    }
    return f;
}

SampledField lg_mode(int p, int l, const GridSpec &grid) {
    grid.validate();
    if (p < 0) {
        throw DomainError(Errc::bad_index, "LG radial index must be non-negative");
    }
    int al = std::abs(l);
    double norm = std::sqrt(2 * factorial(p) / (kPi * factorial(p + al)));
    double sign = l >= 0 ? 1.0 : -1.0;
    SampledField f{grid, std::vector<cdouble>(grid.size())};
    for (int j = 0; j < grid.ny; j++) {
        double y = grid.y(j);
        for (int i = 0; i < grid.nx; i++) {
            double x = grid.x(i);
            double r2 = x * x + y * y;
            // (√2 r)^|l| e^{ilθ} written without atan2 so the origin is exact.
            cdouble helix = std::pow(std::sqrt(2.0) * cdouble(x, sign * y), al);
            f.amplitudes[static_cast<size_t>(j) * grid.nx + i] =
                norm * helix * laguerre(p, al, 2 * r2) * std::exp(-r2);
        }
    }
    return f;
}

SampledField mode_field(const ModeLabel &label, const GridSpec &grid) {
    if (label.family == ModeFamily::HG) {
        return hg_mode(label.first, label.second, label.orientation_deg, grid);
    }
    return lg_mode(label.first, label.second, grid);
}

SampledField superpose(const ModeCoefficients &c, const GridSpec &grid) {
    auto u0 = mode_field(c.basis()[0], grid);
    auto u1 = mode_field(c.basis()[1], grid);
    SampledField f{grid, std::vector<cdouble>(grid.size())};
    for (size_t k = 0; k < f.amplitudes.size(); k++) {
        f.amplitudes[k] = c[0] * u0.amplitudes[k] + c[1] * u1.amplitudes[k];
    }
    return f;
}

cdouble overlap(const SampledField &a, const SampledField &b) {
    check_same_grid(a.grid, b.grid);
    cdouble total = 0;
    for (size_t k = 0; k < a.amplitudes.size(); k++) {
        total += std::conj(a.amplitudes[k]) * b.amplitudes[k];
    }
    return total * a.grid.cell_area();
}

SampledField phase_plate(const SampledField &f) {
    SampledField out = f;
    for (int j = 0; j < f.grid.ny; j++) {
        for (int i = 0; i < f.grid.nx; i++) {
            if (f.grid.x(i) < 0) {
                auto &a = out.amplitudes[static_cast<size_t>(j) * f.grid.nx + i];
                a = -a;
            }
        }
    }
    return out;
}

ModeCoefficients project_first_order(const SampledField &f, double *captured) {
    cdouble c10 = overlap(hg_mode(1, 0, 0, f.grid), f);
    cdouble c01 = overlap(hg_mode(0, 1, 0, f.grid), f);
    double in_plane = std::norm(c10) + std::norm(c01);
    if (!(in_plane > 0)) {
        throw DomainError(Errc::not_normalized, "field has no first-order content");
    }
    if (captured != nullptr) {
        *captured = in_plane / f.norm_squared();
    }
    double s = std::sqrt(in_plane);
    c10 /= s;
    c01 /= s;
    // Renormalizing in floating point can leave |c|² a few ulps off 1.
    double n = std::sqrt(std::norm(c10) + std::norm(c01));
    return ModeCoefficients::hg(c10 / n, c01 / n);
}

double IntensityImage::total_power() const {
    double total = 0;
    for (double v : intensity) {
        total += v;
    }
    return total * grid.cell_area();
}

IntensityImage interference_pattern(const ModeCoefficients &c, const GridSpec &grid) {
    auto field = superpose(c, grid);
    IntensityImage image{grid, std::vector<double>(grid.size())};
    for (size_t k = 0; k < image.intensity.size(); k++) {
        image.intensity[k] = std::norm(field.amplitudes[k]);
    }
    return image;
}

void write_pgm(std::ostream &out, const IntensityImage &image) {
    double peak = 0;
    for (double v : image.intensity) {
        peak = std::max(peak, v);
    }
    out << "P2\n" << image.grid.nx << " " << image.grid.ny << "\n255\n";
    for (int j = image.grid.ny - 1; j >= 0; j--) {
        for (int i = 0; i < image.grid.nx; i++) {
            int level = peak > 0 ? static_cast<int>(std::lround(255 * image.at(i, j) / peak)) : 0;
            out << level << (i + 1 < image.grid.nx ? " " : "\n");
        }
    }
}

void write_csv(std::ostream &out, const IntensityImage &image) {
    out << "x,y,intensity\n";
    for (int j = 0; j < image.grid.ny; j++) {
        for (int i = 0; i < image.grid.nx; i++) {
            out << format_number(image.grid.x(i)) << "," << format_number(image.grid.y(j)) << ","
                << format_number(image.at(i, j)) << "\n";
        }
    }
}

}  // namespace oamsq
