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

#ifndef OAMSQ_MODESPACE_H
#define OAMSQ_MODESPACE_H

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace oamsq {

using cdouble = std::complex<double>;

enum class ModeFamily { HG, LG };

/// Transverse mode label. For HG modes (first, second) are (m, n) and
/// `orientation_deg` rotates the mode in the transverse plane. For LG modes
/// (first, second) are (p, l).
struct ModeLabel {
    ModeFamily family = ModeFamily::HG;
    int first = 0;
    int second = 0;
    double orientation_deg = 0;

    static constexpr ModeLabel hg(int m, int n, double orientation_deg = 0) {
        return {ModeFamily::HG, m, n, orientation_deg};
    }
    static constexpr ModeLabel lg(int p, int l) {
        return {ModeFamily::LG, p, l, 0};
    }

    /// m+n = 1 for HG, p = 0 and |l| = 1 for LG.
    bool is_first_order() const;
    /// "HG10", "HG10@45", "LG0+1", "LG0-1".
    std::string str() const;
    static ModeLabel parse(const std::string &text);

    bool operator==(const ModeLabel &other) const = default;
};

inline constexpr ModeLabel kHG10 = ModeLabel::hg(1, 0);
inline constexpr ModeLabel kHG01 = ModeLabel::hg(0, 1);
inline constexpr ModeLabel kHG45 = ModeLabel::hg(1, 0, 45);
inline constexpr ModeLabel kHG135 = ModeLabel::hg(1, 0, 135);
inline constexpr ModeLabel kLGplus = ModeLabel::lg(0, +1);
inline constexpr ModeLabel kLGminus = ModeLabel::lg(0, -1);

using ModeBasis = std::array<ModeLabel, 2>;
inline constexpr ModeBasis kHGBasis{kHG10, kHG01};
inline constexpr ModeBasis kLGBasis{kLGplus, kLGminus};

/// Normalized superposition c[0]·basis[0] + c[1]·basis[1] of field modes.
/// Only the two canonical first-order bases (HG10, HG01) and (LG0+1, LG0-1)
/// are accepted.
class ModeCoefficients {
   public:
    /// Throws DomainError(not_normalized) if |c0|²+|c1|² deviates from 1 by
    /// more than 1e-12, or bad_labels for a non-canonical basis.
    ModeCoefficients(ModeBasis basis, cdouble c0, cdouble c1);

    static ModeCoefficients hg(cdouble c10, cdouble c01) {
        return {kHGBasis, c10, c01};
    }
    static ModeCoefficients lg(cdouble c_plus, cdouble c_minus) {
        return {kLGBasis, c_plus, c_minus};
    }

    const ModeBasis &basis() const {
        return basis_;
    }
    const std::array<cdouble, 2> &c() const {
        return c_;
    }
    cdouble operator[](size_t k) const {
        return c_[k];
    }
    bool in_hg_basis() const {
        return basis_ == kHGBasis;
    }

    ModeCoefficients to_hg() const;
    ModeCoefficients to_lg() const;

   private:
    ModeBasis basis_;
    std::array<cdouble, 2> c_;
};

/// Columns are the LG0^{+1} and LG0^{-1} field modes expressed in the
/// (HG10, HG01) basis: LG0^{±1} = (HG10 ± i·HG01)/√2.
///
/// This fixes the sign convention used across the project. The annihilation
/// operator of a mode with field coefficients c is Σ conj(c_k)·a_k, so the
/// LG mode operators are U†·a_HG, giving
///   X_HG10 = (X_LG-1 + X_LG+1)/√2,   X_HG01 = (P_LG-1 − P_LG+1)/√2.
Eigen::Matrix2cd lg_hg_unitary();

/// Point on the orbital Poincaré sphere. `polar` is the angle from the O3
/// (LG0^{+1}) pole and `azimuth` is measured from the O1 axis towards O2.
struct SpherePoint {
    std::array<double, 3> o{};
    double polar = 0;
    double azimuth = 0;
};

/// Expectation of (O1, O2, O3) for a single excitation in the mode `c`.
/// Invariant under global phase of `c`.
SpherePoint sphere_point(const ModeCoefficients &c);

/// cos(polar/2)·LG0^{+1} + e^{i·azimuth}·sin(polar/2)·LG0^{-1}.
ModeCoefficients coefficients_at(double polar, double azimuth);

/// (HG10 + e^{iψ}·HG01)/√2. ψ = 0 is HG at 45°, ψ = π/2 is LG0^{+1}.
ModeCoefficients ring_mode(double psi);

/// Real rotation by `angle_deg` in the (HG10, HG01) plane, matching a
/// rotation of the transverse field by the same angle.
ModeCoefficients rotate(const ModeCoefficients &c, double angle_deg);

/// The 45° prism of the HG01 local oscillator path.
ModeCoefficients rotate_45(const ModeCoefficients &c);

struct GridSpec {
    int nx = 256;
    int ny = 256;
    double extent_w0 = 8;  // half-width, in waists

    double dx() const {
        return 2 * extent_w0 / nx;
    }
    double dy() const {
        return 2 * extent_w0 / ny;
    }
    double cell_area() const {
        return dx() * dy();
    }
    // Midpoint coordinates.
    double x(int i) const {
        return -extent_w0 + (i + 0.5) * dx();
    }
    double y(int j) const {
        return -extent_w0 + (j + 0.5) * dy();
    }
    size_t size() const {
        return static_cast<size_t>(nx) * static_cast<size_t>(ny);
    }
    void validate() const;

    bool operator==(const GridSpec &other) const = default;
};

/// Complex transverse amplitude sampled at the midpoints of `grid`, stored
/// row-major with x fastest: amplitudes[j * nx + i].
struct SampledField {
    GridSpec grid;
    std::vector<cdouble> amplitudes;

    cdouble at(int i, int j) const {
        return amplitudes[static_cast<size_t>(j) * grid.nx + i];
    }
    double norm_squared() const;
};

SampledField hg_mode(int m, int n, double orientation_deg, const GridSpec &grid);
SampledField lg_mode(int p, int l, const GridSpec &grid);
SampledField mode_field(const ModeLabel &label, const GridSpec &grid);

/// Σ c_k·u_k on the grid.
SampledField superpose(const ModeCoefficients &c, const GridSpec &grid);

/// ⟨a|b⟩ = Σ conj(a)·b·ΔA. Throws DomainError(incompatible_grids).
cdouble overlap(const SampledField &a, const SampledField &b);

/// Binary π step: amplitudes with x < 0 are negated.
SampledField phase_plate(const SampledField &f);

/// Projects `f` on (HG10, HG01) and renormalizes. Also returns the captured
/// power fraction via `captured` when non-null.
ModeCoefficients project_first_order(const SampledField &f, double *captured = nullptr);

struct IntensityImage {
    GridSpec grid;
    std::vector<double> intensity;

    double at(int i, int j) const {
        return intensity[static_cast<size_t>(j) * grid.nx + i];
    }
    double total_power() const;
};

IntensityImage interference_pattern(const ModeCoefficients &c, const GridSpec &grid);

/// Plain (P2) graymap scaled to the image maximum; first row is the largest y.
void write_pgm(std::ostream &out, const IntensityImage &image);
/// Columns x,y,intensity.
void write_csv(std::ostream &out, const IntensityImage &image);

}  // namespace oamsq

#endif
