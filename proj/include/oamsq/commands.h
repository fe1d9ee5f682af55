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

#ifndef OAMSQ_COMMANDS_H
#define OAMSQ_COMMANDS_H

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "oamsq/analysis.h"
#include "oamsq/scenario.h"

namespace oamsq {

/// Measured-path and loss-corrected witness, efficiencies and per-mode dB.
nlohmann::json cmd_witness(const Scenario &scenario);

struct ScanResult {
    VarianceTrace trace;
    SqueezeFit fit;
    nlohmann::json report;
};

/// `mode` is HG10 or HG01.
ScanResult cmd_scan(const Scenario &scenario, const ModeLabel &mode, std::uint64_t seed);

struct RingResult {
    RingReport report;
    nlohmann::json summary;
};

RingResult cmd_ring(const Scenario &scenario, int n_points, std::uint64_t seed);

struct EllipsoidResult {
    OrbitalEllipsoid ellipsoid;
    nlohmann::json report;
    std::vector<std::array<double, 3>> surface;
};

EllipsoidResult cmd_ellipsoid(const Scenario &scenario);

/// Accepts HG10, HG01, HG45, HG135, LG+1, LG-1, ring:<psi>,
/// sphere:<polar>,<azimuth> (radians).
ModeCoefficients parse_mode_spec(const std::string &spec);

IntensityImage cmd_pattern(const std::string &mode_spec, const GridSpec &grid);

void write_surface_csv(std::ostream &out, const std::vector<std::array<double, 3>> &points);

struct RunOptions {
    std::string command;  // witness | scan | ring | ellipsoid | pattern
    std::optional<std::filesystem::path> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    std::string format = "json";
    std::string mode;          // scan: HG10|HG01, pattern: mode spec
    std::optional<int> points;  // ring
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;

/// Runs one subcommand, writing artifacts under out_dir (when given) and
/// the requested format to `out`. Errors go to `err`; the return value is
/// the process exit code.
int run(const RunOptions &options, std::ostream &out, std::ostream &err);

}  // namespace oamsq

#endif
