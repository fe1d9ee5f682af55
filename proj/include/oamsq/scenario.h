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

#ifndef OAMSQ_SCENARIO_H
#define OAMSQ_SCENARIO_H

#include <array>
#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "oamsq/detection.h"
#include "oamsq/modespace.h"
#include "oamsq/opo.h"

namespace oamsq {

inline constexpr int kScenarioVersion = 1;

struct SourceSettings {
    /// Per-mode measured-path targets in dB; when set, pump parameters are
    /// solved for by calibrate_to_paper.
    std::optional<std::array<double, 2>> calibrate_db;
    /// Explicit (V_sq, V_anti) per HG mode at the source output.
    std::optional<std::array<SqueezingSpec, 2>> direct;
    OpoConfig opo;
};

struct ScanSettings {
    int n_points = 500;
    double theta0 = 0;
    double rate_rad_per_s = 2 * 3.141592653589793;
    double duration_s = 1;
    std::optional<int> window_samples;  // defaults to chain RBW/VBW
};

struct RingSettings {
    int n_points = 64;
};

struct EllipsoidSettings {
    double scale = 0.2;
    int n_polar = 24;
    int n_azimuth = 48;
};

struct Scenario {
    int version = kScenarioVersion;
    SourceSettings source;
    DetectionChain chain;
    GridSpec grid;
    std::optional<std::uint64_t> seed;
    ScanSettings scan;
    RingSettings ring;
    EllipsoidSettings ellipsoid;
    std::vector<std::string> outputs;
};

/// Validates and converts a scenario document. Unknown keys, wrong types and
/// out-of-range efficiencies raise ConfigError naming the field.
Scenario parse_scenario(const nlohmann::json &doc);
Scenario load_scenario(const std::filesystem::path &path);

/// Source and measured-path states of a scenario.
struct PreparedState {
    OpoConfig opo;
    GaussianState source;
    GaussianState measured;
    double eta_total = 1;
};

PreparedState prepare(const Scenario &scenario);

}  // namespace oamsq

#endif
