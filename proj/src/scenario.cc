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

#include "oamsq/scenario.h"

#include <fstream>
#include <set>

#include "oamsq/errors.h"

namespace oamsq {

namespace {

using nlohmann::json;

std::string join(const std::string &prefix, const std::string &key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json &obj, const std::string &where, std::initializer_list<const char *> allowed) {
    if (!obj.is_object()) {
        throw ConfigError(where.empty() ? "<root>" : where, "expected an object");
    }
    std::set<std::string> names(allowed.begin(), allowed.end());
    for (const auto &item : obj.items()) {
        if (!names.count(item.key())) {
            throw ConfigError(join(where, item.key()), "unknown field");
        }
    }
}

double number(const json &obj, const std::string &where, const char *key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto &v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(join(where, key), "expected a number");
    }
    return v.get<double>();
}

int integer(const json &obj, const std::string &where, const char *key, int fallback, int min_value) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto &v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(join(where, key), "expected an integer");
    }
    auto n = v.get<long long>();
    if (n < min_value || n > 1'000'000'000) {
        throw ConfigError(join(where, key), "must be >= " + std::to_string(min_value));
    }
    return static_cast<int>(n);
}

double efficiency(const json &obj, const std::string &where, const char *key, double fallback, bool allow_zero) {
    double eta = number(obj, where, key, fallback);
    if (!(eta <= 1 && (allow_zero ? eta >= 0 : eta > 0))) {
        throw ConfigError(join(where, key), std::string("efficiency must be in ") + (allow_zero ? "[0, 1]" : "(0, 1]"));
    }
    return eta;
}

LockMode lock_mode(const json &obj, const std::string &where) {
    if (!obj.contains("lock")) {
        return LockMode::deamplification;
    }
    const auto &v = obj.at("lock");
    if (v == "deamplification") {
        return LockMode::deamplification;
    }
    if (v == "amplification") {
        return LockMode::amplification;
    }
    throw ConfigError(join(where, "lock"), "expected \"deamplification\" or \"amplification\"");
}

std::array<double, 2> pair_of_numbers(const json &obj, const std::string &where, const char *key) {
    const auto &v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError(join(where, key), "expected [HG10, HG01] numbers");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

SourceSettings parse_source(const json &obj) {
    const std::string where = "source";
    if (!obj.is_object() || !obj.contains("kind")) {
        throw ConfigError("source.kind", "missing");
    }
    SourceSettings src;
    src.opo.seed_amp = number(obj, where, "seed_amp", 100);
    src.opo.lock = lock_mode(obj, where);
    const auto &kind = obj.at("kind");
    if (kind == "opo") {
        reject_unknown(obj, where, {"kind", "calibrate_dB", "pump_param", "omega", "eta_cav", "seed_amp", "lock"});
        src.opo.omega = number(obj, where, "omega", 0.5);
        if (!(src.opo.omega >= 0)) {
            throw ConfigError("source.omega", "must be >= 0");
        }
        src.opo.eta_cav = efficiency(obj, where, "eta_cav", 0.94, false);
        bool has_cal = obj.contains("calibrate_dB");
        bool has_pump = obj.contains("pump_param");
        if (has_cal == has_pump) {
            throw ConfigError("source", "give exactly one of calibrate_dB or pump_param");
        }
        if (has_cal) {
            src.calibrate_db = pair_of_numbers(obj, where, "calibrate_dB");
        } else {
            src.opo.pump_param = pair_of_numbers(obj, where, "pump_param");
        }
    } else if (kind == "direct") {
        reject_unknown(obj, where, {"kind", "modes", "eta_cav", "seed_amp", "lock"});
        src.opo.eta_cav = efficiency(obj, where, "eta_cav", 1.0, false);
        if (!obj.contains("modes")) {
            throw ConfigError("source.modes", "missing");
        }
        const auto &modes = obj.at("modes");
        reject_unknown(modes, "source.modes", {"HG10", "HG01"});
        std::array<SqueezingSpec, 2> specs;
        const char *names[2] = {"HG10", "HG01"};
        for (int k = 0; k < 2; k++) {
            std::string at = std::string("source.modes.") + names[k];
            if (!modes.contains(names[k])) {
                throw ConfigError(at, "missing");
            }
            const auto &m = modes.at(names[k]);
            reject_unknown(m, at, {"V_sq", "V_anti"});
            specs[k].v_sq = number(m, at, "V_sq", 1);
            specs[k].v_anti = number(m, at, "V_anti", 1);
        }
        src.direct = specs;
    } else {
        throw ConfigError("source.kind", "expected \"opo\" or \"direct\"");
    }
    return src;
}

DetectionChain parse_chain(const json &obj) {
    const std::string where = "chain";
    reject_unknown(obj, where, {"eta_prop", "eta_det", "eta_hd", "analysis_freq_hz", "rbw_hz", "vbw_hz"});
    DetectionChain c;
    c.eta_prop = efficiency(obj, where, "eta_prop", c.eta_prop, true);
    c.eta_det = efficiency(obj, where, "eta_det", c.eta_det, true);
    c.eta_hd = efficiency(obj, where, "eta_hd", c.eta_hd, true);
    c.analysis_freq_hz = number(obj, where, "analysis_freq_hz", c.analysis_freq_hz);
    c.rbw_hz = number(obj, where, "rbw_hz", c.rbw_hz);
    c.vbw_hz = number(obj, where, "vbw_hz", c.vbw_hz);
    for (auto [key, value] : {std::pair{"analysis_freq_hz", c.analysis_freq_hz}, {"rbw_hz", c.rbw_hz}, {"vbw_hz", c.vbw_hz}}) {
        if (!(value > 0)) {
            throw ConfigError(join(where, key), "must be positive");
        }
    }
    return c;
}

GridSpec parse_grid(const json &obj) {
    reject_unknown(obj, "grid", {"nx", "ny", "extent_w0"});
    GridSpec g;
    g.nx = integer(obj, "grid", "nx", g.nx, 1);
    g.ny = integer(obj, "grid", "ny", g.ny, 1);
    g.extent_w0 = number(obj, "grid", "extent_w0", g.extent_w0);
    if (!(g.extent_w0 > 0)) {
        throw ConfigError("grid.extent_w0", "must be positive");
    }
    return g;
}

}  // namespace

Scenario parse_scenario(const json &doc) {
    reject_unknown(doc, "", {"version", "source", "chain", "grid", "seed", "scan", "ring", "ellipsoid", "outputs", "comment"});
    if (!doc.contains("version")) {
        throw ConfigError("version", "missing");
    }
    if (!doc.at("version").is_number_integer() || doc.at("version").get<int>() != kScenarioVersion) {
        throw ConfigError("version", "unsupported, expected " + std::to_string(kScenarioVersion));
    }
    if (doc.contains("comment") && !doc.at("comment").is_string()) {
        throw ConfigError("comment", "expected a string");
    }
    Scenario sc;
    if (!doc.contains("source")) {
        throw ConfigError("source", "missing");
    }
    sc.source = parse_source(doc.at("source"));
    if (doc.contains("chain")) {
        sc.chain = parse_chain(doc.at("chain"));
    }
    if (doc.contains("grid")) {
        sc.grid = parse_grid(doc.at("grid"));
    }
    if (doc.contains("seed")) {
        const auto &s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
            throw ConfigError("seed", "expected an unsigned 64-bit integer");
        }
        sc.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("scan")) {
        const auto &s = doc.at("scan");
        reject_unknown(s, "scan", {"n_points", "theta0", "rate_rad_per_s", "duration_s", "window_samples"});
        sc.scan.n_points = integer(s, "scan", "n_points", sc.scan.n_points, 8);
        sc.scan.theta0 = number(s, "scan", "theta0", sc.scan.theta0);
        sc.scan.rate_rad_per_s = number(s, "scan", "rate_rad_per_s", sc.scan.rate_rad_per_s);
        sc.scan.duration_s = number(s, "scan", "duration_s", sc.scan.duration_s);
        if (!(sc.scan.duration_s > 0)) {
            throw ConfigError("scan.duration_s", "must be positive");
        }
        if (s.contains("window_samples")) {
            int w = integer(s, "scan", "window_samples", 0, 0);
            if (w == 1) {
                throw ConfigError("scan.window_samples", "must be 0 (exact) or >= 2");
            }
            sc.scan.window_samples = w;
        }
    }
    if (doc.contains("ring")) {
        reject_unknown(doc.at("ring"), "ring", {"n_points"});
        sc.ring.n_points = integer(doc.at("ring"), "ring", "n_points", sc.ring.n_points, 1);
    }
    if (doc.contains("ellipsoid")) {
        const auto &e = doc.at("ellipsoid");
        reject_unknown(e, "ellipsoid", {"scale", "n_polar", "n_azimuth"});
        sc.ellipsoid.scale = number(e, "ellipsoid", "scale", sc.ellipsoid.scale);
        if (!(sc.ellipsoid.scale > 0)) {
            throw ConfigError("ellipsoid.scale", "must be positive");
        }
        sc.ellipsoid.n_polar = integer(e, "ellipsoid", "n_polar", sc.ellipsoid.n_polar, 1);
        sc.ellipsoid.n_azimuth = integer(e, "ellipsoid", "n_azimuth", sc.ellipsoid.n_azimuth, 1);
    }
    if (doc.contains("outputs")) {
        const auto &o = doc.at("outputs");
        static const std::set<std::string> known{"witness", "scan", "ring", "ellipsoid", "pattern"};
        if (!o.is_array()) {
            throw ConfigError("outputs", "expected an array");
        }
        for (const auto &item : o) {
            if (!item.is_string() || !known.count(item.get<std::string>())) {
                throw ConfigError("outputs", "unknown artifact " + item.dump());
            }
            sc.outputs.push_back(item.get<std::string>());
        }
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("--config", "cannot open " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

PreparedState prepare(const Scenario &scenario) {
    const auto &src = scenario.source;
    OpoConfig cfg = src.opo;
    if (src.calibrate_db) {
        cfg = calibrate_to_paper(*src.calibrate_db, scenario.chain, cfg.omega, cfg.eta_cav, cfg.seed_amp, cfg.lock);
    }
    GaussianState source = src.direct ? opo_output_state(cfg, *src.direct) : opo_output_state(cfg);
    GaussianState measured = apply_chain(source, scenario.chain);
    return {cfg, source, measured, scenario.chain.eta_total(cfg.eta_cav)};
}

}  // namespace oamsq
