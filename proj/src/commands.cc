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

#include "oamsq/commands.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "oamsq/errors.h"
#include "oamsq/io.h"

namespace oamsq {

namespace {

using nlohmann::json;

json mode_report(const GaussianState &measured, const ModeCoefficients &lo_mode, double eta_total) {
    double v = homodyne_variance(measured, {lo_mode, 0.0});
    double anti = homodyne_variance(measured, {lo_mode, std::numbers::pi / 2});
    double inferred = infer_lossless(v, eta_total);
    return {
        {"measured_V", v},
        {"measured_dB", linear_db(v)},
        {"anti_V", anti},
        {"anti_dB", linear_db(anti)},
        {"uncertainty_product", v * anti},
        {"inferred_V", inferred},
        {"inferred_dB", linear_db(inferred)},
    };
}

const char *lock_name(LockMode m) {
    return m == LockMode::deamplification ? "deamplification" : "amplification";
}

Estimator estimator_for(const Scenario &sc, int n_points) {
    return {sc.scan.window_samples.value_or(sc.chain.window_samples()), n_points};
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

double parse_double(const std::string &text, const std::string &field) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(field, "cannot parse number '" + text + "'");
    }
}

void emit(const std::optional<std::filesystem::path> &dir, const std::string &name, const std::string &contents) {
    if (dir) {
        write_file(*dir / name, contents);
    }
}

std::string witness_csv(const json &report) {
    std::ostringstream out;
    out << "key,value\n";
    out << "duan_sum_measured," << format_number(report["duan_sum_measured"].get<double>()) << "\n";
    out << "duan_sum_inferred," << format_number(report["duan_sum_inferred"].get<double>()) << "\n";
    out << "eta_total," << format_number(report["eta"]["total"].get<double>()) << "\n";
    for (const char *mode : {"HG10", "HG01"}) {
        for (const char *key : {"measured_V", "measured_dB", "inferred_V", "inferred_dB", "anti_V", "anti_dB"}) {
            out << mode << "." << key << "," << format_number(report["modes"][mode][key].get<double>()) << "\n";
        }
    }
    return out.str();
}

}  // namespace

json cmd_witness(const Scenario &scenario) {
    auto prep = prepare(scenario);
    const auto &c = scenario.chain;
    WitnessResult measured = duan_witness(to_lg_basis(prep.measured));
    json modes = {
        {"HG10", mode_report(prep.measured, ModeCoefficients::hg(1, 0), prep.eta_total)},
        {"HG01", mode_report(prep.measured, ModeCoefficients::hg(0, 1), prep.eta_total)},
    };
    WitnessResult inferred = witness_from_components(
        modes["HG10"]["inferred_V"].get<double>(), modes["HG01"]["inferred_V"].get<double>());
    return {
        {"normalization", "QNL=1"},
        {"eta",
         {{"cav", prep.opo.eta_cav},
          {"prop", c.eta_prop},
          {"det", c.eta_det},
          {"hd", c.eta_hd},
          {"chain", c.eta_chain()},
          {"total", prep.eta_total}}},
        {"opo",
         {{"pump_param", prep.opo.pump_param},
          {"omega", prep.opo.omega},
          {"seed_amp", prep.opo.seed_amp},
          {"lock", lock_name(prep.opo.lock)}}},
        {"analyzer", {{"analysis_freq_hz", c.analysis_freq_hz}, {"rbw_hz", c.rbw_hz}, {"vbw_hz", c.vbw_hz}}},
        {"modes", modes},
        {"witness_measured", measured.to_json()},
        {"witness_inferred", inferred.to_json()},
        {"duan_sum_measured", measured.duan_sum},
        {"duan_sum_inferred", inferred.duan_sum},
    };
}

ScanResult cmd_scan(const Scenario &scenario, const ModeLabel &mode, std::uint64_t seed) {
    if (!(mode == kHG10) && !(mode == kHG01)) {
        throw ConfigError("--mode", "scan mode must be HG10 or HG01");
    }
    auto prep = prepare(scenario);
    auto coeffs = mode == kHG10 ? ModeCoefficients::hg(1, 0) : ModeCoefficients::hg(0, 1);
    LOSpec lo{coeffs, PhaseRamp{scenario.scan.theta0, scenario.scan.rate_rad_per_s, scenario.scan.duration_s}};
    ScanResult r{scan_trace(prep.measured, lo, estimator_for(scenario, scenario.scan.n_points), seed), {}, {}};
    r.fit = fit_squeezing_curve(r.trace);
    r.report = {
        {"mode", mode.str()},
        {"seed", seed},
        {"window_samples", r.trace.window_samples},
        {"n_points", r.trace.samples.size()},
        {"fit", r.fit.to_json()},
        {"model",
         {{"V_amplitude", homodyne_variance(prep.measured, {coeffs, 0.0})},
          {"V_phase", homodyne_variance(prep.measured, {coeffs, std::numbers::pi / 2})}}},
    };
    return r;
}

RingResult cmd_ring(const Scenario &scenario, int n_points, std::uint64_t seed) {
    if (n_points < 1) {
        throw ConfigError("--points", "must be >= 1");
    }
    auto prep = prepare(scenario);
    std::vector<double> psi;
    for (int k = 0; k < n_points; k++) {
        psi.push_back(2 * std::numbers::pi * k / n_points);
    }
    cdouble bright = prep.measured.amplitude(prep.measured.require(kHG10));
    double theta = std::abs(bright) > 0 ? std::arg(bright) : 0.0;
    auto trace = ring_scan(prep.measured, psi, theta, estimator_for(scenario, n_points), seed);
    RingResult r{ring_report(trace, prep.measured), {}};
    double lo = r.report.rows.front().truth;
    double hi = lo;
    for (const auto &row : r.report.rows) {
        lo = std::min(lo, row.truth);
        hi = std::max(hi, row.truth);
    }
    r.summary = {
        {"n_points", n_points},
        {"seed", seed},
        {"window_samples", trace.window_samples},
        {"amplitude_phase", theta},
        {"true_min", lo},
        {"true_max", hi},
        {"crosses_qnl", lo < 1 && hi > 1},
        {"fraction_within_2sigma", r.report.fraction_within_2sigma},
    };
    return r;
}

EllipsoidResult cmd_ellipsoid(const Scenario &scenario) {
    auto prep = prepare(scenario);
    EllipsoidResult r;
    r.ellipsoid = orbital_ellipsoid(prep.measured);
    const auto &s = scenario.ellipsoid;
    r.surface = ellipsoid_surface(r.ellipsoid, s.scale, s.n_polar, s.n_azimuth);
    int below = 0;
    int above = 0;
    for (double a : r.ellipsoid.axes) {
        below += a < 1;
        above += a > 1;
    }
    r.report = r.ellipsoid.to_json();
    r.report["center"] = ellipsoid_center(r.ellipsoid);
    r.report["surface_scale"] = s.scale;
    r.report["surface_points"] = r.surface.size();
    r.report["squeezed_axes"] = below;
    r.report["antisqueezed_axes"] = above;
    return r;
}

ModeCoefficients parse_mode_spec(const std::string &spec) {
    const std::string s = upper(spec);
    const double h = 1 / std::sqrt(2.0);
    if (s == "HG10") {
        return ModeCoefficients::hg(1, 0);
    }
    if (s == "HG01") {
        return ModeCoefficients::hg(0, 1);
    }
    if (s == "HG45") {
        return ModeCoefficients::hg(h, h);
    }
    if (s == "HG135") {
        return ModeCoefficients::hg(-h, h);
    }
    if (s == "LG+1" || s == "LG0+1") {
        return ModeCoefficients::lg(1, 0);
    }
    if (s == "LG-1" || s == "LG0-1") {
        return ModeCoefficients::lg(0, 1);
    }
    if (s.rfind("RING:", 0) == 0) {
        return ring_mode(parse_double(spec.substr(5), "--mode"));
    }
    if (s.rfind("SPHERE:", 0) == 0) {
        auto rest = spec.substr(7);
        auto comma = rest.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("--mode", "sphere needs <polar>,<azimuth>");
        }
        return coefficients_at(parse_double(rest.substr(0, comma), "--mode"), parse_double(rest.substr(comma + 1), "--mode"));
    }
    throw ConfigError("--mode", "unknown mode spec '" + spec + "'");
}

IntensityImage cmd_pattern(const std::string &mode_spec, const GridSpec &grid) {
    return interference_pattern(parse_mode_spec(mode_spec), grid);
}

void write_surface_csv(std::ostream &out, const std::vector<std::array<double, 3>> &points) {
    out << "o1,o2,o3\n";
    for (const auto &p : points) {
        out << format_number(p[0]) << "," << format_number(p[1]) << "," << format_number(p[2]) << "\n";
    }
}

int run(const RunOptions &options, std::ostream &out, std::ostream &err) {
    try {
        static const std::vector<std::string> commands{"witness", "scan", "ring", "ellipsoid", "pattern"};
        if (std::find(commands.begin(), commands.end(), options.command) == commands.end()) {
            throw ConfigError("command", "unknown subcommand '" + options.command + "'");
        }
        if (options.format != "json" && options.format != "csv") {
            throw ConfigError("--format", "expected json or csv");
        }
        Scenario scenario;
        if (options.config) {
            scenario = load_scenario(*options.config);
        } else if (options.command != "pattern") {
            throw ConfigError("--config", "required for " + options.command);
        }
        auto seed = [&]() -> std::uint64_t {
            if (options.seed) {
                return *options.seed;
            }
            if (scenario.seed) {
                return *scenario.seed;
            }
            throw ConfigError("seed", "a seed is required for synthetic traces (--seed or config \"seed\")");
        };
        if (options.out_dir) {
            std::filesystem::create_directories(*options.out_dir);
        }
        const auto &dir = options.out_dir;
        const bool csv = options.format == "csv";

        if (options.command == "witness") {
            json report = cmd_witness(scenario);
            emit(dir, "witness.json", report.dump(2) + "\n");
            out << (csv ? witness_csv(report) : report.dump(2) + "\n");
        } else if (options.command == "scan") {
            std::string name = options.mode.empty() ? "HG10" : upper(options.mode);
            if (name != "HG10" && name != "HG01") {
                throw ConfigError("--mode", "scan mode must be HG10 or HG01");
            }
            ModeLabel mode = name == "HG10" ? kHG10 : kHG01;
            auto r = cmd_scan(scenario, mode, seed());
            std::ostringstream trace_csv;
            write_trace_csv(trace_csv, r.trace);
            emit(dir, "scan_" + mode.str() + ".csv", trace_csv.str());
            emit(dir, "scan_" + mode.str() + "_fit.json", r.report.dump(2) + "\n");
            out << (csv ? trace_csv.str() : r.report.dump(2) + "\n");
        } else if (options.command == "ring") {
            auto r = cmd_ring(scenario, options.points.value_or(scenario.ring.n_points), seed());
            std::ostringstream ring_csv;
            write_ring_csv(ring_csv, r.report);
            emit(dir, "ring.csv", ring_csv.str());
            emit(dir, "ring_summary.json", r.summary.dump(2) + "\n");
            out << (csv ? ring_csv.str() : r.summary.dump(2) + "\n");
        } else if (options.command == "ellipsoid") {
            auto r = cmd_ellipsoid(scenario);
            std::ostringstream surface;
            write_surface_csv(surface, r.surface);
            emit(dir, "ellipsoid.json", r.report.dump(2) + "\n");
            emit(dir, "ellipsoid_surface.csv", surface.str());
            out << (csv ? surface.str() : r.report.dump(2) + "\n");
        } else {
            std::string spec = options.mode.empty() ? "LG+1" : options.mode;
            auto image = cmd_pattern(spec, scenario.grid);
            std::ostringstream pgm;
            std::ostringstream image_csv;
            write_pgm(pgm, image);
            write_csv(image_csv, image);
            emit(dir, "pattern.pgm", pgm.str());
            emit(dir, "pattern.csv", image_csv.str());
            json summary = {
                {"mode", spec},
                {"grid", {{"nx", image.grid.nx}, {"ny", image.grid.ny}, {"extent_w0", image.grid.extent_w0}}},
                {"total_power", image.total_power()},
            };
            out << (csv ? image_csv.str() : summary.dump(2) + "\n");
        }
        return kExitOk;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError &e) {
        err << "domain error: " << e.what() << "\n";
        return kExitDomain;
    }
}

}  // namespace oamsq
