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

#include <CLI11.hpp>
#include <iostream>

#include "oamsq/commands.h"

int main(int argc, char **argv) {
    CLI::App app{"Orbital-mode squeezing and entanglement simulator"};
    app.require_subcommand(1);

    oamsq::RunOptions options;
    std::string config;
    std::string out_dir;
    std::uint64_t seed = 0;
    int points = 0;

    app.add_option("--config", config, "Scenario JSON file");
    auto *seed_opt = app.add_option("--seed", seed, "RNG seed for synthetic traces");
    auto *out_opt = app.add_option("--out", out_dir, "Directory for CSV/JSON/PGM artifacts");
    app.add_option("--format", options.format, "Stdout format")->check(CLI::IsMember({"json", "csv"}));

    app.add_subcommand("witness", "Duan-Simon witness, measured and loss-corrected");
    auto *scan = app.add_subcommand("scan", "LO phase scan of one HG mode, with curve fit");
    scan->add_option("--mode", options.mode, "HG10 or HG01")->check(CLI::IsMember({"HG10", "HG01"}));
    auto *ring = app.add_subcommand("ring", "Amplitude variances along the O2-O3 ring");
    auto *points_opt = ring->add_option("--points", points, "Number of ring points");
    app.add_subcommand("ellipsoid", "Orbital-parameter uncertainty ellipsoid");
    auto *pattern = app.add_subcommand("pattern", "Mode-converter interference pattern");
    pattern->add_option("--mode", options.mode, "HG10|HG01|HG45|HG135|LG+1|LG-1|ring:<psi>|sphere:<polar>,<azimuth>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return oamsq::kExitConfig;
    }

    options.command = app.get_subcommands().front()->get_name();
    if (!config.empty()) {
        options.config = config;
    }
    if (seed_opt->count() > 0) {
        options.seed = seed;
    }
    if (out_opt->count() > 0) {
        options.out_dir = out_dir;
    }
    if (points_opt->count() > 0) {
        options.points = points;
    }
    try {
        return oamsq::run(options, std::cout, std::cerr);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
