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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "oamsq/commands.h"
#include "oamsq/errors.h"

using namespace oamsq;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = OAMSQ_SCENARIO_DIR;
const std::string kCli = OAMSQ_CLI_PATH;

fs::path fresh_dir(const std::string &name) {
    auto dir = fs::temp_directory_path() / ("oamsq_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int cli(const std::string &args) {
    std::string cmd = "\"" + kCli + "\" " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunOptions options(const std::string &command, const std::string &config = "paper_default.json") {
    RunOptions o;
    o.command = command;
    o.config = kScenarios / config;
    return o;
}

}  // namespace

TEST(cli, witness_report) {
    auto j = cmd_witness(load_scenario(kScenarios / "paper_default.json"));
    EXPECT_TRUE(j.at("witness_measured").at("entangled").get<bool>());
    EXPECT_NEAR(j.at("duan_sum_measured").get<double>(), 1.416, 1e-3);
    EXPECT_NEAR(j.at("modes").at("HG10").at("measured_dB").get<double>(), -1.6, 1e-9);
    EXPECT_NEAR(j.at("eta").at("total").get<double>(), 0.7877952, 1e-12);
    EXPECT_LT(j.at("duan_sum_inferred").get<double>(), j.at("duan_sum_measured").get<double>());

    auto v = cmd_witness(load_scenario(kScenarios / "vacuum.json"));
    EXPECT_NEAR(v.at("duan_sum_measured").get<double>(), 2, 1e-12);
    EXPECT_FALSE(v.at("witness_measured").at("entangled").get<bool>());
}

TEST(cli, mode_specs) {
    auto lg = parse_mode_spec("LG+1");
    EXPECT_NEAR(sphere_point(lg).o[2], 1, 1e-15);
    EXPECT_NEAR(sphere_point(parse_mode_spec("HG135")).o[1], -1, 1e-15);
    EXPECT_NEAR(sphere_point(parse_mode_spec("ring:1.5707963267948966")).o[2], 1, 1e-15);
    EXPECT_NEAR(sphere_point(parse_mode_spec("sphere:0,0")).o[2], 1, 1e-15);
    EXPECT_THROW(parse_mode_spec("LG+2"), ConfigError);
    EXPECT_THROW(parse_mode_spec("ring:abc"), ConfigError);
}

TEST(cli, run_writes_artifacts) {
    auto dir = fresh_dir("artifacts");
    for (std::string command : {"witness", "scan", "ring", "ellipsoid", "pattern"}) {
        auto o = options(command);
        o.out_dir = dir;
        o.seed = 3;
        if (command == "pattern") {
            o.config.reset();
        }
        std::ostringstream out;
        std::ostringstream err;
        EXPECT_EQ(run(o, out, err), kExitOk) << command << ": " << err.str();
    }
    for (const char *name :
         {"witness.json", "scan_HG10.csv", "scan_HG10_fit.json", "ring.csv", "ring_summary.json", "ellipsoid.json",
          "ellipsoid_surface.csv", "pattern.pgm", "pattern.csv"}) {
        EXPECT_TRUE(fs::exists(dir / name)) << name;
    }
    fs::remove_all(dir);
}

TEST(cli, exit_codes) {
    std::ostringstream out;
    std::ostringstream err;
    auto o = options("scan");
    o.mode = "LG+1";
    EXPECT_EQ(run(o, out, err), kExitConfig);

    o = options("scan");
    o.format = "xml";
    EXPECT_EQ(run(o, out, err), kExitConfig);

    o = options("witness");
    o.config.reset();
    EXPECT_EQ(run(o, out, err), kExitConfig);

    // No seed anywhere for a synthetic trace.
    auto dir = fresh_dir("noseed");
    {
        std::ofstream f(dir / "s.json");
        f << R"({"version": 1, "source": {"kind": "opo", "pump_param": [0.1, 0.1]}})";
    }
    o = options("scan");
    o.config = dir / "s.json";
    EXPECT_EQ(run(o, out, err), kExitConfig);
    o.seed = 1;
    EXPECT_EQ(run(o, out, err), kExitOk);

    {
        std::ofstream f(dir / "hot.json");
        f << R"({"version": 1, "source": {"kind": "opo", "pump_param": [1.2, 0.1]}})";
    }
    o = options("witness");
    o.config = dir / "hot.json";
    err.str("");
    EXPECT_EQ(run(o, out, err), kExitDomain);
    EXPECT_NE(err.str().find("above threshold"), std::string::npos);

    {
        std::ofstream f(dir / "dark.json");
        f << R"({"version": 1, "source": {"kind": "opo", "pump_param": [0.1, 0.1], "seed_amp": 0}})";
    }
    o = options("ellipsoid");
    o.config = dir / "dark.json";
    EXPECT_EQ(run(o, out, err), kExitDomain);
    fs::remove_all(dir);
}

TEST(cli, binary_exit_codes) {
    const std::string cfg = "--config \"" + (kScenarios / "paper_default.json").string() + "\"";
    EXPECT_EQ(cli(cfg + " witness"), 0);
    EXPECT_EQ(cli(cfg + " scan --mode LG01"), 2);
    EXPECT_EQ(cli("--config /nonexistent.json witness"), 2);
    EXPECT_EQ(cli(cfg + " bogus"), 2);
    EXPECT_EQ(cli(cfg + " --format csv ring --points 8"), 0);
    EXPECT_EQ(cli("pattern --mode LG-1"), 0);
}

TEST(cli, scan_output_is_byte_identical) {
    auto a = fresh_dir("repeat_a");
    auto b = fresh_dir("repeat_b");
    const std::string cfg = "--config \"" + (kScenarios / "paper_default.json").string() + "\"";
    ASSERT_EQ(cli(cfg + " --seed 42 --out \"" + a.string() + "\" scan --mode HG01"), 0);
    ASSERT_EQ(cli(cfg + " --seed 42 --out \"" + b.string() + "\" scan --mode HG01"), 0);
    auto first = slurp(a / "scan_HG01.csv");
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, slurp(b / "scan_HG01.csv"));
    EXPECT_EQ(slurp(a / "scan_HG01_fit.json"), slurp(b / "scan_HG01_fit.json"));
    ASSERT_EQ(cli(cfg + " --seed 43 --out \"" + b.string() + "\" scan --mode HG01"), 0);
    EXPECT_NE(first, slurp(b / "scan_HG01.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}
