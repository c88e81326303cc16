// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The uavee Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// uavee: run or check energy-efficiency scenarios.
//
//   uavee run --config FILE [--preset NAME] --out CSV [--seed N] [--seeds N]
//             [--schemes rsma,noma,sdma] [--workers N] [--quiet]
//   uavee validate --config FILE [--preset NAME]
//
// Exit status: 0 success, 1 usage, 2 invalid configuration, 3 I/O error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavee/uavee.hpp"

namespace {

constexpr int exit_usage = 1;
constexpr int exit_config = 2;
constexpr int exit_io = 3;

struct Options {
    std::string config;
    std::string preset;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> seeds;
    std::string schemes;
    std::optional<int> workers;
    bool quiet = false;
};

uavee::ScenarioConfig build_config(const Options& o) {
    std::optional<std::string> preset;
    if (!o.preset.empty())
        preset = o.preset;
    uavee::ScenarioConfig cfg = o.config.empty() ? uavee::preset(*preset) : uavee::load_config(o.config, preset);
    if (o.seed)
        cfg.monte_carlo.base_seed = *o.seed;
    if (o.seeds)
        cfg.monte_carlo.num_seeds = *o.seeds;
    if (o.workers)
        cfg.workers = *o.workers;
    if (!o.schemes.empty()) {
        cfg.schemes.clear();
        std::stringstream ss(o.schemes);
        std::string name;
        while (std::getline(ss, name, ',')) {
            const auto s = uavee::parse_scheme(name);
            if (!s)
                throw uavee::ConfigError("--schemes: unknown scheme '" + name + "'");
            cfg.schemes.push_back(*s);
        }
    }
    cfg.validate();
    return cfg;
}

void describe(const uavee::ScenarioConfig& c, std::ostream& os) {
    os << "scenario " << c.scenario_id << ": " << c.num_uavs() << " UAV(s), M = " << c.bs.array_size
       << ", P_t = " << c.budget.p_t_w << " W, P_BS = " << c.budget.p_bs_w << " W, N0 = " << c.budget.noise_power_w
       << " W\n";
    os << "  sweep " << uavee::to_string(c.sweep.kind) << " (" << c.sweep_points().size() << " point(s)), "
       << c.monte_carlo.num_seeds << " seed(s) from " << c.monte_carlo.base_seed << ", schemes";
    for (auto s : c.schemes)
        os << ' ' << uavee::to_string(s);
    os << '\n';
}

int cmd_run(const Options& o) {
    const uavee::ScenarioConfig cfg = build_config(o);
    if (!o.quiet)
        describe(cfg, std::cerr);
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t last_pct = 101;
    uavee::ProgressFn progress;
    if (!o.quiet)
        progress = [&](std::size_t done, std::size_t total) {
            const std::size_t pct = 100 * done / total;
            if (pct != last_pct && (pct % 5 == 0 || done == total)) {
                last_pct = pct;
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                std::cerr << "  " << done << "/" << total << " cells (" << pct << "%), " << secs << " s\n";
            }
        };
    const auto rows = uavee::run_scenario(cfg, progress);
    uavee::write_csv(rows, o.out);
    if (!o.quiet) {
        std::size_t unconverged = 0;
        for (const auto& r : rows)
            unconverged += r.converged ? 0 : 1;
        std::cerr << "wrote " << rows.size() << " rows to " << o.out;
        if (unconverged)
            std::cerr << " (" << unconverged << " hit the iteration limit)";
        std::cerr << '\n';
    }
    return 0;
}

int cmd_validate(const Options& o) {
    const uavee::ScenarioConfig cfg = build_config(o);
    std::cout << "ok\n";
    describe(cfg, std::cout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-efficient precoding for cellular-connected UAVs"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Scenario file")->check(CLI::ExistingFile);
        sub->add_option("--preset", o.preset, "Built-in scenario used as the base")
            ->check(CLI::IsMember(uavee::preset_names()));
    };

    auto* run = app.add_subcommand("run", "Run a scenario and write the result table");
    add_common(run);
    run->add_option("--out", o.out, "Output CSV path")->required();
    run->add_option("--seed", o.seed, "Base Monte-Carlo seed");
    run->add_option("--seeds", o.seeds, "Number of Monte-Carlo seeds")->check(CLI::PositiveNumber);
    run->add_option("--schemes", o.schemes, "Comma-separated subset of rsma,noma,sdma");
    run->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    run->add_flag("-q,--quiet", o.quiet, "No progress output");

    auto* validate = app.add_subcommand("validate", "Check a scenario file and print a summary");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_usage;
    }

    if (o.config.empty() && o.preset.empty()) {
        std::cerr << "error: give --config, --preset, or both\n";
        return exit_usage;
    }
    try {
        return run->parsed() ? cmd_run(o) : cmd_validate(o);
    } catch (const uavee::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
}
