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

#ifndef UAVEE_EXPERIMENTS_RUNNER_HPP
#define UAVEE_EXPERIMENTS_RUNNER_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "uavee/channel.hpp"
#include "uavee/experiments/config.hpp"
#include "uavee/ma.hpp"
#include "uavee/optimizer.hpp"
#include "uavee/rng.hpp"

namespace uavee {

struct ResultRow {
    std::string scenario_id;
    Scheme scheme = Scheme::rsma;
    std::uint64_t seed = 0;
    SweepKind sweep_kind = SweepKind::none;
    double sweep_value = 0.0;
    std::vector<double> ee;     // per UAV
    double ee_sum = 0.0;
    std::vector<double> rate_c; // common part of each UAV's rate
    std::vector<double> rate_p; // private part
    double power_used_w = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Called after each finished (sweep point, seed) cell with the number of
/// cells done so far and the total. Invoked from worker threads, one call
/// at a time.
using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Scenario with the sweep value at `value` substituted into weights or geometry.
inline ScenarioConfig at_sweep_point(const ScenarioConfig& cfg, double value) {
    ScenarioConfig c = cfg;
    switch (cfg.sweep.kind) {
    case SweepKind::none: break;
    case SweepKind::weight_eta:
        c.weights[0] = 1.0;
        c.weights[1] = std::pow(10.0, value);
        break;
    case SweepKind::uav2_altitude: c.uavs[1].altitude_m = value; break;
    }
    return c;
}

/// Link budget for one cell. The channel seed is the Monte-Carlo seed, so
/// the same seed sees the same fading draws at every sweep point.
inline LinkBudget make_link_budget(const ScenarioConfig& c, std::uint64_t seed) {
    ChannelParams params = c.channel;
    params.seed = seed;
    LinkBudget lb;
    lb.channels = draw_channels(c.bs, c.uavs, params, c.antenna);
    lb.noise_power = c.budget.noise_power_w;
    lb.power_budget = c.budget.p_t_w;
    lb.bs_static_power = c.budget.p_bs_w;
    lb.weights = c.weights;
    lb.noma_order = c.noma_order;
    return lb;
}

inline ResultRow make_row(const ScenarioConfig& c, Scheme scheme, std::uint64_t seed, double sweep_value,
                          const SolveResult& res) {
    ResultRow row;
    row.scenario_id = c.scenario_id;
    row.scheme = scheme;
    row.seed = seed;
    row.sweep_kind = c.sweep.kind;
    row.sweep_value = c.sweep.kind == SweepKind::none ? 0.0 : sweep_value;
    const auto& r = res.report;
    row.ee.assign(r.ee_per_uav.begin(), r.ee_per_uav.end());
    row.ee_sum = r.ee_sum;
    row.rate_c.assign(r.common_rates.begin(), r.common_rates.end());
    row.rate_p.assign(r.private_rates.begin(), r.private_rates.end());
    row.power_used_w = r.transmit_power;
    row.iterations = res.iterations;
    row.converged = res.converged;
    return row;
}

/// Solves every scheme on one (sweep point, seed) cell. All schemes see the
/// same channels.
inline std::vector<ResultRow> run_cell(const ScenarioConfig& cfg, double sweep_value, std::uint64_t seed) {
    const ScenarioConfig c = at_sweep_point(cfg, sweep_value);
    const LinkBudget lb = make_link_budget(c, seed);
    SolverConfig solver = c.solver;
    solver.restart_seed = mix64(c.solver.restart_seed ^ mix64(seed));
    std::vector<ResultRow> rows;
    rows.reserve(c.schemes.size());
    for (Scheme s : c.schemes)
        rows.push_back(make_row(c, s, seed, sweep_value, optimize(s, lb, solver)));
    return rows;
}

/// Runs every (sweep point x seed x scheme) combination. Seeds are
/// base_seed, base_seed + 1, ... Rows come back ordered by sweep point,
/// then seed, then scheme (in config order), independent of the worker
/// count.
inline std::vector<ResultRow> run_scenario(const ScenarioConfig& cfg, const ProgressFn& progress = {}) {
    cfg.validate();
    const std::vector<double> points = cfg.sweep_points();
    const auto n_seeds = static_cast<std::size_t>(cfg.monte_carlo.num_seeds);
    const std::size_t n_cells = points.size() * n_seeds;

    std::vector<std::vector<ResultRow>> cells(n_cells);
    std::atomic<std::size_t> next{0};
    std::size_t done = 0;
    std::mutex mu;
    std::exception_ptr error;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_cells)
                return;
            {
                std::scoped_lock lock(mu);
                if (error)
                    return;
            }
            try {
                const std::uint64_t seed = cfg.monte_carlo.base_seed + i % n_seeds;
                cells[i] = run_cell(cfg, points[i / n_seeds], seed);
            } catch (...) {
                std::scoped_lock lock(mu);
                if (!error)
                    error = std::current_exception();
                return;
            }
            std::scoped_lock lock(mu);
            ++done;
            if (progress)
                progress(done, n_cells);
        }
    };

    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_workers =
        std::min<std::size_t>(n_cells, cfg.workers > 0 ? static_cast<std::size_t>(cfg.workers) : hw);
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back(work);
    }
    if (error)
        std::rethrow_exception(error);

    std::vector<ResultRow> rows;
    rows.reserve(n_cells * cfg.schemes.size());
    for (auto& cell : cells)
        for (auto& r : cell)
            rows.push_back(std::move(r));
    return rows;
}

/// Altitude sweep of UAV 2 over cfg.sweep.grid.
inline std::vector<ResultRow> sweep_altitude(const ScenarioConfig& cfg, const ProgressFn& progress = {}) {
    if (cfg.sweep.kind != SweepKind::uav2_altitude)
        throw ConfigError("sweep.kind: sweep_altitude needs kind = \"uav2_altitude\"");
    return run_scenario(cfg, progress);
}

} // namespace uavee

#endif // UAVEE_EXPERIMENTS_RUNNER_HPP
