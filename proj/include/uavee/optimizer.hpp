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

#ifndef UAVEE_OPTIMIZER_HPP
#define UAVEE_OPTIMIZER_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavee/detail/sca_engine.hpp"
#include "uavee/log.hpp"
#include "uavee/ma.hpp"
#include "uavee/rng.hpp"

namespace uavee {

struct SolverConfig {
    int max_iterations = 100;
    double rel_tolerance = 1e-4;
    int num_restarts = 5;
    double inner_solver_tolerance = 1e-7;
    double trust_region_initial = 1.0; // fraction of the move towards the surrogate maximizer
    std::uint64_t restart_seed = 0;
    double perturbation = 0.1;         // relative size of the restart noise

    void validate() const {
        if (max_iterations < 1)
            throw std::invalid_argument("solver.max_iterations must be >= 1");
        if (!(rel_tolerance > 0.0) || !(inner_solver_tolerance > 0.0))
            throw std::invalid_argument("solver tolerances must be > 0");
        if (num_restarts < 1)
            throw std::invalid_argument("solver.num_restarts must be >= 1");
        if (!(trust_region_initial > 0.0 && trust_region_initial <= 1.0))
            throw std::invalid_argument("solver.trust_region_initial must lie in (0, 1]");
        if (!(perturbation >= 0.0))
            throw std::invalid_argument("solver.perturbation must be >= 0");
    }
};

struct SolveResult {
    PrecoderSolution solution;
    RateReport report;
    double objective = 0.0; // weighted sum EE, bits/s/Hz per W
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;
    int restart_index = 0;
};

namespace detail {

struct Trajectory {
    CMatrix w;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

inline Trajectory run_sca(const ScaEngine& engine, CMatrix w, const SolverConfig& cfg) {
    Trajectory t;
    t.objective = engine.energy_efficiency(w);
    t.trace.push_back(t.objective);
    int calm = 0;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        auto step = engine.step(w, cfg.trust_region_initial, cfg.inner_solver_tolerance);
        ++t.iterations;
        if (step.numerical_failure)
            log_warning("sca: inner solve produced non-finite precoders; keeping the previous iterate");
        const double prev = t.objective;
        w = std::move(step.w);
        t.objective = step.objective;
        t.trace.push_back(t.objective);
        if (!step.improved) {
            // Fixed point of the step map.
            t.converged = true;
            break;
        }
        const double rel = std::abs(t.objective - prev) / std::max(std::abs(prev), 1e-300);
        calm = rel < cfg.rel_tolerance ? calm + 1 : 0;
        if (calm >= 2) {
            t.converged = true;
            break;
        }
    }
    t.w = std::move(w);
    return t;
}

// RSMA point that reproduces a NOMA solution: the message at the last
// decode position (decoded by every UAV) travels on the common stream. For
// K = 2 this embedding is exact, so the RSMA start is at least as good.
inline PrecoderSolution embed_noma(const PrecoderSolution& noma, const LinkBudget& lb) {
    const std::vector<int> order = lb.noma_order.empty() ? default_noma_order(lb.channels) : lb.noma_order;
    PrecoderSolution sol = noma;
    sol.scheme = Scheme::rsma;
    const int last = order.back();
    sol.common_precoder = noma.private_precoders.col(last);
    sol.private_precoders.col(last).setZero();
    sol.common_rates = RVector::Zero(noma.num_users());
    return sol;
}

inline SolveResult finalize(const ScaEngine& engine, const Trajectory& best, int restart, const LinkBudget& lb) {
    SolveResult r;
    r.solution = engine.lift(best.w);
    r.report = evaluate(r.solution, lb);
    r.objective = r.report.ee_sum;
    r.iterations = best.iterations;
    r.converged = best.converged;
    r.objective_trace = best.trace;
    r.restart_index = restart;
    return r;
}

} // namespace detail

/// Maximizes the weighted sum energy efficiency by successive convex
/// approximation from several starting points and returns the best one.
/// RSMA additionally runs every SDMA start (common stream off), so its
/// result never falls below optimize(SDMA) on the same inputs, and one start
/// embedded from the NOMA optimum.
inline SolveResult optimize(Scheme scheme, const LinkBudget& lb, const SolverConfig& cfg) {
    lb.validate();
    cfg.validate();
    const int m = lb.num_antennas();
    const int k_users = lb.num_users();

    if (lb.power_budget <= 0.0) {
        SolveResult r;
        r.solution = PrecoderSolution::zeros(scheme, m, k_users);
        r.report = evaluate(r.solution, lb);
        r.objective = r.report.ee_sum;
        r.iterations = 1;
        r.converged = true;
        r.objective_trace = {r.objective};
        return r;
    }

    const detail::ScaEngine engine(scheme, lb);
    detail::Trajectory best;
    int best_index = -1;
    int index = 0;
    auto consider = [&](detail::Trajectory traj) {
        if (best_index < 0 || traj.objective > best.objective) {
            best = std::move(traj);
            best_index = index;
        }
        ++index;
    };
    const int passes = scheme == Scheme::rsma ? 2 : 1;
    for (int pass = 0; pass < passes; ++pass) {
        const bool common_off = pass == 1;
        for (int r = 0; r < cfg.num_restarts; ++r)
            consider(detail::run_sca(engine, engine.initial_point(r, cfg.restart_seed, cfg.perturbation, common_off),
                                     cfg));
    }
    if (scheme == Scheme::rsma && k_users >= 2) {
        const SolveResult noma = optimize(Scheme::noma, lb, cfg);
        consider(detail::run_sca(engine, engine.project(detail::embed_noma(noma.solution, lb)), cfg));
    }
    return detail::finalize(engine, best, best_index, lb);
}

inline SolveResult optimize_sdma(const LinkBudget& lb, const SolverConfig& cfg) {
    return optimize(Scheme::sdma, lb, cfg);
}

/// One convexify-and-solve step from `current`. The returned point is
/// feasible and its objective is not below that of `current`.
inline PrecoderSolution sca_iteration(const PrecoderSolution& current, const LinkBudget& lb, Scheme scheme,
                                      const SolverConfig& cfg = {}) {
    lb.validate();
    const detail::ScaEngine engine(scheme, lb);
    CMatrix w0 = engine.project(current);
    // Every rate bound is flat at W = 0; start that step from matched filters.
    if (w0.squaredNorm() == 0.0 && lb.power_budget > 0.0)
        w0 = engine.initial_point(0, cfg.restart_seed, 0.0, false);
    const double before = evaluate(current, lb).ee_sum;
    const auto step = engine.step(w0, cfg.trust_region_initial, cfg.inner_solver_tolerance);
    if (step.numerical_failure)
        log_warning("sca_iteration: inner solve failed numerically; returning the current point");
    PrecoderSolution next = engine.lift(step.w);
    // The projection alone can only help; the guard covers rounding.
    if (evaluate(next, lb).ee_sum < before) {
        PrecoderSolution same = current;
        same.scheme = scheme;
        return same;
    }
    return next;
}

/// Random-search reference solver for small instances. Draws feasible
/// points (column directions uniform on the complex unit sphere, column
/// powers uniform on {p >= 0, sum p <= P_t}, RSMA common rates uniform on
/// {r >= 0, sum r <= min_k R^c_k}) and keeps the best EE.
inline SolveResult oracle_search(Scheme scheme, const LinkBudget& lb, std::int64_t sample_budget, std::uint64_t seed) {
    lb.validate();
    const int m = lb.num_antennas();
    const int k_users = lb.num_users();
    const int cols = k_users + (scheme == Scheme::rsma ? 1 : 0);
    CounterRng rng(mix64(seed));

    PrecoderSolution sol = PrecoderSolution::zeros(scheme, m, k_users);
    SolveResult best;
    best.solution = sol;
    best.report = evaluate(sol, lb);
    best.objective = -1.0;

    std::vector<double> share(static_cast<std::size_t>(std::max(cols, k_users)) + 1);
    auto simplex = [&](int n, double scale) {
        double total = 0.0;
        for (int i = 0; i <= n; ++i)
            total += (share[i] = rng.exponential());
        for (int i = 0; i < n; ++i)
            share[i] *= scale / total;
    };

    for (std::int64_t s = 0; s < sample_budget; ++s) {
        simplex(cols, lb.power_budget);
        for (int l = 0; l < cols; ++l) {
            CVector dir(m);
            for (int i = 0; i < m; ++i)
                dir[i] = rng.complex_normal();
            dir *= std::sqrt(share[l]) / dir.norm();
            if (l < k_users)
                sol.private_precoders.col(l) = dir;
            else
                sol.common_precoder = dir;
        }
        double ee = 0.0;
        if (scheme == Scheme::rsma) {
            sol.common_rates.setZero();
            const RateReport caps = rsma_rates(sol, lb);
            simplex(k_users, caps.common_rate_min);
            for (int k = 0; k < k_users; ++k)
                sol.common_rates[k] = share[k];
            ee = energy_efficiency(sol.common_rates + caps.private_rates, sol, lb).sum;
        } else {
            ee = evaluate(sol, lb).ee_sum;
        }
        if (ee > best.objective) {
            best.objective = ee;
            best.solution = sol;
        }
    }
    best.report = evaluate(best.solution, lb);
    best.objective = best.report.ee_sum;
    best.iterations = static_cast<int>(std::min<std::int64_t>(sample_budget, INT32_MAX));
    best.converged = true;
    best.objective_trace = {best.objective};
    return best;
}

} // namespace uavee

#endif // UAVEE_OPTIMIZER_HPP
