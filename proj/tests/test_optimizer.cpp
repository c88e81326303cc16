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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace uavee;
using uavee::testing::golden_max;
using uavee::testing::random_instance;
using uavee::testing::raw_budget;

namespace {

constexpr Scheme all_schemes[] = {Scheme::rsma, Scheme::noma, Scheme::sdma};

LinkBudget single_user() {
    CVector h(1);
    h[0] = 1.0;
    return raw_budget({h}, 1.0, 10.0, 10.0);
}

double single_user_ee(double p) { return std::log2(1.0 + p) / (p + 10.0); }

void expect_monotone(const std::vector<double>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i)
        EXPECT_GE(trace[i], trace[i - 1] - 1e-9) << "step " << i;
}

SolverConfig tight() {
    SolverConfig cfg;
    cfg.rel_tolerance = 1e-12;
    cfg.max_iterations = 2000;
    return cfg;
}

} // namespace

TEST(GoldenSection, SingleUserReference) {
    const double p = golden_max(single_user_ee, 0.0, 10.0);
    EXPECT_NEAR(p, 7.2, 0.05);
    EXPECT_NEAR(single_user_ee(p), 0.176, 0.001);
}

TEST(Optimize, SingleUserMatchesGoldenSection) {
    const double p_star = golden_max(single_user_ee, 0.0, 10.0);
    const double ee_star = single_user_ee(p_star);
    for (Scheme s : all_schemes) {
        const auto loose = optimize(s, single_user(), SolverConfig{});
        EXPECT_NEAR(loose.objective, ee_star, 1e-3 * ee_star) << to_string(s);
        const auto r = optimize(s, single_user(), tight());
        EXPECT_NEAR(r.objective, ee_star, 1e-9 * ee_star) << to_string(s);
        EXPECT_NEAR(r.solution.transmit_power(), p_star, 1e-2) << to_string(s);
    }
}

TEST(Optimize, ZeroBudget) {
    auto lb = random_instance(1, 4, 2);
    lb.power_budget = 0.0;
    for (Scheme s : all_schemes) {
        const auto r = optimize(s, lb, SolverConfig{});
        EXPECT_EQ(r.objective, 0.0);
        EXPECT_EQ(r.solution.transmit_power(), 0.0);
        EXPECT_EQ(r.iterations, 1);
        EXPECT_TRUE(r.converged);
    }
}

TEST(Optimize, TracesAscendAndPointsAreFeasible) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto lb = random_instance(seed, 8, 2);
        for (Scheme s : all_schemes) {
            const auto r = optimize(s, lb, SolverConfig{});
            SCOPED_TRACE(std::string(to_string(s)) + " seed " + std::to_string(seed));
            expect_monotone(r.objective_trace);
            EXPECT_TRUE(check_power(r.solution, lb).ok);
            EXPECT_TRUE(r.report.common_rate_feasible);
            EXPECT_TRUE((r.solution.common_rates.array() >= 0.0).all());
            EXPECT_NEAR(r.objective, evaluate(r.solution, lb).ee_sum, 1e-8 * r.objective);
            EXPECT_NEAR(r.objective_trace.back(), r.objective, 1e-9 * r.objective);
        }
    }
}

TEST(Optimize, RsmaNeverBelowSdma) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto lb = random_instance(50 + seed, 8, 2);
        const double rsma = optimize(Scheme::rsma, lb, SolverConfig{}).objective;
        const double sdma = optimize_sdma(lb, SolverConfig{}).objective;
        EXPECT_GE(rsma, sdma * (1.0 - 1e-6)) << "seed " << seed;
    }
}

TEST(Optimize, SdmaEqualsRsmaForOneUser) {
    const auto lb = random_instance(4, 8, 1);
    const double a = optimize(Scheme::rsma, lb, tight()).objective;
    const double b = optimize_sdma(lb, tight()).objective;
    EXPECT_NEAR(a, b, 1e-6 * b);
}

TEST(Optimize, OrthogonalChannelsLeaveLittleForTheCommonStream) {
    CVector h1(2), h2(2);
    h1 << 0.05, 0.0;
    h2 << 0.0, 0.05;
    const auto lb = raw_budget({h1, h2}, 1e-3, 10.0, 10.0);
    const double rsma = optimize(Scheme::rsma, lb, SolverConfig{}).objective;
    const double sdma = optimize_sdma(lb, SolverConfig{}).objective;
    EXPECT_NEAR(rsma, sdma, 1e-3 * sdma);
    const auto oracle = oracle_search(Scheme::sdma, lb, 20000, 1);
    EXPECT_LE(oracle.objective, sdma * 1.05);
}

TEST(Optimize, IsDeterministic) {
    const auto lb = random_instance(9, 8, 2);
    SolverConfig cfg;
    cfg.restart_seed = 77;
    for (Scheme s : all_schemes) {
        const auto a = optimize(s, lb, cfg);
        const auto b = optimize(s, lb, cfg);
        EXPECT_EQ(a.objective, b.objective);
        EXPECT_TRUE(a.solution.private_precoders == b.solution.private_precoders);
        EXPECT_TRUE(a.solution.common_precoder == b.solution.common_precoder);
        EXPECT_EQ(a.objective_trace, b.objective_trace);
    }
}

TEST(Optimize, ConvergedMeansSettledTrace) {
    const auto lb = random_instance(10, 8, 2);
    SolverConfig cfg;
    for (Scheme s : all_schemes) {
        const auto r = optimize(s, lb, cfg);
        if (!r.converged)
            continue;
        const auto& t = r.objective_trace;
        ASSERT_GE(t.size(), 2u);
        EXPECT_LT(std::abs(t.back() - t[t.size() - 2]), cfg.rel_tolerance * std::abs(t.back()));
    }
}

TEST(Optimize, IterationCapIsReported) {
    const auto lb = random_instance(11, 8, 2);
    SolverConfig cfg;
    cfg.max_iterations = 1;
    cfg.num_restarts = 1;
    const auto r = optimize(Scheme::sdma, lb, cfg);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_TRUE(check_power(r.solution, lb).ok);
}

TEST(Optimize, RejectsBadSolverConfig) {
    const auto lb = random_instance(12, 4, 2);
    SolverConfig cfg;
    cfg.max_iterations = 0;
    EXPECT_THROW(optimize(Scheme::rsma, lb, cfg), std::invalid_argument);
    cfg = {};
    cfg.rel_tolerance = 0.0;
    EXPECT_THROW(optimize(Scheme::rsma, lb, cfg), std::invalid_argument);
}

TEST(ScaIteration, ImprovesFromZero) {
    const auto lb = single_user();
    auto sol = PrecoderSolution::zeros(Scheme::sdma, 1, 1);
    const auto next = sca_iteration(sol, lb, Scheme::sdma);
    EXPECT_GT(evaluate(next, lb).ee_sum, 0.0);
    EXPECT_TRUE(check_power(next, lb).ok);
}

TEST(ScaIteration, NeverDecreasesAndStaysFeasible) {
    CounterRng rng(3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto lb = random_instance(200 + seed, 4, 2);
        for (Scheme s : all_schemes) {
            auto sol = PrecoderSolution::zeros(s, 4, 2);
            for (int i = 0; i < 4; ++i) {
                for (int k = 0; k < 2; ++k)
                    sol.private_precoders(i, k) = rng.complex_normal();
                if (s == Scheme::rsma)
                    sol.common_precoder[i] = rng.complex_normal();
            }
            sol.private_precoders *= 0.5;
            sol.common_precoder *= 0.5;
            double prev = evaluate(sol, lb).ee_sum;
            for (int it = 0; it < 8; ++it) {
                sol = sca_iteration(sol, lb, s);
                const auto r = evaluate(sol, lb);
                EXPECT_GE(r.ee_sum, prev - 1e-9);
                EXPECT_TRUE(check_power(sol, lb).ok);
                EXPECT_TRUE(r.common_rate_feasible);
                prev = r.ee_sum;
            }
        }
    }
}

TEST(ScaIteration, OptimumIsAFixedPoint) {
    const auto lb = random_instance(13, 8, 2);
    SolverConfig cfg;
    for (Scheme s : all_schemes) {
        const auto r = optimize(s, lb, cfg);
        const auto next = sca_iteration(r.solution, lb, s, cfg);
        const double after = evaluate(next, lb).ee_sum;
        EXPECT_GE(after, r.objective - 1e-9);
        EXPECT_LT(std::abs(after - r.objective), cfg.rel_tolerance * r.objective);
    }
}

TEST(Oracle, SingleUserNearGoldenSection) {
    const double ee_star = single_user_ee(golden_max(single_user_ee, 0.0, 10.0));
    const auto r = oracle_search(Scheme::sdma, single_user(), 1000000, 3);
    EXPECT_NEAR(r.objective, ee_star, 0.01 * ee_star);
    EXPECT_LE(r.objective, ee_star * (1.0 + 1e-12));
}

TEST(Oracle, SingleSampleIsReproducible) {
    const auto lb = random_instance(14, 2, 2);
    for (Scheme s : all_schemes) {
        const auto a = oracle_search(s, lb, 1, 99);
        const auto b = oracle_search(s, lb, 1, 99);
        EXPECT_EQ(a.objective, b.objective);
        EXPECT_TRUE(a.solution.private_precoders == b.solution.private_precoders);
        EXPECT_TRUE(check_power(a.solution, lb).ok);
        EXPECT_TRUE(a.report.common_rate_feasible);
    }
}

TEST(Oracle, ScaIsCompetitiveOnSmallInstances) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto lb = random_instance(300 + seed, 2, 2);
        for (Scheme s : all_schemes) {
            const double sca = optimize(s, lb, SolverConfig{}).objective;
            const double oracle = oracle_search(s, lb, 100000, seed).objective;
            EXPECT_GE(sca, 0.95 * oracle) << to_string(s) << " seed " << seed;
        }
    }
}

TEST(Engine, StepNeverLosesObjective) {
    const auto lb = random_instance(15, 4, 2);
    for (Scheme s : all_schemes) {
        const detail::ScaEngine engine(s, lb);
        const CMatrix w0 = engine.initial_point(1, 5, 0.3, false);
        const auto step = engine.step(w0, 1.0, 1e-7);
        EXPECT_GE(step.objective, engine.energy_efficiency(w0) - 1e-12);
        EXPECT_LE(step.w.squaredNorm(), lb.power_budget * (1.0 + 1e-9));
    }
}
