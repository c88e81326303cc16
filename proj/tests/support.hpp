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

// Shared fixtures for the test programs.

#ifndef UAVEE_TESTS_SUPPORT_HPP
#define UAVEE_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "uavee/uavee.hpp"

namespace uavee::testing {

/// Link budget from raw channel vectors, G_k = 1 unless given.
inline LinkBudget raw_budget(const std::vector<CVector>& hs, double noise, double p_t, double p_bs,
                             std::vector<double> weights = {}, std::vector<double> gains = {}) {
    LinkBudget lb;
    for (std::size_t k = 0; k < hs.size(); ++k) {
        ChannelRealization ch;
        ch.h = hs[k];
        ch.gain_linear = gains.empty() ? 1.0 : gains[k];
        lb.channels.push_back(ch);
    }
    lb.noise_power = noise;
    lb.power_budget = p_t;
    lb.bs_static_power = p_bs;
    lb.weights = weights.empty() ? std::vector<double>(hs.size(), 1.0) : std::move(weights);
    return lb;
}

/// Seeded random instance: K UAVs scattered around the BS, Table-I powers.
inline LinkBudget random_instance(std::uint64_t seed, int m, int k_users, double noise = 1e-3) {
    CounterRng rng(mix64(seed ^ 0x5eedULL));
    BsConfig bs;
    bs.array_size = m;
    AntennaConfig ant;
    std::vector<UavPlacement> uavs;
    for (int k = 0; k < k_users; ++k)
        uavs.push_back(UavPlacement::from_polar(rng.uniform(15.0, 60.0), rng.uniform(-pi, pi), rng.uniform(0.0, 60.0)));
    ChannelParams params;
    params.seed = seed;
    LinkBudget lb;
    lb.channels = draw_channels(bs, uavs, params, ant);
    lb.noise_power = noise;
    lb.power_budget = 10.0;
    lb.bs_static_power = 10.0;
    for (int k = 0; k < k_users; ++k)
        lb.weights.push_back(std::pow(10.0, rng.uniform(-1.0, 1.0)));
    return lb;
}

/// Golden-section maximizer of a unimodal f on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace uavee::testing

#endif // UAVEE_TESTS_SUPPORT_HPP
