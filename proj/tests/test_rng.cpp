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

#include <complex>
#include <set>

#include <gtest/gtest.h>

#include "uavee/rng.hpp"

using uavee::CounterRng;

TEST(Rng, SameKeySameStream) {
    CounterRng a(42), b(42);
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(a(), b());
}

TEST(Rng, CounterAddressesTheStream) {
    CounterRng a(7);
    for (int i = 0; i < 10; ++i)
        a();
    CounterRng b(7, 10);
    EXPECT_EQ(a(), b());
}

TEST(Rng, SubstreamsDoNotCollideAcrossSeeds) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t s = 0; s < 16; ++s)
        for (std::uint64_t k = 0; k < 16; ++k)
            firsts.insert(CounterRng::substream(s, k)());
    EXPECT_EQ(firsts.size(), 256u);
}

TEST(Rng, UniformRange) {
    CounterRng r(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        const double v = r.uniform_open0();
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(Rng, ComplexNormalHasUnitPower) {
    CounterRng r(2024);
    const int n = 200000;
    double power = 0.0;
    std::complex<double> mean{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const auto z = r.complex_normal();
        power += std::norm(z);
        mean += z;
    }
    power /= n;
    mean /= static_cast<double>(n);
    EXPECT_GE(power, 0.98);
    EXPECT_LE(power, 1.02);
    EXPECT_LT(std::abs(mean), 0.01);
}

TEST(Rng, ExponentialMean) {
    CounterRng r(3);
    double s = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
        s += r.exponential();
    EXPECT_NEAR(s / n, 1.0, 0.02);
}
