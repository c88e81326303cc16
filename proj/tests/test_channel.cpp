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
#include <complex>

#include <gtest/gtest.h>

#include "uavee/channel.hpp"

using namespace uavee;

namespace {

EngagementGeometry fig2_uav1() { return compute_geometry(BsConfig{}, UavPlacement::from_polar(25.0, pi / 10.0, 24.4)); }

} // namespace

TEST(Steering, FirstEntryIsOne) {
    for (double th : {0.1, 1.0, 2.5})
        EXPECT_EQ(steering_vector(th, 6, 0.5)[0], cplx(1.0, 0.0));
}

TEST(Steering, BroadsideIsAllOnes) {
    const CVector a = steering_vector(pi / 2.0, 5, 0.5);
    for (int i = 0; i < 5; ++i)
        EXPECT_NEAR(std::abs(a[i] - cplx(1.0, 0.0)), 0.0, 1e-15);
}

TEST(Steering, QuarterTurnPhaseStep) {
    const CVector a = steering_vector(pi / 3.0, 4, 0.5);
    const cplx expected[] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(std::abs(a[i] - expected[i]), 0.0, 1e-14) << "entry " << i;
}

TEST(Steering, UnitModulusEntries) {
    const CVector a = steering_vector(0.7, 16, 0.5);
    for (int i = 0; i < 16; ++i)
        EXPECT_NEAR(std::abs(a[i]), 1.0, 1e-15);
    EXPECT_NEAR(a.squaredNorm(), 16.0, 1e-12);
}

TEST(Steering, RejectsEmptyArray) { EXPECT_THROW(steering_vector(1.0, 0, 0.5), std::invalid_argument); }

TEST(PathLoss, Values) {
    EXPECT_EQ(path_loss(0.0, 2.0), 1.0);
    EXPECT_DOUBLE_EQ(path_loss(10.0, 2.0), 101.0);
    EXPECT_NEAR(path_loss(fig2_uav1().los_distance_m, 2.0), 833.36, 1e-9);
}

TEST(PathLoss, DoublingDistanceQuadruplesExcess) {
    for (double x : {0.5, 3.0, 28.85, 100.0})
        EXPECT_NEAR(path_loss(2.0 * x, 2.0) - 1.0, 4.0 * (path_loss(x, 2.0) - 1.0), 1e-12 * x * x);
}

TEST(Channel, UnitGainLosNorm) {
    const auto g = fig2_uav1();
    CVector alpha(1);
    alpha[0] = 1.0;
    const auto ch = make_channel(g, BsConfig{}, ChannelParams{}, AntennaConfig{}, alpha, {g.vertical_angle_rad});
    EXPECT_NEAR(ch.h.squaredNorm(), 64.0 / 833.36, 1e-12);
    EXPECT_NEAR(ch.h.squaredNorm(), 0.0768, 1e-4);
    EXPECT_NEAR(ch.path_loss, 833.36, 1e-9);
    EXPECT_DOUBLE_EQ(ch.gain_linear, element_gain(g, AntennaConfig{}).gain_linear);
}

TEST(Channel, UnitPathLossGivesArraySize) {
    // Zero LoS distance makes PL = 1.
    EngagementGeometry g;
    g.vertical_angle_rad = 1.1;
    g.los_distance_m = 0.0;
    CVector alpha(1);
    alpha[0] = 1.0;
    const auto ch = make_channel(g, BsConfig{}, ChannelParams{}, AntennaConfig{}, alpha, {1.1});
    EXPECT_NEAR(ch.h.squaredNorm(), 8.0 * 8.0, 1e-12);
}

TEST(Channel, SinglePathNormTracksAlpha) {
    const auto g = fig2_uav1();
    auto rng = CounterRng::substream(9, 0);
    const auto ch = draw_channel(g, BsConfig{}, ChannelParams{}, AntennaConfig{}, rng);
    const double expected = 64.0 * std::norm(ch.path_gains[0]) / ch.path_loss;
    EXPECT_NEAR(ch.h.squaredNorm(), expected, 1e-9 * expected);
}

TEST(Channel, SinglePathIsAlignedWithSteeringVector) {
    const auto g = fig2_uav1();
    auto rng = CounterRng::substream(11, 0);
    const auto ch = draw_channel(g, BsConfig{}, ChannelParams{}, AntennaConfig{}, rng);
    const CVector a = steering_vector(g.vertical_angle_rad, 8, 0.5);
    const double lhs = std::norm(ch.h.dot(a));
    EXPECT_NEAR(lhs, 8.0 * ch.h.squaredNorm(), 1e-10 * lhs);
}

TEST(Channel, SameSeedSameRealization) {
    const std::vector<UavPlacement> uavs{UavPlacement::from_polar(25.0, 0.3, 24.4),
                                         UavPlacement::from_polar(30.0, 1.2, 15.3)};
    ChannelParams p;
    p.seed = 1234;
    const auto a = draw_channels(BsConfig{}, uavs, p, AntennaConfig{});
    const auto b = draw_channels(BsConfig{}, uavs, p, AntennaConfig{});
    for (std::size_t k = 0; k < a.size(); ++k)
        EXPECT_TRUE(a[k].h == b[k].h);
    p.seed = 1235;
    const auto c = draw_channels(BsConfig{}, uavs, p, AntennaConfig{});
    EXPECT_FALSE(a[0].h == c[0].h);
}

TEST(Channel, AddingUavsKeepsEarlierDraws) {
    std::vector<UavPlacement> uavs{UavPlacement::from_polar(25.0, 0.3, 24.4)};
    ChannelParams p;
    p.seed = 5;
    const auto one = draw_channels(BsConfig{}, uavs, p, AntennaConfig{});
    uavs.push_back(UavPlacement::from_polar(40.0, 2.0, 30.0));
    const auto two = draw_channels(BsConfig{}, uavs, p, AntennaConfig{});
    EXPECT_TRUE(one[0].h == two[0].h);
}

TEST(Channel, PathGainsHaveUnitMeanPower) {
    const auto g = fig2_uav1();
    ChannelParams p;
    auto rng = CounterRng::substream(77, 0);
    double s = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
        s += std::norm(draw_channel(g, BsConfig{}, p, AntennaConfig{}, rng).path_gains[0]);
    EXPECT_GE(s / n, 0.98);
    EXPECT_LE(s / n, 1.02);
}

TEST(Channel, MultipathSpreadsAroundLos) {
    const auto g = fig2_uav1();
    ChannelParams p;
    p.num_paths = 4;
    p.aod_spread_deg = 10.0;
    auto rng = CounterRng::substream(3, 0);
    const auto ch = draw_channel(g, BsConfig{}, p, AntennaConfig{}, rng);
    ASSERT_EQ(ch.path_gains.size(), 4);
    EXPECT_EQ(ch.path_aods_rad[0], g.vertical_angle_rad);
    for (double aod : ch.path_aods_rad)
        EXPECT_LE(std::abs(aod - g.vertical_angle_rad), deg_to_rad(10.0) + 1e-15);
    CVector sum = CVector::Zero(8);
    for (int i = 0; i < 4; ++i)
        sum += ch.path_gains[i] * steering_vector(ch.path_aods_rad[i], 8, 0.5);
    EXPECT_NEAR((ch.h - sum * std::sqrt(8.0 / ch.path_loss)).norm(), 0.0, 1e-14);
}

TEST(Channel, ParamsValidation) {
    ChannelParams p;
    p.num_paths = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.pathloss_exponent = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}
