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

#ifndef UAVEE_CHANNEL_HPP
#define UAVEE_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "uavee/antenna.hpp"
#include "uavee/geometry.hpp"
#include "uavee/rng.hpp"

namespace uavee {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

struct ChannelParams {
    int num_paths = 1;
    double pathloss_exponent = 2.0;
    std::uint64_t seed = 0;
    // Half-width of the uniform AoD spread around the LoS angle, used only
    // when num_paths > 1.
    double aod_spread_deg = 10.0;

    void validate() const {
        if (num_paths < 1)
            throw std::invalid_argument("channel.num_paths must be >= 1");
        if (!(pathloss_exponent > 0.0))
            throw std::invalid_argument("channel.pathloss_exponent must be > 0");
        if (!(aod_spread_deg >= 0.0))
            throw std::invalid_argument("channel.aod_spread_deg must be >= 0");
    }
};

struct ChannelRealization {
    CVector h;                        // length M
    double gain_linear = 1.0;         // element gain G_k
    double path_loss = 1.0;
    double aod_rad = 0.0;             // LoS angle of departure
    CVector path_gains;               // alpha_{k,p}
    std::vector<double> path_aods_rad;

    /// sqrt(G_k) * h_k, the channel as seen after the element pattern.
    [[nodiscard]] CVector effective() const { return std::sqrt(gain_linear) * h; }
    [[nodiscard]] double effective_strength() const { return gain_linear * h.squaredNorm(); }
};

/// ULA steering vector, entry i = exp(-j 2 pi (D/lambda) i cos(theta)), i = 0..m-1.
inline CVector steering_vector(double theta_rad, int m, double spacing_ratio) {
    if (m < 1)
        throw std::invalid_argument("steering_vector: array size must be >= 1");
    CVector a(m);
    const double step = -2.0 * pi * spacing_ratio * std::cos(theta_rad);
    for (int i = 0; i < m; ++i)
        a[i] = std::polar(1.0, step * i);
    return a;
}

inline double path_loss(double los_distance_m, double gamma) noexcept {
    return 1.0 + std::pow(los_distance_m, gamma);
}

/// Deterministic channel from explicit path gains and AoDs:
/// h = sqrt(M) * sum_p alpha_p a(theta_p) / sqrt(PL).
inline ChannelRealization make_channel(const EngagementGeometry& geom, const BsConfig& bs, const ChannelParams& params,
                                       const AntennaConfig& antenna, const CVector& path_gains,
                                       const std::vector<double>& path_aods_rad) {
    if (path_gains.size() != static_cast<Eigen::Index>(path_aods_rad.size()) || path_gains.size() == 0)
        throw std::invalid_argument("make_channel: need one AoD per path gain and at least one path");
    ChannelRealization ch;
    ch.path_loss = path_loss(geom.los_distance_m, params.pathloss_exponent);
    ch.aod_rad = geom.vertical_angle_rad;
    ch.path_gains = path_gains;
    ch.path_aods_rad = path_aods_rad;
    ch.gain_linear = element_gain(geom, antenna).gain_linear;

    const int m = bs.array_size;
    ch.h = CVector::Zero(m);
    for (Eigen::Index p = 0; p < path_gains.size(); ++p)
        ch.h += path_gains[p] * steering_vector(path_aods_rad[p], m, bs.element_spacing_over_wavelength);
    ch.h *= std::sqrt(static_cast<double>(m) / ch.path_loss);
    return ch;
}

/// Draws alpha_{k,p} ~ CN(0, 1). The first path is the geometric LoS; extra
/// paths get AoDs uniform in +-aod_spread_deg around it.
inline ChannelRealization draw_channel(const EngagementGeometry& geom, const BsConfig& bs, const ChannelParams& params,
                                       const AntennaConfig& antenna, CounterRng& rng) {
    params.validate();
    CVector gains(params.num_paths);
    std::vector<double> aods(params.num_paths);
    for (int p = 0; p < params.num_paths; ++p) {
        gains[p] = rng.complex_normal();
        aods[p] = geom.vertical_angle_rad;
        if (p > 0) {
            const double spread = deg_to_rad(params.aod_spread_deg);
            aods[p] += rng.uniform(-spread, spread);
        }
    }
    return make_channel(geom, bs, params, antenna, gains, aods);
}

/// One channel per UAV, UAV k drawing from substream (seed, k).
inline std::vector<ChannelRealization> draw_channels(const BsConfig& bs, const std::vector<UavPlacement>& uavs,
                                                     const ChannelParams& params, const AntennaConfig& antenna) {
    std::vector<ChannelRealization> out;
    out.reserve(uavs.size());
    for (std::size_t k = 0; k < uavs.size(); ++k) {
        auto rng = CounterRng::substream(params.seed, k);
        out.push_back(draw_channel(compute_geometry(bs, uavs[k]), bs, params, antenna, rng));
    }
    return out;
}

} // namespace uavee

#endif // UAVEE_CHANNEL_HPP
