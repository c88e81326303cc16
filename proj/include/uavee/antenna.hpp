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

#ifndef UAVEE_ANTENNA_HPP
#define UAVEE_ANTENNA_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavee/geometry.hpp"

namespace uavee {

/// 3GPP single-element pattern constants (TR 38.901 style). All angles in degrees.
struct AntennaConfig {
    double tilt_deg = 12.0;
    double theta_3db_deg = 65.0;
    double sla_v_db = 30.0;
    double phi_3db_deg = 65.0;
    double a_m_db = 30.0;
    double g_max_dbi = 8.0;

    void validate() const {
        if (!(theta_3db_deg > 0.0) || !(phi_3db_deg > 0.0))
            throw std::invalid_argument("antenna beamwidths must be > 0");
        if (!(sla_v_db > 0.0))
            throw std::invalid_argument("antenna.sla_v_db must be > 0");
        if (!(a_m_db > 0.0))
            throw std::invalid_argument("antenna.a_m_db must be > 0");
        if (!std::isfinite(g_max_dbi) || !std::isfinite(tilt_deg))
            throw std::invalid_argument("antenna.g_max_dbi and antenna.tilt_deg must be finite");
    }
};

/// Vertical cut in dB, in [-SLA_V, 0]. Boresight sits at theta = 90 + tilt.
inline double vertical_attenuation_db(double theta_deg, const AntennaConfig& cfg) noexcept {
    const double off = (theta_deg - 90.0 - cfg.tilt_deg) / cfg.theta_3db_deg;
    return -std::min(12.0 * off * off, cfg.sla_v_db);
}

/// Horizontal cut in dB, in [-A_m, 0].
inline double horizontal_attenuation_db(double phi_deg, const AntennaConfig& cfg) noexcept {
    const double off = phi_deg / cfg.phi_3db_deg;
    return -std::min(12.0 * off * off, cfg.a_m_db);
}

struct ElementGain {
    double gain_db = 0.0;
    double gain_linear = 1.0;
};

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) noexcept { return 10.0 * std::log10(lin); }

// The combined deficit is clipped at A_m again even though both cuts are
// already clipped individually.
inline ElementGain element_gain(double theta_deg, double phi_deg, const AntennaConfig& cfg) noexcept {
    const double deficit = -(vertical_attenuation_db(theta_deg, cfg) + horizontal_attenuation_db(phi_deg, cfg));
    ElementGain g;
    g.gain_db = cfg.g_max_dbi - std::min(deficit, cfg.a_m_db);
    g.gain_linear = db_to_linear(g.gain_db);
    return g;
}

/// Element gain G_k seen by a UAV at the given engagement geometry.
inline ElementGain element_gain(const EngagementGeometry& geom, const AntennaConfig& cfg) noexcept {
    return element_gain(rad_to_deg(geom.vertical_angle_rad), rad_to_deg(geom.horizontal_angle_rad), cfg);
}

} // namespace uavee

#endif // UAVEE_ANTENNA_HPP
