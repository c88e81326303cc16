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

#ifndef UAVEE_GEOMETRY_HPP
#define UAVEE_GEOMETRY_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uavee {

inline constexpr double pi = std::numbers::pi;

constexpr double deg_to_rad(double deg) noexcept { return deg * pi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / pi; }

/// Terrestrial base station carrying a vertical ULA that is mechanically
/// tilted towards the ground.
struct BsConfig {
    double height_m = 10.0;
    double tilt_deg = 12.0;  // downward tilt
    int array_size = 8;
    double element_spacing_over_wavelength = 0.5;

    void validate() const {
        if (!(height_m >= 0.0) || !std::isfinite(height_m))
            throw std::invalid_argument("bs.height_m must be finite and >= 0, got " + std::to_string(height_m));
        if (!(tilt_deg >= 0.0 && tilt_deg < 90.0))
            throw std::invalid_argument("bs.tilt_deg must lie in [0, 90), got " + std::to_string(tilt_deg));
        if (array_size < 1)
            throw std::invalid_argument("bs.array_size must be >= 1, got " + std::to_string(array_size));
        if (!(element_spacing_over_wavelength > 0.0) || !std::isfinite(element_spacing_over_wavelength))
            throw std::invalid_argument("bs.element_spacing_over_wavelength must be > 0");
    }
};

/// UAV position: ground projection (x, y) relative to the BS foot point, plus altitude.
struct UavPlacement {
    double x_m = 0.0;
    double y_m = 0.0;
    double altitude_m = 0.0;

    static UavPlacement from_polar(double ground_distance_m, double azimuth_rad, double altitude_m) {
        return {ground_distance_m * std::cos(azimuth_rad), ground_distance_m * std::sin(azimuth_rad), altitude_m};
    }

    [[nodiscard]] double ground_distance_m() const noexcept { return std::hypot(x_m, y_m); }

    void validate() const {
        if (!std::isfinite(x_m) || !std::isfinite(y_m) || !std::isfinite(altitude_m))
            throw std::invalid_argument("uav coordinates must be finite");
        if (altitude_m < 0.0)
            throw std::invalid_argument("uav.altitude_m must be >= 0, got " + std::to_string(altitude_m));
        if (x_m == 0.0 && y_m == 0.0)
            throw std::invalid_argument("uav ground position (0, 0) is directly above the BS; vertical angle undefined");
    }
};

struct EngagementGeometry {
    double ground_distance_m = 0.0;
    double relative_altitude_m = 0.0;  // UAV altitude minus BS height, may be negative
    double vertical_angle_rad = 0.0;   // measured from zenith; pi/2 at the BS horizon
    double horizontal_angle_rad = 0.0; // azimuth in (-pi, pi]
    double los_distance_m = 0.0;
};

inline EngagementGeometry compute_geometry(const BsConfig& bs, const UavPlacement& uav) {
    uav.validate();
    EngagementGeometry g;
    g.ground_distance_m = uav.ground_distance_m();
    g.relative_altitude_m = uav.altitude_m - bs.height_m;
    g.vertical_angle_rad = pi / 2.0 - std::atan(g.relative_altitude_m / g.ground_distance_m);
    g.horizontal_angle_rad = std::atan2(uav.y_m, uav.x_m);
    g.los_distance_m = std::hypot(g.ground_distance_m, g.relative_altitude_m);
    return g;
}

} // namespace uavee

#endif // UAVEE_GEOMETRY_HPP
