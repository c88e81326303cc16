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

#ifndef UAVEE_RNG_HPP
#define UAVEE_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace uavee {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: output n is a pure function of (key, n), so a
/// stream can be reproduced or split without carrying hidden state.
/// Normal deviates use Box-Muller so results do not depend on the standard
/// library's distribution implementations.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit constexpr CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
        : key_(key), counter_(counter) {}

    /// Independent substream, e.g. one per UAV or per restart. The parent key
    /// is hashed before the index is folded in so that (s, i) and (s', i')
    /// pairs with s ^ i == s' ^ i' still land on different streams.
    [[nodiscard]] static constexpr CounterRng substream(std::uint64_t seed, std::uint64_t index) noexcept {
        return CounterRng(mix64(seed) ^ index);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept { return mix64(key_ ^ mix64(counter_++)); }

    [[nodiscard]] constexpr std::uint64_t key() const noexcept { return key_; }
    [[nodiscard]] constexpr std::uint64_t counter() const noexcept { return counter_; }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1], safe for log().
    double uniform_open0() noexcept { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open0()));
        const double a = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Standard circularly-symmetric complex Gaussian, E|z|^2 = 1.
    std::complex<double> complex_normal() noexcept {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    double exponential() noexcept { return -std::log(uniform_open0()); }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace uavee

#endif // UAVEE_RNG_HPP
