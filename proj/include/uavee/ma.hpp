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

#ifndef UAVEE_MA_HPP
#define UAVEE_MA_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavee/channel.hpp"

namespace uavee {

enum class Scheme { rsma, noma, sdma };

constexpr std::string_view to_string(Scheme s) noexcept {
    switch (s) {
    case Scheme::rsma: return "rsma";
    case Scheme::noma: return "noma";
    case Scheme::sdma: return "sdma";
    }
    return "?";
}

inline std::optional<Scheme> parse_scheme(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "rsma") return Scheme::rsma;
    if (lower == "noma") return Scheme::noma;
    if (lower == "sdma") return Scheme::sdma;
    return std::nullopt;
}

/// Precoders W = [w_1 .. w_K] plus the RSMA common stream (w_c, r^c).
/// For NOMA and SDMA the common part stays all-zero.
struct PrecoderSolution {
    CMatrix private_precoders; // M x K
    CVector common_precoder;   // M
    RVector common_rates;      // K, bits/s/Hz
    Scheme scheme = Scheme::rsma;

    static PrecoderSolution zeros(Scheme scheme, int m, int k) {
        return {CMatrix::Zero(m, k), CVector::Zero(m), RVector::Zero(k), scheme};
    }

    [[nodiscard]] int num_users() const noexcept { return static_cast<int>(private_precoders.cols()); }
    [[nodiscard]] int num_antennas() const noexcept { return static_cast<int>(private_precoders.rows()); }

    /// tr(W W^H) including the common column.
    [[nodiscard]] double transmit_power() const noexcept {
        return private_precoders.squaredNorm() + common_precoder.squaredNorm();
    }
};

struct LinkBudget {
    std::vector<ChannelRealization> channels;
    double noise_power = 1.0;      // N_0
    double power_budget = 10.0;    // P_t, W
    double bs_static_power = 10.0; // P_BS, W
    std::vector<double> weights;   // beta_k
    // Decode position -> UAV index. Position 0 is allocated the least power
    // and cancels every other message before decoding its own.
    std::vector<int> noma_order;

    [[nodiscard]] int num_users() const noexcept { return static_cast<int>(channels.size()); }
    [[nodiscard]] int num_antennas() const noexcept {
        return channels.empty() ? 0 : static_cast<int>(channels.front().h.size());
    }

    void validate() const {
        if (channels.empty())
            throw std::invalid_argument("link budget needs at least one channel");
        for (const auto& ch : channels)
            if (ch.h.size() != channels.front().h.size())
                throw std::invalid_argument("all channels must have the same array size");
        if (!(noise_power > 0.0))
            throw std::invalid_argument("noise_power must be > 0");
        if (!(power_budget >= 0.0) || !std::isfinite(power_budget))
            throw std::invalid_argument("power_budget must be finite and >= 0");
        if (!(bs_static_power >= 0.0) || !std::isfinite(bs_static_power))
            throw std::invalid_argument("bs_static_power must be finite and >= 0");
        if (weights.size() != channels.size())
            throw std::invalid_argument("need exactly one weight per UAV");
        for (double b : weights)
            if (!(b > 0.0) || !std::isfinite(b))
                throw std::invalid_argument("weights must be finite and > 0");
        if (!noma_order.empty()) {
            std::vector<int> sorted = noma_order;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 0; i < sorted.size(); ++i)
                if (sorted[i] != static_cast<int>(i) || sorted.size() != channels.size())
                    throw std::invalid_argument("noma_order must be a permutation of the UAV indices");
        }
    }
};

/// Strongest effective channel G_k ||h_k||^2 first (it performs the most SIC),
/// ties broken by UAV index.
inline std::vector<int> default_noma_order(const std::vector<ChannelRealization>& channels) {
    std::vector<int> order(channels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return channels[a].effective_strength() > channels[b].effective_strength();
    });
    return order;
}

struct RateReport {
    RVector common_sinrs;      // SINR^c_k
    RVector common_rate_caps;  // R^c_k
    double common_rate_min = 0.0;
    RVector private_sinrs;     // SINR^p_k (RSMA/SDMA); weakest link of the SIC chain (NOMA)
    RVector common_rates;      // r^c_k share credited to UAV k
    RVector private_rates;     // R^p_k
    RVector rates;             // total per-UAV rate
    RVector ee_per_uav;
    double ee_sum = 0.0;
    double transmit_power = 0.0;
    bool common_rate_feasible = true;
};

struct EnergyEfficiency {
    RVector per_uav;
    double sum = 0.0;
};

/// EE_k = beta_k R_k / (tr(W W^H) + P_BS). Uses the power actually spent, not P_t.
inline EnergyEfficiency energy_efficiency(const RVector& rates, const PrecoderSolution& sol, const LinkBudget& lb) {
    const double denom = sol.transmit_power() + lb.bs_static_power;
    EnergyEfficiency ee;
    ee.per_uav = RVector::Zero(rates.size());
    if (denom <= 0.0)
        return ee;
    for (Eigen::Index k = 0; k < rates.size(); ++k)
        ee.per_uav[k] = lb.weights[k] * rates[k] / denom;
    ee.sum = ee.per_uav.sum();
    return ee;
}

struct PowerCheck {
    bool ok = true;
    double slack = 0.0; // P_t - tr(W W^H)
};

inline PowerCheck check_power(const PrecoderSolution& sol, const LinkBudget& lb) noexcept {
    const double used = sol.transmit_power();
    return {used <= lb.power_budget + 1e-9 * lb.power_budget, lb.power_budget - used};
}

namespace detail {

// rx(k, l) = G_k |h_k^H w_l|^2 for private columns l; rx_common(k) for w_c.
struct ReceivedPowers {
    Eigen::MatrixXd rx;
    RVector rx_common;
};

inline ReceivedPowers received_powers(const PrecoderSolution& sol, const LinkBudget& lb) {
    const int k_users = lb.num_users();
    ReceivedPowers p{Eigen::MatrixXd(k_users, sol.num_users()), RVector(k_users)};
    for (int k = 0; k < k_users; ++k) {
        const auto& ch = lb.channels[k];
        const RVector row = (ch.h.adjoint() * sol.private_precoders).cwiseAbs2().transpose();
        p.rx.row(k) = ch.gain_linear * row.transpose();
        p.rx_common[k] = ch.gain_linear * std::norm(ch.h.dot(sol.common_precoder));
    }
    return p;
}

inline void check_shapes(const PrecoderSolution& sol, const LinkBudget& lb) {
    if (sol.num_users() != lb.num_users() || sol.num_antennas() != lb.num_antennas())
        throw std::invalid_argument("precoder shape does not match the link budget");
    if (sol.common_precoder.size() != sol.num_antennas() || sol.common_rates.size() != sol.num_users())
        throw std::invalid_argument("common precoder / common rate vector has the wrong length");
}

inline void finish(RateReport& r, const PrecoderSolution& sol, const LinkBudget& lb) {
    r.rates = r.common_rates + r.private_rates;
    auto ee = energy_efficiency(r.rates, sol, lb);
    r.ee_per_uav = std::move(ee.per_uav);
    r.ee_sum = ee.sum;
    r.transmit_power = sol.transmit_power();
}

// Common layer optional so SDMA can share the code path bit-for-bit.
inline RateReport split_rates(const PrecoderSolution& sol, const LinkBudget& lb, bool with_common) {
    check_shapes(sol, lb);
    const int k_users = lb.num_users();
    const auto p = received_powers(sol, lb);
    RateReport r;
    r.common_sinrs = RVector::Zero(k_users);
    r.common_rate_caps = RVector::Zero(k_users);
    r.private_sinrs = RVector::Zero(k_users);
    r.private_rates = RVector::Zero(k_users);
    r.common_rates = with_common ? RVector(sol.common_rates) : RVector::Zero(k_users);
    for (int k = 0; k < k_users; ++k) {
        const double all_private = p.rx.row(k).sum();
        if (with_common) {
            r.common_sinrs[k] = p.rx_common[k] / (all_private + lb.noise_power);
            r.common_rate_caps[k] = std::log2(1.0 + r.common_sinrs[k]);
        }
        double interference = 0.0;
        for (int l = 0; l < k_users; ++l)
            if (l != k)
                interference += p.rx(k, l);
        r.private_sinrs[k] = p.rx(k, k) / (interference + lb.noise_power);
        r.private_rates[k] = std::log2(1.0 + r.private_sinrs[k]);
    }
    r.common_rate_min = with_common ? r.common_rate_caps.minCoeff() : 0.0;
    const double tol = 1e-9 * std::max(1.0, r.common_rate_min);
    r.common_rate_feasible = (r.common_rates.array() >= -tol).all() && r.common_rates.sum() <= r.common_rate_min + tol;
    finish(r, sol, lb);
    return r;
}

} // namespace detail

/// RSMA: every UAV decodes the common stream first, treating all private
/// streams as noise, then its own private stream.
inline RateReport rsma_rates(const PrecoderSolution& sol, const LinkBudget& lb) {
    if (sol.scheme != Scheme::rsma)
        throw std::invalid_argument("rsma_rates called on a non-RSMA solution");
    return detail::split_rates(sol, lb, true);
}

/// SDMA: RSMA with the common layer switched off.
inline RateReport sdma_rates(const PrecoderSolution& sol, const LinkBudget& lb) {
    if (sol.scheme != Scheme::sdma)
        throw std::invalid_argument("sdma_rates called on a non-SDMA solution");
    return detail::split_rates(sol, lb, false);
}

/// NOMA with SIC along lb.noma_order. The message at decode position m is
/// decoded by every position j <= m while the messages at positions < m act
/// as noise; its rate is limited by the weakest of those decoders.
inline RateReport noma_rates(const PrecoderSolution& sol, const LinkBudget& lb) {
    if (sol.scheme != Scheme::noma)
        throw std::invalid_argument("noma_rates called on a non-NOMA solution");
    detail::check_shapes(sol, lb);
    const int k_users = lb.num_users();
    const std::vector<int> order = lb.noma_order.empty() ? default_noma_order(lb.channels) : lb.noma_order;
    if (static_cast<int>(order.size()) != k_users)
        throw std::invalid_argument("noma_order has the wrong length");

    const auto p = detail::received_powers(sol, lb);
    RateReport r;
    r.common_sinrs = RVector::Zero(k_users);
    r.common_rate_caps = RVector::Zero(k_users);
    r.common_rates = RVector::Zero(k_users);
    r.private_sinrs = RVector::Zero(k_users);
    r.private_rates = RVector::Zero(k_users);
    for (int m = 0; m < k_users; ++m) {
        const int target = order[m];
        double weakest = std::numeric_limits<double>::infinity();
        for (int j = 0; j <= m; ++j) {
            const int decoder = order[j];
            double interference = 0.0;
            for (int l = 0; l < m; ++l)
                interference += p.rx(decoder, order[l]);
            weakest = std::min(weakest, p.rx(decoder, target) / (interference + lb.noise_power));
        }
        r.private_sinrs[target] = weakest;
        r.private_rates[target] = std::log2(1.0 + weakest);
    }
    detail::finish(r, sol, lb);
    return r;
}

inline RateReport evaluate(const PrecoderSolution& sol, const LinkBudget& lb) {
    switch (sol.scheme) {
    case Scheme::rsma: return rsma_rates(sol, lb);
    case Scheme::noma: return noma_rates(sol, lb);
    case Scheme::sdma: return sdma_rates(sol, lb);
    }
    throw std::invalid_argument("unknown scheme");
}

/// Common-rate split that maximizes sum_k beta_k r^c_k subject to
/// sum_k r^c_k <= total: everything goes to the largest weight (lowest index on ties).
inline RVector allocate_common_rate(double total, const std::vector<double>& weights) {
    RVector r = RVector::Zero(static_cast<Eigen::Index>(weights.size()));
    if (weights.empty())
        return r;
    const auto best = std::max_element(weights.begin(), weights.end()) - weights.begin();
    r[best] = std::max(0.0, total);
    return r;
}

} // namespace uavee

#endif // UAVEE_MA_HPP
