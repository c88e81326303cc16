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

#ifndef UAVEE_EXPERIMENTS_CONFIG_HPP
#define UAVEE_EXPERIMENTS_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavee/antenna.hpp"
#include "uavee/channel.hpp"
#include "uavee/experiments/toml_lite.hpp"
#include "uavee/geometry.hpp"
#include "uavee/ma.hpp"
#include "uavee/optimizer.hpp"

namespace uavee {

/// Raised for malformed or out-of-range scenario settings. The message
/// names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepKind { none, weight_eta, uav2_altitude };

constexpr std::string_view to_string(SweepKind k) noexcept {
    switch (k) {
    case SweepKind::none: return "none";
    case SweepKind::weight_eta: return "weight_eta";
    case SweepKind::uav2_altitude: return "uav2_altitude";
    }
    return "?";
}

inline std::optional<SweepKind> parse_sweep_kind(std::string_view s) {
    if (s == "none") return SweepKind::none;
    if (s == "weight_eta") return SweepKind::weight_eta;
    if (s == "uav2_altitude") return SweepKind::uav2_altitude;
    return std::nullopt;
}

inline double dbm_to_watt(double dbm) noexcept { return 1e-3 * std::pow(10.0, dbm / 10.0); }

struct PowerBudget {
    double p_t_w = 10.0;
    double p_bs_w = 10.0;
    double noise_power_w = 1e-3;
};

struct MonteCarlo {
    int num_seeds = 100;
    std::uint64_t base_seed = 0;
};

struct Sweep {
    SweepKind kind = SweepKind::none;
    std::vector<double> grid;
};

struct ScenarioConfig {
    std::string scenario_id = "custom";
    BsConfig bs;
    std::vector<UavPlacement> uavs;
    AntennaConfig antenna;
    ChannelParams channel;
    PowerBudget budget;
    std::vector<double> weights;       // beta_k; a weight_eta sweep overrides beta_1 and beta_2
    std::vector<int> noma_order;       // 0-based decode order, empty = by channel strength
    std::vector<Scheme> schemes{Scheme::rsma, Scheme::noma};
    SolverConfig solver;
    MonteCarlo monte_carlo;
    Sweep sweep;
    int workers = 0;                   // 0 = one per hardware thread

    [[nodiscard]] int num_uavs() const noexcept { return static_cast<int>(uavs.size()); }

    /// Sweep values, or a single placeholder point when there is no sweep.
    [[nodiscard]] std::vector<double> sweep_points() const {
        return sweep.kind == SweepKind::none ? std::vector<double>{0.0} : sweep.grid;
    }

    void validate() const;
};

namespace detail {

[[noreturn]] inline void config_fail(const std::string& field, const std::string& what) {
    throw ConfigError(field + ": " + what);
}

template <class F>
void rethrow_as(const std::string& field, F&& f) {
    try {
        f();
    } catch (const std::invalid_argument& e) {
        config_fail(field, e.what());
    }
}

} // namespace detail

inline void ScenarioConfig::validate() const {
    if (scenario_id.empty() || scenario_id.find_first_of(",\"\n\r") != std::string::npos)
        detail::config_fail("scenario_id", "must be non-empty and free of commas, quotes and newlines");
    detail::rethrow_as("bs", [&] { bs.validate(); });
    if (uavs.empty())
        detail::config_fail("uav", "at least one UAV is required");
    for (std::size_t k = 0; k < uavs.size(); ++k)
        detail::rethrow_as("uav[" + std::to_string(k + 1) + "]", [&] { uavs[k].validate(); });
    detail::rethrow_as("antenna", [&] { antenna.validate(); });
    detail::rethrow_as("channel", [&] { channel.validate(); });
    detail::rethrow_as("solver", [&] { solver.validate(); });

    auto nonneg = [](const char* field, double v) {
        if (!(v >= 0.0) || !std::isfinite(v))
            detail::config_fail(field, "must be finite and >= 0");
    };
    nonneg("budget.p_t", budget.p_t_w);
    nonneg("budget.p_bs", budget.p_bs_w);
    if (!(budget.noise_power_w > 0.0) || !std::isfinite(budget.noise_power_w))
        detail::config_fail("budget.noise_power", "must be finite and > 0");

    if (weights.size() != uavs.size())
        detail::config_fail("weights.beta", "need one weight per UAV (" + std::to_string(uavs.size()) + "), got " +
                                                std::to_string(weights.size()));
    for (double b : weights)
        if (!(b > 0.0) || !std::isfinite(b))
            detail::config_fail("weights.beta", "weights must be finite and > 0");

    if (!noma_order.empty()) {
        std::set<int> seen(noma_order.begin(), noma_order.end());
        if (noma_order.size() != uavs.size() || seen.size() != uavs.size() || *seen.begin() != 0 ||
            *seen.rbegin() != num_uavs() - 1)
            detail::config_fail("noma.order", "must be a permutation of 1.." + std::to_string(uavs.size()));
    }

    if (schemes.empty())
        detail::config_fail("schemes", "at least one scheme is required");
    if (std::set<Scheme>(schemes.begin(), schemes.end()).size() != schemes.size())
        detail::config_fail("schemes", "duplicate scheme");

    if (monte_carlo.num_seeds < 1)
        detail::config_fail("monte_carlo.num_seeds", "must be >= 1");
    if (workers < 0)
        detail::config_fail("workers", "must be >= 0");

    if (sweep.kind != SweepKind::none) {
        if (sweep.grid.empty())
            detail::config_fail("sweep.grid", "must not be empty");
        for (double v : sweep.grid)
            if (!std::isfinite(v))
                detail::config_fail("sweep.grid", "values must be finite");
        if (sweep.kind == SweepKind::weight_eta && uavs.size() < 2)
            detail::config_fail("sweep.kind", "weight_eta needs at least two UAVs");
        if (sweep.kind == SweepKind::uav2_altitude) {
            if (uavs.size() < 2)
                detail::config_fail("sweep.kind", "uav2_altitude needs at least two UAVs");
            for (double v : sweep.grid)
                if (v < 0.0)
                    detail::config_fail("sweep.grid", "altitudes must be >= 0");
        }
    }
}

/// n points evenly spaced over [lo, hi], both ends included.
inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1)
        throw std::invalid_argument("linspace: need at least one point");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig2", "fig3_4", "fig6_7"};
    return names;
}

/// Built-in scenarios. fig2 sweeps beta_2 = 10^eta; fig3_4 and fig6_7 sweep
/// the altitude of UAV 2 over 0..60 m with equal weights.
inline ScenarioConfig preset(std::string_view name) {
    ScenarioConfig c;
    c.scenario_id = std::string(name);
    c.weights = {1.0, 1.0};
    if (name == "fig2" || name == "fig3_4") {
        c.uavs = {UavPlacement::from_polar(25.0, pi / 10.0, 24.4), UavPlacement::from_polar(30.0, 2.0 * pi / 5.0, 15.3)};
    } else if (name == "fig6_7") {
        c.uavs = {UavPlacement::from_polar(20.0, pi / 10.0, 14.4), UavPlacement::from_polar(50.0, 2.0 * pi / 5.0, 15.3)};
    } else {
        throw ConfigError("preset: unknown preset '" + std::string(name) + "' (expected fig2, fig3_4 or fig6_7)");
    }
    if (name == "fig2") {
        c.sweep = {SweepKind::weight_eta, linspace(-2.0, 2.0, 41)};
    } else {
        c.sweep = {SweepKind::uav2_altitude, linspace(0.0, 60.0, 13)};
    }
    return c;
}

namespace detail {

class TableReader {
public:
    TableReader(const toml_lite::Table& t, std::string prefix) : t_(t), prefix_(std::move(prefix)) {}

    // Rejects keys that no accessor has asked for.
    void finish() const {
        for (const auto& [key, v] : t_.entries)
            if (!used_.contains(key))
                fail_at(key, v.line, "unknown key");
    }

    [[nodiscard]] bool has(const std::string& key) const { return t_.entries.contains(key); }

    std::optional<double> number(const std::string& key) {
        const auto* v = get(key);
        if (!v)
            return std::nullopt;
        if (!v->is_number())
            fail_at(key, v->line, "expected a number");
        return std::get<double>(v->data);
    }

    std::optional<long long> integer(const std::string& key, double lo, double hi) {
        const auto* v = get(key);
        if (!v)
            return std::nullopt;
        if (!v->is_number())
            fail_at(key, v->line, "expected an integer");
        const double d = std::get<double>(v->data);
        if (d != std::floor(d) || d < lo || d > hi)
            fail_at(key, v->line, "expected an integer in [" + fmt(lo) + ", " + fmt(hi) + "]");
        return static_cast<long long>(d);
    }

    std::optional<std::string> string(const std::string& key) {
        const auto* v = get(key);
        if (!v)
            return std::nullopt;
        if (!v->is_string())
            fail_at(key, v->line, "expected a string");
        return std::get<std::string>(v->data);
    }

    std::optional<std::vector<double>> numbers(const std::string& key) {
        const auto* v = get(key);
        if (!v)
            return std::nullopt;
        if (!v->is_array())
            fail_at(key, v->line, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : std::get<toml_lite::Array>(v->data)) {
            if (!e.is_number())
                fail_at(key, v->line, "expected an array of numbers");
            out.push_back(std::get<double>(e.data));
        }
        return out;
    }

    std::optional<std::vector<std::string>> strings(const std::string& key) {
        const auto* v = get(key);
        if (!v)
            return std::nullopt;
        std::vector<std::string> out;
        if (v->is_string()) {
            out.push_back(std::get<std::string>(v->data));
            return out;
        }
        if (!v->is_array())
            fail_at(key, v->line, "expected an array of strings");
        for (const auto& e : std::get<toml_lite::Array>(v->data)) {
            if (!e.is_string())
                fail_at(key, v->line, "expected an array of strings");
            out.push_back(std::get<std::string>(e.data));
        }
        return out;
    }

    [[noreturn]] void fail_at(const std::string& key, int line, const std::string& what) const {
        config_fail(field(key) + " (line " + std::to_string(line) + ")", what);
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        const auto it = t_.entries.find(key);
        fail_at(key, it == t_.entries.end() ? t_.line : it->second.line, what);
    }

    [[nodiscard]] std::string field(const std::string& key) const {
        return prefix_.empty() ? key : prefix_ + "." + key;
    }

private:
    const toml_lite::Value* get(const std::string& key) {
        const auto it = t_.entries.find(key);
        if (it == t_.entries.end())
            return nullptr;
        used_.insert(key);
        return &it->second;
    }

    static std::string fmt(double d) {
        std::ostringstream os;
        os << d;
        return os.str();
    }

    const toml_lite::Table& t_;
    std::string prefix_;
    std::set<std::string> used_;
};

template <class T>
void assign(T& dst, const std::optional<T>& v) {
    if (v)
        dst = *v;
}

// Accepts exactly one of key_w / key_dbm.
inline void read_power(TableReader& r, const std::string& stem, double& watts) {
    const bool w = r.has(stem + "_w");
    const bool dbm = r.has(stem + "_dbm");
    if (w && dbm)
        r.fail(stem + "_dbm", "give either " + stem + "_w or " + stem + "_dbm, not both");
    if (w)
        watts = *r.number(stem + "_w");
    if (dbm)
        watts = dbm_to_watt(*r.number(stem + "_dbm"));
}

inline UavPlacement read_uav(TableReader& r) {
    UavPlacement u;
    const bool polar = r.has("ground_distance_m") || r.has("azimuth_rad") || r.has("azimuth_deg");
    const bool cart = r.has("x_m") || r.has("y_m");
    if (polar && cart)
        r.fail("x_m", "give either ground_distance_m + azimuth or x_m + y_m");
    if (!r.has("altitude_m"))
        r.fail("altitude_m", "missing");
    if (polar) {
        if (!r.has("ground_distance_m"))
            r.fail("ground_distance_m", "missing");
        if (r.has("azimuth_rad") == r.has("azimuth_deg"))
            r.fail("azimuth_rad", "give exactly one of azimuth_rad or azimuth_deg");
        const double d = *r.number("ground_distance_m");
        if (!(d > 0.0))
            r.fail("ground_distance_m", "must be > 0");
        const double az = r.has("azimuth_rad") ? *r.number("azimuth_rad") : deg_to_rad(*r.number("azimuth_deg"));
        u = UavPlacement::from_polar(d, az, *r.number("altitude_m"));
    } else if (cart) {
        if (!r.has("x_m") || !r.has("y_m"))
            r.fail("x_m", "give both x_m and y_m");
        u = {*r.number("x_m"), *r.number("y_m"), *r.number("altitude_m")};
    } else {
        r.fail("ground_distance_m", "missing UAV position");
    }
    return u;
}

} // namespace detail

/// Applies a parsed scenario file on top of `base`. Keys that are absent
/// keep the base value; unknown keys and type mismatches are errors.
inline ScenarioConfig apply_document(const toml_lite::Document& doc, ScenarioConfig c) {
    using detail::assign;
    using detail::TableReader;
    constexpr double max_exact = 9007199254740992.0; // 2^53

    for (const auto& [name, idx] : doc.arrays)
        if (name != "uav")
            detail::config_fail(name, "unknown array of tables");

    for (const auto& table : doc.tables) {
        if (table.name == "uav")
            continue;
        TableReader r(table, table.name);
        if (table.name.empty()) {
            r.string("preset"); // consumed by load_config
            assign(c.scenario_id, r.string("scenario_id"));
            if (auto v = r.integer("workers", 0, 4096))
                c.workers = static_cast<int>(*v);
            if (auto names = r.strings("schemes")) {
                c.schemes.clear();
                for (const auto& n : *names) {
                    const auto s = parse_scheme(n);
                    if (!s)
                        r.fail("schemes", "unknown scheme '" + n + "' (expected rsma, noma or sdma)");
                    c.schemes.push_back(*s);
                }
            }
        } else if (table.name == "bs") {
            assign(c.bs.height_m, r.number("height_m"));
            if (auto t = r.number("tilt_deg")) {
                c.bs.tilt_deg = *t;
                c.antenna.tilt_deg = *t;
            }
            if (auto v = r.integer("array_size", 1, 4096))
                c.bs.array_size = static_cast<int>(*v);
            assign(c.bs.element_spacing_over_wavelength, r.number("element_spacing_over_wavelength"));
        } else if (table.name == "antenna") {
            assign(c.antenna.theta_3db_deg, r.number("theta_3db_deg"));
            assign(c.antenna.sla_v_db, r.number("sla_v_db"));
            assign(c.antenna.phi_3db_deg, r.number("phi_3db_deg"));
            assign(c.antenna.a_m_db, r.number("a_m_db"));
            assign(c.antenna.g_max_dbi, r.number("g_max_dbi"));
        } else if (table.name == "channel") {
            if (auto v = r.integer("num_paths", 1, 1024))
                c.channel.num_paths = static_cast<int>(*v);
            assign(c.channel.pathloss_exponent, r.number("pathloss_exponent"));
            assign(c.channel.aod_spread_deg, r.number("aod_spread_deg"));
        } else if (table.name == "budget") {
            detail::read_power(r, "p_t", c.budget.p_t_w);
            detail::read_power(r, "p_bs", c.budget.p_bs_w);
            detail::read_power(r, "noise_power", c.budget.noise_power_w);
        } else if (table.name == "weights") {
            assign(c.weights, r.numbers("beta"));
        } else if (table.name == "noma") {
            if (auto order = r.numbers("order")) {
                c.noma_order.clear();
                for (double v : *order) {
                    if (v != std::floor(v) || v < 1.0 || v > 4096.0)
                        r.fail("order", "entries are 1-based UAV indices");
                    c.noma_order.push_back(static_cast<int>(v) - 1);
                }
            }
        } else if (table.name == "solver") {
            if (auto v = r.integer("max_iterations", 1, 1e6))
                c.solver.max_iterations = static_cast<int>(*v);
            assign(c.solver.rel_tolerance, r.number("rel_tolerance"));
            if (auto v = r.integer("num_restarts", 1, 1e4))
                c.solver.num_restarts = static_cast<int>(*v);
            assign(c.solver.inner_solver_tolerance, r.number("inner_solver_tolerance"));
            assign(c.solver.trust_region_initial, r.number("trust_region_initial"));
            if (auto v = r.integer("restart_seed", 0, max_exact))
                c.solver.restart_seed = static_cast<std::uint64_t>(*v);
            assign(c.solver.perturbation, r.number("perturbation"));
        } else if (table.name == "monte_carlo") {
            if (auto v = r.integer("num_seeds", 1, 1e7))
                c.monte_carlo.num_seeds = static_cast<int>(*v);
            if (auto v = r.integer("base_seed", 0, max_exact))
                c.monte_carlo.base_seed = static_cast<std::uint64_t>(*v);
        } else if (table.name == "sweep") {
            if (auto k = r.string("kind")) {
                const auto kind = parse_sweep_kind(*k);
                if (!kind)
                    r.fail("kind", "unknown sweep kind '" + *k + "' (expected none, weight_eta or uav2_altitude)");
                c.sweep.kind = *kind;
            }
            const bool range = r.has("start") || r.has("stop") || r.has("points");
            if (range && r.has("grid"))
                r.fail("grid", "give either grid or start/stop/points");
            if (auto g = r.numbers("grid"))
                c.sweep.grid = *g;
            if (range) {
                if (!r.has("start") || !r.has("stop") || !r.has("points"))
                    r.fail("points", "start, stop and points must be given together");
                const double lo = *r.number("start");
                const double hi = *r.number("stop");
                c.sweep.grid = linspace(lo, hi, static_cast<int>(*r.integer("points", 1, 1e6)));
            }
            if (c.sweep.kind == SweepKind::none)
                c.sweep.grid.clear();
        } else {
            detail::config_fail(table.name, "unknown table");
        }
        r.finish();
    }

    if (const auto it = doc.arrays.find("uav"); it != doc.arrays.end()) {
        c.uavs.clear();
        int k = 0;
        for (int idx : it->second) {
            TableReader r(doc.tables[idx], "uav[" + std::to_string(++k) + "]");
            c.uavs.push_back(detail::read_uav(r));
            r.finish();
        }
        // A changed UAV count invalidates per-UAV defaults from the base.
        bool weights_given = false;
        for (const auto& t : doc.tables)
            weights_given |= t.name == "weights" && t.entries.contains("beta");
        if (!weights_given && c.weights.size() != c.uavs.size())
            c.weights.assign(c.uavs.size(), 1.0);
        if (!c.noma_order.empty() && c.noma_order.size() != c.uavs.size())
            c.noma_order.clear();
    }
    c.validate();
    return c;
}

/// Parses scenario text. The base is the named preset (argument first, then
/// a top-level `preset = "..."` key), or the library defaults.
inline ScenarioConfig parse_config(std::string_view text, std::optional<std::string> preset_name = std::nullopt) {
    toml_lite::Document doc;
    try {
        doc = toml_lite::parse(text);
    } catch (const toml_lite::ParseError& e) {
        throw ConfigError(e.what());
    }
    if (!preset_name) {
        const auto& root = doc.tables.front().entries;
        if (const auto it = root.find("preset"); it != root.end()) {
            if (!it->second.is_string())
                detail::config_fail("preset", "expected a string");
            preset_name = std::get<std::string>(it->second.data);
        }
    }
    ScenarioConfig base;
    if (preset_name)
        base = preset(*preset_name);
    else
        base.weights.clear();
    return apply_document(doc, std::move(base));
}

inline ScenarioConfig load_config(const std::string& path, std::optional<std::string> preset_name = std::nullopt) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw std::runtime_error("error reading config file '" + path + "'");
    try {
        return parse_config(ss.str(), std::move(preset_name));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

} // namespace uavee

#endif // UAVEE_EXPERIMENTS_CONFIG_HPP
