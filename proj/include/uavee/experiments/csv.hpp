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

// Result table I/O. Two-UAV layout:
//   scenario_id,scheme,seed,sweep_kind,sweep_value,ee_1,ee_2,ee_sum,
//   rate_c_1,rate_c_2,rate_p_1,rate_p_2,power_used_w,iterations,converged
// One UAV fills the UAV-2 columns with zeros; each UAV beyond the second
// appends ee_k,rate_c_k,rate_p_k after `converged`.

#ifndef UAVEE_EXPERIMENTS_CSV_HPP
#define UAVEE_EXPERIMENTS_CSV_HPP

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavee/experiments/runner.hpp"

namespace uavee {

inline constexpr std::string_view csv_header =
    "scenario_id,scheme,seed,sweep_kind,sweep_value,ee_1,ee_2,ee_sum,rate_c_1,rate_c_2,rate_p_1,rate_p_2,"
    "power_used_w,iterations,converged";

namespace detail {

inline std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v); // no "-0"
    return buf;
}

inline double at_or_zero(const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; }

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos)
            return out;
        start = comma + 1;
    }
}

} // namespace detail

inline void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    std::size_t extra = 0;
    for (const auto& r : rows)
        extra = std::max(extra, r.ee.size() > 2 ? r.ee.size() - 2 : 0);
    out << csv_header;
    for (std::size_t k = 3; k < 3 + extra; ++k)
        out << ",ee_" << k << ",rate_c_" << k << ",rate_p_" << k;
    out << '\n';
    using detail::at_or_zero;
    using detail::fmt9;
    for (const auto& r : rows) {
        out << r.scenario_id << ',' << to_string(r.scheme) << ',' << r.seed << ',' << to_string(r.sweep_kind) << ','
            << fmt9(r.sweep_value) << ',' << fmt9(at_or_zero(r.ee, 0)) << ',' << fmt9(at_or_zero(r.ee, 1)) << ','
            << fmt9(r.ee_sum) << ',' << fmt9(at_or_zero(r.rate_c, 0)) << ',' << fmt9(at_or_zero(r.rate_c, 1)) << ','
            << fmt9(at_or_zero(r.rate_p, 0)) << ',' << fmt9(at_or_zero(r.rate_p, 1)) << ',' << fmt9(r.power_used_w)
            << ',' << r.iterations << ',' << (r.converged ? "true" : "false");
        for (std::size_t k = 2; k < 2 + extra; ++k)
            out << ',' << fmt9(at_or_zero(r.ee, k)) << ',' << fmt9(at_or_zero(r.rate_c, k)) << ','
                << fmt9(at_or_zero(r.rate_p, k));
        out << '\n';
    }
}

inline void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(rows, out);
    out.flush();
    if (!out)
        throw std::runtime_error("error writing '" + path + "'");
}

/// Reads a table produced by write_csv. Per-UAV vectors have as many
/// entries as the file has UAV columns (two, or more when extended).
inline std::vector<ResultRow> read_csv(std::istream& in, const std::string& name = "<stream>") {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(name + ": empty file");
    if (!line.starts_with(csv_header))
        throw std::runtime_error(name + ": unexpected header");
    const std::size_t n_cols = detail::split(line).size();
    if (n_cols < 15 || (n_cols - 15) % 3 != 0)
        throw std::runtime_error(name + ": unexpected header");
    const std::size_t extra = (n_cols - 15) / 3;

    std::vector<ResultRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = detail::split(line);
        auto bad = [&](const std::string& what) {
            return std::runtime_error(name + ":" + std::to_string(line_no) + ": " + what);
        };
        if (f.size() != n_cols)
            throw bad("expected " + std::to_string(n_cols) + " fields, got " + std::to_string(f.size()));
        auto num = [&](std::string_view s) {
            double v = 0.0;
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size())
                throw bad("bad number '" + std::string(s) + "'");
            return v;
        };
        auto uint = [&](std::string_view s) {
            std::uint64_t v = 0;
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size())
                throw bad("bad integer '" + std::string(s) + "'");
            return v;
        };
        ResultRow r;
        r.scenario_id = std::string(f[0]);
        const auto scheme = parse_scheme(f[1]);
        const auto kind = parse_sweep_kind(f[3]);
        if (!scheme || !kind)
            throw bad("bad scheme or sweep kind");
        r.scheme = *scheme;
        r.seed = uint(f[2]);
        r.sweep_kind = *kind;
        r.sweep_value = num(f[4]);
        r.ee = {num(f[5]), num(f[6])};
        r.ee_sum = num(f[7]);
        r.rate_c = {num(f[8]), num(f[9])};
        r.rate_p = {num(f[10]), num(f[11])};
        r.power_used_w = num(f[12]);
        r.iterations = static_cast<int>(uint(f[13]));
        if (f[14] != "true" && f[14] != "false")
            throw bad("converged must be true or false");
        r.converged = f[14] == "true";
        for (std::size_t k = 0; k < extra; ++k) {
            r.ee.push_back(num(f[15 + 3 * k]));
            r.rate_c.push_back(num(f[16 + 3 * k]));
            r.rate_p.push_back(num(f[17 + 3 * k]));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::vector<ResultRow> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return read_csv(in, path);
}

} // namespace uavee

#endif // UAVEE_EXPERIMENTS_CSV_HPP
