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

// Reader for the TOML subset used by scenario files:
//   # comments, [table], [[array_of_tables]], key = value
// where a value is a number, a "string", true/false, or a single-line
// flat array of those.

#ifndef UAVEE_EXPERIMENTS_TOML_LITE_HPP
#define UAVEE_EXPERIMENTS_TOML_LITE_HPP

#include <cctype>
#include <charconv>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace uavee::toml_lite {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Value;
using Array = std::vector<Value>;

struct Value {
    std::variant<double, std::string, bool, Array> data;
    int line = 0;

    [[nodiscard]] bool is_number() const noexcept { return std::holds_alternative<double>(data); }
    [[nodiscard]] bool is_string() const noexcept { return std::holds_alternative<std::string>(data); }
    [[nodiscard]] bool is_bool() const noexcept { return std::holds_alternative<bool>(data); }
    [[nodiscard]] bool is_array() const noexcept { return std::holds_alternative<Array>(data); }
};

struct Table {
    std::string name; // "" for the root table
    std::map<std::string, Value> entries;
    int line = 0;
};

struct Document {
    std::vector<Table> tables; // in file order; the root table first
    std::map<std::string, std::vector<int>> arrays; // [[name]] -> indices into tables
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] inline void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

inline bool valid_key(std::string_view k) {
    if (k.empty())
        return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
            return false;
    return true;
}

// Strips a trailing comment that is not inside a string.
inline std::string_view strip_comment(std::string_view s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\'))
            in_str = !in_str;
        else if (s[i] == '#' && !in_str)
            return s.substr(0, i);
    }
    return s;
}

inline Value parse_scalar(std::string_view tok, int line) {
    tok = trim(tok);
    if (tok.empty())
        fail(line, "missing value");
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"')
            fail(line, "unterminated string");
        std::string out;
        for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
            if (tok[i] == '\\' && i + 2 < tok.size()) {
                const char n = tok[++i];
                out.push_back(n == 'n' ? '\n' : n == 't' ? '\t' : n);
            } else {
                out.push_back(tok[i]);
            }
        }
        return {out, line};
    }
    if (tok == "true")
        return {true, line};
    if (tok == "false")
        return {false, line};
    std::string digits;
    for (char c : tok)
        if (c != '_')
            digits.push_back(c);
    if (!digits.empty() && digits.front() == '+')
        digits.erase(0, 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        fail(line, "cannot parse value '" + std::string(tok) + "'");
    return {v, line};
}

inline Value parse_value(std::string_view tok, int line) {
    tok = trim(tok);
    if (tok.empty() || tok.front() != '[')
        return parse_scalar(tok, line);
    if (tok.back() != ']')
        fail(line, "arrays must open and close on one line");
    Array arr;
    std::string_view body = trim(tok.substr(1, tok.size() - 2));
    bool in_str = false;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i < body.size() && body[i] == '"')
            in_str = !in_str;
        if (i == body.size() || (body[i] == ',' && !in_str)) {
            const auto item = trim(body.substr(start, i - start));
            if (!item.empty()) {
                if (item.front() == '[')
                    fail(line, "nested arrays are not supported");
                arr.push_back(parse_scalar(item, line));
            } else if (i < body.size()) {
                fail(line, "empty array element");
            }
            start = i + 1;
        }
    }
    return {std::move(arr), line};
}

} // namespace detail

inline Document parse(std::string_view text) {
    Document doc;
    doc.tables.push_back(Table{"", {}, 0});
    int current = 0;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty())
            continue;

        if (line.starts_with("[[")) {
            if (!line.ends_with("]]"))
                detail::fail(line_no, "malformed array-of-tables header");
            const std::string name(detail::trim(line.substr(2, line.size() - 4)));
            if (!detail::valid_key(name))
                detail::fail(line_no, "invalid table name '" + name + "'");
            doc.tables.push_back(Table{name, {}, line_no});
            current = static_cast<int>(doc.tables.size()) - 1;
            doc.arrays[name].push_back(current);
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']')
                detail::fail(line_no, "malformed table header");
            const std::string name(detail::trim(line.substr(1, line.size() - 2)));
            if (!detail::valid_key(name))
                detail::fail(line_no, "invalid table name '" + name + "'");
            for (const auto& t : doc.tables)
                if (t.name == name && !doc.arrays.contains(name))
                    detail::fail(line_no, "table [" + name + "] defined twice");
            if (doc.arrays.contains(name))
                detail::fail(line_no, "[" + name + "] was already used as an array of tables");
            doc.tables.push_back(Table{name, {}, line_no});
            current = static_cast<int>(doc.tables.size()) - 1;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            detail::fail(line_no, "expected key = value");
        const std::string key(detail::trim(line.substr(0, eq)));
        if (!detail::valid_key(key))
            detail::fail(line_no, "invalid key '" + key + "'");
        auto& entries = doc.tables[current].entries;
        if (entries.contains(key))
            detail::fail(line_no, "duplicate key '" + key + "'");
        entries.emplace(key, detail::parse_value(line.substr(eq + 1), line_no));
    }
    return doc;
}

} // namespace uavee::toml_lite

#endif // UAVEE_EXPERIMENTS_TOML_LITE_HPP
