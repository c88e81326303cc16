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

#ifndef UAVEE_LOG_HPP
#define UAVEE_LOG_HPP

#include <functional>
#include <iostream>
#include <mutex>
#include <string_view>

namespace uavee {

using LogSink = std::function<void(std::string_view)>;

namespace detail {
inline std::mutex& log_mutex() {
    static std::mutex m;
    return m;
}
inline LogSink& log_sink() {
    static LogSink sink = [](std::string_view msg) { std::cerr << "[uavee] " << msg << '\n'; };
    return sink;
}
} // namespace detail

/// Replaces the diagnostic sink (stderr by default). Pass an empty function to silence.
inline void set_log_sink(LogSink sink) {
    std::scoped_lock lock(detail::log_mutex());
    detail::log_sink() = std::move(sink);
}

inline void log_warning(std::string_view msg) {
    std::scoped_lock lock(detail::log_mutex());
    if (detail::log_sink())
        detail::log_sink()(msg);
}

} // namespace uavee

#endif // UAVEE_LOG_HPP
