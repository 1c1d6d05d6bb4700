// Copyright 2026 The LoadForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOADFORGE_LOG_HPP_
#define LOADFORGE_LOG_HPP_

#include <string>
#include <string_view>

namespace loadforge {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

void set_log_level(LogLevel level);
LogLevel log_level();
// Accepts "error", "info", "debug".
LogLevel parse_log_level(std::string_view name);

// Timestamped line to stderr, suppressed below the active level.
void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace loadforge

#endif  // LOADFORGE_LOG_HPP_
