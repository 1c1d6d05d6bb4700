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

#include "loadforge/log.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>

#include "loadforge/error.hpp"

namespace loadforge {
namespace {

std::atomic<int> g_level{static_cast<int>(LogLevel::kInfo)};
std::mutex g_mutex;

void emit(const char* tag, const std::string& msg) {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count();
  std::lock_guard<std::mutex> lock(g_mutex);
  std::fprintf(stderr, "[%lld.%03lld] %s %s\n",
               static_cast<long long>(ms / 1000), static_cast<long long>(ms % 1000),
               tag, msg.c_str());
}

}  // namespace

void set_log_level(LogLevel level) { g_level.store(static_cast<int>(level)); }

LogLevel log_level() { return static_cast<LogLevel>(g_level.load()); }

LogLevel parse_log_level(std::string_view name) {
  if (name == "error") return LogLevel::kError;
  if (name == "info") return LogLevel::kInfo;
  if (name == "debug") return LogLevel::kDebug;
  throw ValidationError("log-level", "expected error|info|debug, got '" + std::string(name) + "'");
}

void log_error(const std::string& msg) { emit("ERROR", msg); }

void log_info(const std::string& msg) {
  if (g_level.load() >= static_cast<int>(LogLevel::kInfo)) emit("INFO ", msg);
}

void log_debug(const std::string& msg) {
  if (g_level.load() >= static_cast<int>(LogLevel::kDebug)) emit("DEBUG", msg);
}

}  // namespace loadforge
