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

#include "loadforge/textio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "loadforge/error.hpp"

namespace loadforge {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view field) {
  const std::string t = trim(s);
  double v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    throw ValidationError(std::string(field), "not a number: '" + t + "'");
  }
  return v;
}

int64_t parse_i64(std::string_view s, std::string_view field) {
  const std::string t = trim(s);
  int64_t v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
    throw ValidationError(std::string(field), "not an integer: '" + t + "'");
  }
  return v;
}

uint64_t parse_u64(std::string_view s, std::string_view field) {
  const std::string t = trim(s);
  uint64_t v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
    throw ValidationError(std::string(field), "not an unsigned integer: '" + t + "'");
  }
  return v;
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::string stripped = trim(line);
    if (stripped.empty()) continue;

    size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected 'key = value', got '" + stripped + "'");
    }
    KeyValue kv;
    kv.key = trim(std::string_view(stripped).substr(0, eq));
    kv.value = trim(std::string_view(stripped).substr(eq + 1));
    kv.line = line_no;
    if (kv.key.empty()) throw ParseError(line_no, "empty key");
    out.push_back(std::move(kv));
  }
  return out;
}

KeyValueMap::KeyValueMap(std::vector<KeyValue> entries) : entries_(std::move(entries)) {}

std::optional<std::string> KeyValueMap::take(std::string_view key) {
  std::optional<std::string> found;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->key == key) {
      found = it->value;  // last occurrence wins
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
  return found;
}

std::string KeyValueMap::take_or(std::string_view key, std::string_view fallback) {
  auto v = take(key);
  return v ? *v : std::string(fallback);
}

void KeyValueMap::reject_unknown() const {
  if (entries_.empty()) return;
  const KeyValue& kv = entries_.front();
  throw ParseError(kv.line, "unknown key '" + kv.key + "'");
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp";
  write_file(tmp, contents);
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

}  // namespace loadforge
