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

// Text plumbing shared by every file format in the toolkit: the line-oriented
// `key = value` configuration syntax, deterministic number formatting, and
// CSV field escaping.

#ifndef LOADFORGE_TEXTIO_HPP_
#define LOADFORGE_TEXTIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loadforge {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Shortest decimal string that round-trips the exact double. Pure function of
// the value, so serialized output is byte-stable.
std::string format_double(double v);

// Strict full-string numeric parsers. `field` names the value in errors.
double parse_double(std::string_view s, std::string_view field);
int64_t parse_i64(std::string_view s, std::string_view field);
uint64_t parse_u64(std::string_view s, std::string_view field);

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;  // 1-based source line
};

// Parses `key = value` lines. `#` starts a comment anywhere on a line; blank
// lines are skipped; a later duplicate key replaces an earlier one at lookup
// time. Throws ParseError with the offending line number.
std::vector<KeyValue> parse_key_values(std::string_view text);

// Consume-tracking view over parsed key/values, so parsers can reject unknown
// keys with their line number after taking everything they understand.
class KeyValueMap {
 public:
  explicit KeyValueMap(std::vector<KeyValue> entries);

  // Removes and returns the last occurrence of `key`, if present.
  std::optional<std::string> take(std::string_view key);
  std::string take_or(std::string_view key, std::string_view fallback);

  // Keys not yet taken, in source order.
  const std::vector<KeyValue>& remaining() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Throws ParseError naming the first unconsumed key.
  void reject_unknown() const;

 private:
  std::vector<KeyValue> entries_;
};

// Quotes a CSV field only when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);
// write + rename so readers never observe a partial file.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace loadforge

#endif  // LOADFORGE_TEXTIO_HPP_
