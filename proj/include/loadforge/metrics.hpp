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

// Metric vocabulary shared by the sampler, the wire protocol and the archive.
//
// Volatile metrics (CPU share, memory footprint) change continuously and are
// sampled; non-volatile metrics (OS version, hardware description) are
// collected once and republished only when they change.

#ifndef LOADFORGE_METRICS_HPP_
#define LOADFORGE_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loadforge {

enum class Volatility { kVolatile, kNonVolatile };
enum class Scope { kHost, kProcess };

struct MetricDescriptor {
  std::string name;
  std::string units;
  Volatility volatility = Volatility::kVolatile;
  Scope scope = Scope::kHost;
};

// One timestamped measurement. `pid` is empty for host-scope metrics.
// Numeric metrics carry `value`; descriptive non-volatile metrics (OS or CPU
// description) carry `text` instead and leave value at 0.
struct MetricSample {
  std::string host;
  std::optional<int64_t> pid;
  std::string metric;
  double value = 0.0;
  std::string text;
  std::string units;
  int64_t ts_ms = 0;

  bool is_text() const { return !text.empty(); }
  bool operator==(const MetricSample&) const = default;
};

// Name-unique descriptor set; the volatility of a name is fixed at
// registration and re-registering it with a different one is rejected.
class MetricRegistry {
 public:
  void add(MetricDescriptor d);
  const MetricDescriptor* find(std::string_view name) const;
  const std::vector<MetricDescriptor>& all() const { return metrics_; }
  std::vector<std::string> names() const;

  // The built-in vocabulary:
  //   process volatile:  cpu_frac (frac), resident_mib (MiB)
  //   host volatile:     host_cpu_frac (frac, 0..n_cpus), mem_free_mib (MiB),
  //                      load1 (load)
  //   host non-volatile: os_descr (text), cpu_model (text), core_count
  //                      (count), mem_total_mib (MiB)
  static const MetricRegistry& standard();

 private:
  std::vector<MetricDescriptor> metrics_;
};

}  // namespace loadforge

#endif  // LOADFORGE_METRICS_HPP_
