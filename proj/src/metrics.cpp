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

#include "loadforge/metrics.hpp"

#include "loadforge/error.hpp"

namespace loadforge {

void MetricRegistry::add(MetricDescriptor d) {
  if (const MetricDescriptor* existing = find(d.name)) {
    if (existing->volatility != d.volatility) {
      throw ValidationError(d.name, "metric re-registered with different volatility");
    }
    throw ValidationError(d.name, "metric already registered");
  }
  metrics_.push_back(std::move(d));
}

const MetricDescriptor* MetricRegistry::find(std::string_view name) const {
  for (const auto& m : metrics_) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::vector<std::string> MetricRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(metrics_.size());
  for (const auto& m : metrics_) out.push_back(m.name);
  return out;
}

const MetricRegistry& MetricRegistry::standard() {
  static const MetricRegistry reg = [] {
    MetricRegistry r;
    r.add({"cpu_frac", "frac", Volatility::kVolatile, Scope::kProcess});
    r.add({"resident_mib", "MiB", Volatility::kVolatile, Scope::kProcess});
    r.add({"host_cpu_frac", "frac", Volatility::kVolatile, Scope::kHost});
    r.add({"mem_free_mib", "MiB", Volatility::kVolatile, Scope::kHost});
    r.add({"load1", "load", Volatility::kVolatile, Scope::kHost});
    r.add({"os_descr", "text", Volatility::kNonVolatile, Scope::kHost});
    r.add({"cpu_model", "text", Volatility::kNonVolatile, Scope::kHost});
    r.add({"core_count", "count", Volatility::kNonVolatile, Scope::kHost});
    r.add({"mem_total_mib", "MiB", Volatility::kNonVolatile, Scope::kHost});
    return r;
  }();
  return reg;
}

}  // namespace loadforge
