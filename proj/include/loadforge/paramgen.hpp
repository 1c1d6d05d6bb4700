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

// Bulk parameter-file generation.
//
// A run plan assigns each numeric job parameter a bounded probability law;
// generating the plan samples every job's parameters, derives its seed from
// (master_seed, job index) and emits ready-to-run parameter files. Identical
// plans produce byte-identical files.

#ifndef LOADFORGE_PARAMGEN_HPP_
#define LOADFORGE_PARAMGEN_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadforge/loadgen.hpp"
#include "loadforge/rng.hpp"

namespace loadforge {

// A bounded probability law. Samples outside [lower, upper] are handled per
// clip policy: resample retries up to 1000 draws then clamps; clamp clips
// immediately.
struct DistributionSpec {
  enum class Law { kUniform, kExponential, kPareto, kConstant };
  enum class Clip { kResample, kClamp };

  Law law = Law::kConstant;
  double rate = 1.0;             // exponential
  double alpha = 1.0;            // pareto shape
  double x_min = 1.0;            // pareto scale
  double value = 0.0;            // constant
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  Clip clip = Clip::kResample;

  void validate() const;
  // "uniform" | "constant(v)" | "exponential(rate)" | "pareto(alpha, x_min)"
  std::string serialize_law() const;
  static DistributionSpec with_law(std::string_view law_text);

  bool operator==(const DistributionSpec&) const = default;
};

// One draw with bounds enforced. Throws ValidationError on an invalid spec.
double sample(const DistributionSpec& spec, Rng& rng);

// The sampled JobSpec fields, in documented (and serialization) order.
std::span<const std::string_view> plan_metric_names();

struct RunPlan {
  int64_t n_jobs = 1;
  uint64_t master_seed = 0;
  std::string job_id_prefix = "job";
  std::string packet_sink = "127.0.0.1:8750";
  std::string transitions_text = "deterministic";
  int max_phase_entries = 1000;
  // Keyed by JobSpec field name; unlisted metrics use the field default.
  std::map<std::string, DistributionSpec> metrics;

  void validate() const;
  // Plan file syntax: the job-level keys above plus `<metric>.law`,
  // `<metric>.lo`, `<metric>.hi`, `<metric>.clip` entries.
  static RunPlan parse(std::string_view text);
};

struct GeneratedFile {
  std::string name;      // e.g. "job-00001.param"
  std::string contents;  // canonical parameter-file text
};

// Pure: (plan) -> files. Job i samples its parameters from a generator
// seeded with derive_seed(master_seed, 2i) and receives the run seed
// derive_seed(master_seed, 2i+1).
std::vector<GeneratedFile> generate_param_files(const RunPlan& plan);

// Writes the generated set under `dir` (created if missing).
void write_param_files(const RunPlan& plan, const std::string& dir);

// Loads every *.param file under `dir`, sorted by filename. Parse failures
// name the offending file.
std::vector<JobSpec> load_param_dir(const std::string& dir);

// One CSV row per job, one column per metric, header first; column order is
// the documented field order.
std::string emit_inspection_series(std::span<const JobSpec> specs);

}  // namespace loadforge

#endif  // LOADFORGE_PARAMGEN_HPP_
