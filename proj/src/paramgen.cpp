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

#include "loadforge/paramgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "loadforge/error.hpp"
#include "loadforge/textio.hpp"

namespace loadforge {

namespace fs = std::filesystem;

namespace {

constexpr int kResampleLimit = 1000;

constexpr std::string_view kMetricNames[] = {
    "net_duration_s", "inter_packet_delay_ms", "packet_size_b",
    "mem_footprint_mib", "cpu_duration_s", "cpu_util_factor",
};

double metric_default(std::string_view name) {
  const JobSpec d;
  if (name == "net_duration_s") return d.net_duration_s;
  if (name == "inter_packet_delay_ms") return d.inter_packet_delay_ms;
  if (name == "packet_size_b") return static_cast<double>(d.packet_size_b);
  if (name == "mem_footprint_mib") return static_cast<double>(d.mem_footprint_mib);
  if (name == "cpu_duration_s") return d.cpu_duration_s;
  if (name == "cpu_util_factor") return d.cpu_util_factor;
  throw ValidationError(std::string(name), "not a plan metric");
}

DistributionSpec default_metric_spec(std::string_view name) {
  DistributionSpec spec;
  spec.law = DistributionSpec::Law::kConstant;
  spec.value = metric_default(name);
  spec.lower = 0.0;
  spec.upper = name == "cpu_util_factor" ? 1.0 : std::numeric_limits<double>::infinity();
  return spec;
}

bool is_metric_name(std::string_view name) {
  return std::find(std::begin(kMetricNames), std::end(kMetricNames), name) !=
         std::end(kMetricNames);
}

double draw(const DistributionSpec& spec, Rng& rng) {
  switch (spec.law) {
    case DistributionSpec::Law::kUniform:
      return rng.uniform(spec.lower, spec.upper);
    case DistributionSpec::Law::kExponential:
      return -std::log(1.0 - rng.next_double()) / spec.rate;
    case DistributionSpec::Law::kPareto:
      return spec.x_min / std::pow(1.0 - rng.next_double(), 1.0 / spec.alpha);
    case DistributionSpec::Law::kConstant:
      return spec.value;
  }
  return spec.value;
}

std::string job_name(const std::string& prefix, int64_t index_1based) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%05lld", static_cast<long long>(index_1based));
  return prefix + "-" + buf;
}

// "pareto(3, 1)" -> {"3", " 1"}; "uniform" -> {}
std::vector<std::string> parse_law_args(std::string_view text, std::string_view name,
                                        size_t expected) {
  auto open = text.find('(');
  if (open == std::string_view::npos) {
    if (expected == 0) return {};
    throw ValidationError("law", std::string(name) + " requires " +
                                     std::to_string(expected) + " argument(s)");
  }
  if (text.back() != ')') throw ValidationError("law", "missing ')' in '" + std::string(text) + "'");
  auto args = split(text.substr(open + 1, text.size() - open - 2), ',');
  if (args.size() == 1 && trim(args[0]).empty()) args.clear();
  if (args.size() != expected) {
    throw ValidationError("law", std::string(name) + " takes " + std::to_string(expected) +
                                     " argument(s), got " + std::to_string(args.size()));
  }
  return args;
}

}  // namespace

void DistributionSpec::validate() const {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw ValidationError("bounds", "need lower <= upper, got [" + format_double(lower) +
                                        ", " + format_double(upper) + "]");
  }
  switch (law) {
    case Law::kUniform:
      if (!std::isfinite(lower) || !std::isfinite(upper)) {
        throw ValidationError("bounds", "uniform requires finite bounds");
      }
      break;
    case Law::kExponential:
      if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw ValidationError("rate", "exponential requires rate > 0");
      }
      break;
    case Law::kPareto:
      if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw ValidationError("alpha", "pareto requires alpha > 0");
      }
      if (!(x_min > 0.0) || !std::isfinite(x_min)) {
        throw ValidationError("x_min", "pareto requires x_min > 0");
      }
      break;
    case Law::kConstant:
      if (!std::isfinite(value)) throw ValidationError("value", "constant must be finite");
      break;
  }
}

std::string DistributionSpec::serialize_law() const {
  switch (law) {
    case Law::kUniform: return "uniform";
    case Law::kExponential: return "exponential(" + format_double(rate) + ")";
    case Law::kPareto:
      return "pareto(" + format_double(alpha) + ", " + format_double(x_min) + ")";
    case Law::kConstant: return "constant(" + format_double(value) + ")";
  }
  return "constant(0)";
}

DistributionSpec DistributionSpec::with_law(std::string_view law_text) {
  DistributionSpec spec;
  const std::string t = to_lower(trim(law_text));
  if (t == "uniform" || t.rfind("uniform(", 0) == 0) {
    parse_law_args(t, "uniform", 0);
    spec.law = Law::kUniform;
  } else if (t.rfind("exponential", 0) == 0) {
    spec.law = Law::kExponential;
    spec.rate = parse_double(parse_law_args(t, "exponential", 1)[0], "rate");
  } else if (t.rfind("pareto", 0) == 0) {
    spec.law = Law::kPareto;
    auto args = parse_law_args(t, "pareto", 2);
    spec.alpha = parse_double(args[0], "alpha");
    spec.x_min = parse_double(args[1], "x_min");
  } else if (t.rfind("constant", 0) == 0) {
    spec.law = Law::kConstant;
    spec.value = parse_double(parse_law_args(t, "constant", 1)[0], "value");
  } else {
    throw ValidationError("law", "unknown law '" + t + "'");
  }
  return spec;
}

double sample(const DistributionSpec& spec, Rng& rng) {
  spec.validate();
  double v = draw(spec, rng);
  if (v >= spec.lower && v <= spec.upper) return v;
  if (spec.clip == DistributionSpec::Clip::kResample) {
    for (int i = 0; i < kResampleLimit; ++i) {
      v = draw(spec, rng);
      if (v >= spec.lower && v <= spec.upper) return v;
    }
  }
  return std::clamp(v, spec.lower, spec.upper);
}

std::span<const std::string_view> plan_metric_names() { return kMetricNames; }

void RunPlan::validate() const {
  if (n_jobs < 1) throw ValidationError("n_jobs", "must be >= 1");
  if (max_phase_entries < 1) throw ValidationError("max_phase_entries", "must be >= 1");
  if (job_id_prefix.empty()) throw ValidationError("job_id_prefix", "must not be empty");
  for (const auto& [name, spec] : metrics) {
    if (!is_metric_name(name)) throw ValidationError(name, "not a plan metric");
    spec.validate();
  }
  TransitionTable::parse(transitions_text, max_phase_entries);
}

RunPlan RunPlan::parse(std::string_view text) {
  KeyValueMap map(parse_key_values(text));
  RunPlan plan;
  if (auto v = map.take("n_jobs")) plan.n_jobs = parse_i64(*v, "n_jobs");
  if (auto v = map.take("master_seed")) plan.master_seed = parse_u64(*v, "master_seed");
  plan.job_id_prefix = map.take_or("job_id_prefix", plan.job_id_prefix);
  plan.packet_sink = map.take_or("packet_sink", plan.packet_sink);
  plan.transitions_text = map.take_or("transitions", plan.transitions_text);
  if (auto v = map.take("max_phase_entries")) {
    plan.max_phase_entries = static_cast<int>(parse_i64(*v, "max_phase_entries"));
  }

  // Remaining keys must be <metric>.{law,lo,hi,clip}.
  for (const KeyValue& kv : map.remaining()) {
    auto dot = kv.key.find('.');
    if (dot == std::string::npos) throw ParseError(kv.line, "unknown key '" + kv.key + "'");
    const std::string metric = kv.key.substr(0, dot);
    const std::string attr = kv.key.substr(dot + 1);
    if (!is_metric_name(metric)) {
      throw ParseError(kv.line, "unknown metric '" + metric + "'");
    }
    auto [it, inserted] = plan.metrics.try_emplace(metric, default_metric_spec(metric));
    DistributionSpec& spec = it->second;
    if (attr == "law") {
      DistributionSpec parsed = DistributionSpec::with_law(kv.value);
      parsed.lower = spec.lower;
      parsed.upper = spec.upper;
      parsed.clip = spec.clip;
      spec = parsed;
    } else if (attr == "lo") {
      spec.lower = parse_double(kv.value, kv.key);
    } else if (attr == "hi") {
      spec.upper = parse_double(kv.value, kv.key);
    } else if (attr == "clip") {
      const std::string c = to_lower(trim(kv.value));
      if (c == "resample") {
        spec.clip = DistributionSpec::Clip::kResample;
      } else if (c == "clamp") {
        spec.clip = DistributionSpec::Clip::kClamp;
      } else {
        throw ParseError(kv.line, "clip must be resample|clamp");
      }
    } else {
      throw ParseError(kv.line, "unknown metric attribute '" + attr + "'");
    }
  }
  plan.validate();
  return plan;
}

std::vector<GeneratedFile> generate_param_files(const RunPlan& plan) {
  plan.validate();

  std::map<std::string, DistributionSpec> specs;
  for (std::string_view name : kMetricNames) {
    auto it = plan.metrics.find(std::string(name));
    specs.emplace(std::string(name),
                  it != plan.metrics.end() ? it->second : default_metric_spec(name));
  }

  std::vector<GeneratedFile> files;
  files.reserve(static_cast<size_t>(plan.n_jobs));
  for (int64_t i = 0; i < plan.n_jobs; ++i) {
    Rng rng(derive_seed(plan.master_seed, static_cast<uint64_t>(2 * i)));
    JobSpec spec;
    spec.job_id = job_name(plan.job_id_prefix, i + 1);
    spec.packet_sink = plan.packet_sink;
    spec.transitions = TransitionTable::parse(plan.transitions_text, plan.max_phase_entries);
    spec.seed = derive_seed(plan.master_seed, static_cast<uint64_t>(2 * i + 1));
    // Field order is fixed so the draw sequence is part of the format.
    spec.net_duration_s = sample(specs.at("net_duration_s"), rng);
    spec.inter_packet_delay_ms = sample(specs.at("inter_packet_delay_ms"), rng);
    spec.packet_size_b = std::llround(sample(specs.at("packet_size_b"), rng));
    spec.mem_footprint_mib = std::llround(sample(specs.at("mem_footprint_mib"), rng));
    spec.cpu_duration_s = sample(specs.at("cpu_duration_s"), rng);
    spec.cpu_util_factor = sample(specs.at("cpu_util_factor"), rng);
    spec.validate();
    files.push_back({spec.job_id + ".param", spec.serialize()});
  }
  return files;
}

void write_param_files(const RunPlan& plan, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
  for (const GeneratedFile& f : generate_param_files(plan)) {
    write_file((fs::path(dir) / f.name).string(), f.contents);
  }
}

std::vector<JobSpec> load_param_dir(const std::string& dir) {
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".param") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<JobSpec> specs;
  specs.reserve(paths.size());
  for (const auto& p : paths) {
    try {
      specs.push_back(parse_job_spec(read_file(p.string())));
    } catch (const std::exception& e) {
      throw ValidationError(p.filename().string(), e.what());
    }
  }
  return specs;
}

std::string emit_inspection_series(std::span<const JobSpec> specs) {
  std::string out =
      "job_id,net_duration_s,inter_packet_delay_ms,packet_size_b,"
      "mem_footprint_mib,cpu_duration_s,cpu_util_factor,seed\n";
  for (const JobSpec& s : specs) {
    out += csv_field(s.job_id) + "," + format_double(s.net_duration_s) + "," +
           format_double(s.inter_packet_delay_ms) + "," + std::to_string(s.packet_size_b) +
           "," + std::to_string(s.mem_footprint_mib) + "," + format_double(s.cpu_duration_s) +
           "," + format_double(s.cpu_util_factor) + "," + std::to_string(s.seed) + "\n";
  }
  return out;
}

}  // namespace loadforge
