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

#include "loadforge/loadgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "loadforge/error.hpp"
#include "loadforge/textio.hpp"
#include "loadforge/udp.hpp"

namespace loadforge {

using std::chrono::steady_clock;

namespace {

constexpr double kRowSumTolerance = 1e-9;
constexpr int64_t kPageBytes = 4096;
constexpr int kMinQuanta = 10;

int state_index(State s) { return static_cast<int>(s); }

// Busy work between clock polls; keeps the spin loop from collapsing into a
// pure rdtsc storm and gives the optimizer something it must not remove.
double spin_until(steady_clock::time_point deadline) {
  volatile double x = 1.0;
  while (steady_clock::now() < deadline) {
    for (int i = 0; i < 64; ++i) x = x * 1.0000001 + 0.0000001;
  }
  return x;
}

double elapsed_s(steady_clock::time_point since) {
  return std::chrono::duration<double>(steady_clock::now() - since).count();
}

}  // namespace

std::string_view state_name(State s) {
  switch (s) {
    case State::kNetLoad: return "netload";
    case State::kMemAlloc: return "memalloc";
    case State::kCpuLoad: return "cpuload";
    case State::kDone: return "done";
  }
  return "?";
}

State parse_state(std::string_view name) {
  const std::string n = to_lower(trim(name));
  if (n == "netload") return State::kNetLoad;
  if (n == "memalloc") return State::kMemAlloc;
  if (n == "cpuload") return State::kCpuLoad;
  if (n == "done") return State::kDone;
  throw ValidationError("state", "unknown state '" + n + "'");
}

TransitionTable TransitionTable::deterministic() {
  TransitionTable t;
  t.kind = Kind::kDeterministic;
  t.rows[state_index(State::kNetLoad)] = {{State::kMemAlloc, 1.0}};
  t.rows[state_index(State::kMemAlloc)] = {{State::kCpuLoad, 1.0}};
  t.rows[state_index(State::kCpuLoad)] = {{State::kDone, 1.0}};
  return t;
}

TransitionTable TransitionTable::probabilistic(
    std::array<std::vector<Edge>, kLoadStates> rows, int max_phase_entries) {
  TransitionTable t;
  t.kind = Kind::kProbabilistic;
  t.rows = std::move(rows);
  t.max_phase_entries = max_phase_entries;
  t.validate();
  return t;
}

void TransitionTable::validate() const {
  if (max_phase_entries < 1) {
    throw ValidationError("max_phase_entries", "must be >= 1");
  }
  if (kind == Kind::kDeterministic) {
    if (*this != deterministic()) {
      throw ValidationError("transitions",
                            "deterministic table must be netload->memalloc->cpuload->done");
    }
    return;
  }
  for (int i = 0; i < kLoadStates; ++i) {
    const auto& row = rows[i];
    const std::string field = "transitions." + std::string(state_name(static_cast<State>(i)));
    if (row.empty()) throw ValidationError(field, "missing row");
    double sum = 0.0;
    for (const Edge& e : row) {
      if (!(e.probability >= 0.0) || !std::isfinite(e.probability)) {
        throw ValidationError(field, "probability must be finite and >= 0");
      }
      sum += e.probability;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw ValidationError(field, "probabilities sum to " + format_double(sum) + ", expected 1");
    }
  }
}

std::string TransitionTable::serialize() const {
  if (kind == Kind::kDeterministic) return "deterministic";
  std::string out;
  for (int i = 0; i < kLoadStates; ++i) {
    if (i > 0) out += "; ";
    out += state_name(static_cast<State>(i));
    out += ": ";
    for (size_t j = 0; j < rows[i].size(); ++j) {
      if (j > 0) out += ", ";
      out += state_name(rows[i][j].next);
      out += "=";
      out += format_double(rows[i][j].probability);
    }
  }
  return out;
}

TransitionTable TransitionTable::parse(std::string_view text, int max_phase_entries) {
  const std::string t = trim(text);
  if (t.empty() || to_lower(t) == "deterministic") {
    TransitionTable table = deterministic();
    table.max_phase_entries = max_phase_entries;
    return table;
  }

  std::array<std::vector<Edge>, kLoadStates> rows;
  std::array<bool, kLoadStates> seen{};
  for (const std::string& row_text : split(t, ';')) {
    if (trim(row_text).empty()) continue;
    auto colon = row_text.find(':');
    if (colon == std::string::npos) {
      throw ValidationError("transitions", "row missing ':': '" + trim(row_text) + "'");
    }
    const State from = parse_state(row_text.substr(0, colon));
    if (from == State::kDone) {
      throw ValidationError("transitions", "done has no outgoing transitions");
    }
    if (seen[state_index(from)]) {
      throw ValidationError("transitions",
                            "duplicate row for " + std::string(state_name(from)));
    }
    seen[state_index(from)] = true;
    std::vector<Edge> edges;
    for (const std::string& edge_text : split(row_text.substr(colon + 1), ',')) {
      if (trim(edge_text).empty()) continue;
      auto eq = edge_text.find('=');
      if (eq == std::string::npos) {
        throw ValidationError("transitions", "edge missing '=': '" + trim(edge_text) + "'");
      }
      Edge e;
      e.next = parse_state(edge_text.substr(0, eq));
      e.probability = parse_double(edge_text.substr(eq + 1), "transitions");
      edges.push_back(e);
    }
    rows[state_index(from)] = std::move(edges);
  }
  return probabilistic(std::move(rows), max_phase_entries);
}

State next_state(const TransitionTable& table, State current,
                 const VisitCounts& visits, Rng& rng) {
  if (current == State::kDone) {
    throw ContractError("next_state called with current=done");
  }
  const auto& row = table.rows[state_index(current)];
  if (table.kind == TransitionTable::Kind::kDeterministic) {
    return row.front().next;
  }
  const double u = rng.next_double();
  double cum = 0.0;
  State chosen = row.back().next;  // row sums to 1; back() absorbs fp slack
  for (const Edge& e : row) {
    cum += e.probability;
    if (u < cum) {
      chosen = e.next;
      break;
    }
  }
  if (chosen != State::kDone && visits[state_index(chosen)] >= table.max_phase_entries) {
    return State::kDone;
  }
  return chosen;
}

void JobSpec::validate() const {
  auto check_duration = [](double v, const char* field) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(field, "must be finite and >= 0, got " + format_double(v));
    }
  };
  check_duration(net_duration_s, "net_duration_s");
  check_duration(inter_packet_delay_ms, "inter_packet_delay_ms");
  check_duration(cpu_duration_s, "cpu_duration_s");
  if (!std::isfinite(cpu_util_factor) || cpu_util_factor < 0.0 || cpu_util_factor > 1.0) {
    throw ValidationError("cpu_util_factor",
                          "must be in [0,1], got " + format_double(cpu_util_factor));
  }
  if (mem_footprint_mib < 0) throw ValidationError("mem_footprint_mib", "must be >= 0");
  if (packet_size_b < 1) throw ValidationError("packet_size_b", "must be >= 1");
  if (job_id.empty()) throw ValidationError("job_id", "must not be empty");
  transitions.validate();
}

std::string JobSpec::serialize() const {
  std::string out;
  out += "job_id = " + job_id + "\n";
  out += "net_duration_s = " + format_double(net_duration_s) + "\n";
  out += "inter_packet_delay_ms = " + format_double(inter_packet_delay_ms) + "\n";
  out += "packet_sink = " + packet_sink + "\n";
  out += "packet_size_b = " + std::to_string(packet_size_b) + "\n";
  out += "mem_footprint_mib = " + std::to_string(mem_footprint_mib) + "\n";
  out += "cpu_duration_s = " + format_double(cpu_duration_s) + "\n";
  out += "cpu_util_factor = " + format_double(cpu_util_factor) + "\n";
  out += "seed = " + std::to_string(seed) + "\n";
  out += "transitions = " + transitions.serialize() + "\n";
  if (transitions.kind == TransitionTable::Kind::kProbabilistic) {
    out += "max_phase_entries = " + std::to_string(transitions.max_phase_entries) + "\n";
  }
  return out;
}

JobSpec parse_job_spec(std::string_view text,
                       std::span<const std::pair<std::string, std::string>> overrides) {
  KeyValueMap kv(parse_key_values(text));
  // Overrides replace file values field-by-field.
  std::vector<KeyValue> merged = kv.remaining();
  for (const auto& [key, value] : overrides) {
    merged.push_back({key, value, 0});
  }
  KeyValueMap map(std::move(merged));

  JobSpec spec;
  spec.job_id = map.take_or("job_id", spec.job_id);
  if (auto v = map.take("net_duration_s")) spec.net_duration_s = parse_double(*v, "net_duration_s");
  if (auto v = map.take("inter_packet_delay_ms")) {
    spec.inter_packet_delay_ms = parse_double(*v, "inter_packet_delay_ms");
  }
  spec.packet_sink = map.take_or("packet_sink", spec.packet_sink);
  if (auto v = map.take("packet_size_b")) spec.packet_size_b = parse_i64(*v, "packet_size_b");
  if (auto v = map.take("mem_footprint_mib")) {
    spec.mem_footprint_mib = parse_i64(*v, "mem_footprint_mib");
  }
  if (auto v = map.take("cpu_duration_s")) spec.cpu_duration_s = parse_double(*v, "cpu_duration_s");
  if (auto v = map.take("cpu_util_factor")) spec.cpu_util_factor = parse_double(*v, "cpu_util_factor");
  if (auto v = map.take("seed")) spec.seed = parse_u64(*v, "seed");

  int max_entries = 1000;
  if (auto v = map.take("max_phase_entries")) {
    max_entries = static_cast<int>(parse_i64(*v, "max_phase_entries"));
  }
  const std::string transitions_text = map.take_or("transitions", "deterministic");
  map.reject_unknown();

  spec.transitions = TransitionTable::parse(transitions_text, max_entries);
  spec.validate();
  return spec;
}

std::optional<double> JobReport::pct_diff() const {
  if (expected_s <= 0.0) return std::nullopt;
  return (observed_s - expected_s) / expected_s * 100.0;
}

std::string JobReport::csv_header() { return "job_id,expected_s,observed_s,pct_diff,states"; }

std::string JobReport::csv_row() const {
  std::string states;
  for (size_t i = 0; i < state_sequence.size(); ++i) {
    if (i > 0) states += "|";
    states += state_name(state_sequence[i]);
  }
  const auto pct = pct_diff();
  return csv_field(job_id) + "," + format_double(expected_s) + "," +
         format_double(observed_s) + "," + (pct ? format_double(*pct) : "na") + "," +
         csv_field(states);
}

bool MemoryArena::ensure_resident(int64_t footprint_mib) {
  const int64_t wanted = footprint_mib * 1024 * 1024;
  if (wanted > bytes_) {
    std::unique_ptr<unsigned char[]> block(new (std::nothrow) unsigned char[wanted]);
    if (!block) return false;
    block_ = std::move(block);
    bytes_ = wanted;
  }
  // Touch every page so the footprint is resident, not just reserved.
  unsigned char* p = block_.get();
  for (int64_t off = 0; off < bytes_; off += kPageBytes) p[off] = static_cast<unsigned char>(off);
  if (bytes_ > 0) p[bytes_ - 1] = 1;
  return true;
}

void MemoryArena::release() {
  block_.reset();
  bytes_ = 0;
}

PhaseEntry run_cpu_phase(double duration_s, double util_factor, double quantum_ms,
                         Rng& rng, const std::atomic<bool>* cancel) {
  PhaseEntry entry;
  entry.state = State::kCpuLoad;
  entry.planned_s = duration_s;
  if (duration_s <= 0.0) return entry;

  // Keep at least kMinQuanta slices per phase; 1 ms floor.
  double q_ms = std::min(quantum_ms, duration_s * 1000.0 / kMinQuanta);
  q_ms = std::max(q_ms, 1.0);
  const auto quantum = std::chrono::duration<double, std::milli>(q_ms);

  const auto start = steady_clock::now();
  const auto phase_end = start + std::chrono::duration<double>(duration_s);
  auto deadline = start;
  while (deadline < phase_end) {
    deadline += std::chrono::duration_cast<steady_clock::duration>(quantum);
    if (deadline > phase_end) deadline = phase_end;
    const bool busy = rng.bernoulli(util_factor);
    ++entry.total_quanta;
    entry.busy_quanta += busy ? 1 : 0;
    if (busy) {
      spin_until(deadline);
    } else {
      std::this_thread::sleep_until(deadline);
    }
    if (cancel && cancel->load(std::memory_order_relaxed)) {
      entry.error = "cancelled";
      break;
    }
  }
  entry.wall_s = elapsed_s(start);
  return entry;
}

PhaseEntry run_memory_phase(MemoryArena& arena, int64_t footprint_mib) {
  PhaseEntry entry;
  entry.state = State::kMemAlloc;
  entry.planned_s = 0.0;  // allocation time is intentionally unplanned
  const auto start = steady_clock::now();
  if (footprint_mib > 0) {
    if (!arena.ensure_resident(footprint_mib)) {
      entry.error = "allocation of " + std::to_string(footprint_mib) + " MiB failed";
    }
  }
  entry.resident_bytes = arena.bytes();
  entry.wall_s = elapsed_s(start);
  return entry;
}

PhaseEntry run_network_phase(double duration_s, double inter_packet_delay_ms,
                             const std::string& sink, int64_t packet_size_b,
                             const std::atomic<bool>* cancel) {
  PhaseEntry entry;
  entry.state = State::kNetLoad;
  entry.planned_s = duration_s;
  entry.bandwidth_bytes_per_s =
      inter_packet_delay_ms > 0.0 ? packet_size_b * 1000.0 / inter_packet_delay_ms : 0.0;
  if (duration_s <= 0.0) return entry;

  const auto start = steady_clock::now();
  const auto phase_end = start + std::chrono::duration<double>(duration_s);

  UdpEndpoint dest;
  UdpSocket socket;
  try {
    dest = UdpEndpoint::resolve(sink);
    socket = UdpSocket::open();
  } catch (const std::exception& e) {
    entry.error = e.what();
    entry.wall_s = elapsed_s(start);
    return entry;
  }

  const std::vector<unsigned char> payload(static_cast<size_t>(packet_size_b), 0xA5);
  const auto delay = std::chrono::duration<double, std::milli>(inter_packet_delay_ms);
  auto next_send = start;
  int64_t send_errors = 0;
  while (next_send < phase_end) {
    std::this_thread::sleep_until(next_send);
    if (!socket.send_to(dest, payload.data(), payload.size())) ++send_errors;
    ++entry.packets_sent;
    if (inter_packet_delay_ms <= 0.0) {
      next_send = steady_clock::now();  // unpaced: back-to-back
    } else {
      next_send += std::chrono::duration_cast<steady_clock::duration>(delay);
    }
    if (cancel && cancel->load(std::memory_order_relaxed)) {
      entry.error = "cancelled";
      break;
    }
  }
  // Hold the phase to its planned duration even when the last send lands
  // short of the boundary.
  std::this_thread::sleep_until(phase_end);
  if (send_errors > 0 && entry.error.empty()) {
    entry.error = std::to_string(send_errors) + " datagram sends failed";
  }
  entry.wall_s = elapsed_s(start);
  return entry;
}

JobReport run_job(const JobSpec& spec, const JobRunnerOptions& options) {
  spec.validate();
  if (spec.mem_footprint_mib > options.mem_cap_mib) {
    throw ValidationError("mem_footprint_mib",
                          std::to_string(spec.mem_footprint_mib) + " MiB exceeds the " +
                              std::to_string(options.mem_cap_mib) + " MiB safety cap");
  }

  // Independent streams so phase draws never perturb the state sequence.
  Rng transition_rng(derive_seed(spec.seed, 0));
  Rng phase_rng(derive_seed(spec.seed, 1));

  JobReport report;
  report.job_id = spec.job_id;

  MemoryArena arena;
  VisitCounts visits{};
  State state = State::kNetLoad;
  const auto start = steady_clock::now();

  while (true) {
    report.state_sequence.push_back(state);
    if (state == State::kDone) break;
    ++visits[static_cast<int>(state)];

    PhaseEntry entry;
    switch (state) {
      case State::kNetLoad:
        entry = run_network_phase(spec.net_duration_s, spec.inter_packet_delay_ms,
                                  spec.packet_sink, spec.packet_size_b, options.cancel);
        break;
      case State::kMemAlloc:
        entry = run_memory_phase(arena, spec.mem_footprint_mib);
        break;
      case State::kCpuLoad:
        entry = run_cpu_phase(spec.cpu_duration_s, spec.cpu_util_factor,
                              options.cpu_quantum_ms, phase_rng, options.cancel);
        break;
      case State::kDone:
        break;
    }
    report.expected_s += entry.planned_s;
    const bool alloc_failed = state == State::kMemAlloc && !entry.error.empty();
    const bool cancelled = entry.error == "cancelled";
    if (!entry.error.empty() && report.status == "ok") {
      report.status = std::string(state_name(state)) + ": " + entry.error;
    }
    report.phases.push_back(std::move(entry));
    if (alloc_failed || cancelled) {
      // Clean abort: close the walk with a complete report.
      report.state_sequence.push_back(State::kDone);
      break;
    }
    state = next_state(spec.transitions, state, visits, transition_rng);
  }

  report.observed_s = elapsed_s(start);
  return report;
}

}  // namespace loadforge
