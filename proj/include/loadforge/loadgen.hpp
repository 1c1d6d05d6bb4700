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

// State-machine workload emulator.
//
// A job walks a transition table over {NetLoad, MemAlloc, CpuLoad, Done} and
// stresses the corresponding subsystem in each state: paced UDP datagrams,
// a page-touched resident allocation, and a Bernoulli busy/sleep duty cycle.
// All randomness comes from the job seed, so equally seeded runs realize the
// same state sequence and the same planned parameters; only wall times vary.

#ifndef LOADFORGE_LOADGEN_HPP_
#define LOADFORGE_LOADGEN_HPP_

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loadforge/rng.hpp"

namespace loadforge {

enum class State { kNetLoad = 0, kMemAlloc = 1, kCpuLoad = 2, kDone = 3 };

inline constexpr int kLoadStates = 3;  // states with outgoing transitions

std::string_view state_name(State s);               // "netload", "memalloc", ...
State parse_state(std::string_view name);           // case-insensitive

// Successor rules for the three load states. Done is absorbing and has no
// row. Deterministic tables encode exactly NetLoad -> MemAlloc -> CpuLoad ->
// Done; probabilistic tables sample a per-state row of (next, probability)
// whose probabilities must sum to 1 within 1e-9.
struct TransitionTable {
  enum class Kind { kDeterministic, kProbabilistic };

  struct Edge {
    State next = State::kDone;
    double probability = 1.0;
    bool operator==(const Edge&) const = default;
  };

  Kind kind = Kind::kDeterministic;
  std::array<std::vector<Edge>, kLoadStates> rows;  // indexed by State value
  // Per-state visit cap for probabilistic tables; once a sampled successor
  // has been entered this many times the walk ends at Done instead.
  int max_phase_entries = 1000;

  static TransitionTable deterministic();
  static TransitionTable probabilistic(std::array<std::vector<Edge>, kLoadStates> rows,
                                       int max_phase_entries);

  void validate() const;
  std::string serialize() const;  // canonical inline row syntax
  // Parses "deterministic" or "netload: memalloc=0.8, done=0.2; ...".
  static TransitionTable parse(std::string_view text, int max_phase_entries = 1000);

  bool operator==(const TransitionTable&) const = default;
};

// Entries-so-far per load state; the walk updates this as states are entered.
using VisitCounts = std::array<int, kLoadStates>;

// Samples the successor of `current`. Throws ContractError when current is
// Done. For probabilistic tables a sampled successor whose visit count has
// reached max_phase_entries yields Done.
State next_state(const TransitionTable& table, State current,
                 const VisitCounts& visits, Rng& rng);

struct JobSpec {
  std::string job_id = "job";
  double net_duration_s = 0.0;
  double inter_packet_delay_ms = 10.0;
  std::string packet_sink = "127.0.0.1:8750";
  int64_t packet_size_b = 1024;
  int64_t mem_footprint_mib = 0;
  double cpu_duration_s = 0.0;
  double cpu_util_factor = 1.0;
  uint64_t seed = 0;
  TransitionTable transitions = TransitionTable::deterministic();

  void validate() const;        // throws ValidationError naming the field
  std::string serialize() const;  // canonical parameter file text

  bool operator==(const JobSpec&) const = default;
};

// Parses the documented parameter-file format, then applies overrides
// field-by-field (an override replaces the file's value for that key).
JobSpec parse_job_spec(std::string_view text,
                       std::span<const std::pair<std::string, std::string>> overrides = {});

struct PhaseEntry {
  State state = State::kDone;
  double planned_s = 0.0;  // contribution to the job's expected duration
  double wall_s = 0.0;
  // CpuLoad
  int busy_quanta = 0;
  int total_quanta = 0;
  // NetLoad
  int64_t packets_sent = 0;
  double bandwidth_bytes_per_s = 0.0;
  // MemAlloc
  int64_t resident_bytes = 0;
  std::string error;  // empty on success

  double busy_fraction() const {
    return total_quanta > 0 ? static_cast<double>(busy_quanta) / total_quanta : 0.0;
  }
};

struct JobReport {
  std::string job_id;
  double expected_s = 0.0;
  double observed_s = 0.0;
  std::vector<PhaseEntry> phases;
  std::vector<State> state_sequence;  // initial state ... Done
  std::string status = "ok";          // "ok" or first recorded error

  // (observed - expected) / expected * 100; empty when expected == 0.
  std::optional<double> pct_diff() const;

  static std::string csv_header();  // job_id,expected_s,observed_s,pct_diff,states
  std::string csv_row() const;
};

// Tunables that belong to the run environment rather than the job.
struct JobRunnerOptions {
  double cpu_quantum_ms = 100.0;
  int64_t mem_cap_mib = 2048;   // MemAlloc footprints above this are rejected
  // Optional cooperative cancel, polled at most once per quantum.
  const std::atomic<bool>* cancel = nullptr;
};

// Job-lifetime allocation for MemAlloc phases. Pages are touched after
// allocation so the footprint is resident, and the block is retained until
// the arena is destroyed at job end.
class MemoryArena {
 public:
  // Grows to at least `footprint_mib` and touches every page. Returns false
  // on allocation failure (the arena stays usable).
  bool ensure_resident(int64_t footprint_mib);
  int64_t bytes() const { return bytes_; }
  void release();

 private:
  std::unique_ptr<unsigned char[]> block_;
  int64_t bytes_ = 0;
};

// Bernoulli duty cycle: each quantum is spent busy with probability
// util_factor, else asleep. The quantum is clamped so a non-empty phase has
// at least 10 slices. Wall time lands within one quantum of `duration_s`.
PhaseEntry run_cpu_phase(double duration_s, double util_factor, double quantum_ms,
                         Rng& rng, const std::atomic<bool>* cancel = nullptr);

// Allocates and touches `footprint_mib` in `arena`. Allocation failure is
// recorded in the entry's error, not thrown.
PhaseEntry run_memory_phase(MemoryArena& arena, int64_t footprint_mib);

// Sends fixed-size UDP datagrams to `sink` ("host:port"), one per delay
// interval, then sleeps out the remainder of `duration_s`. A zero delay
// sends back-to-back. An unresolvable sink records a phase error and
// returns without emulating the transfer.
PhaseEntry run_network_phase(double duration_s, double inter_packet_delay_ms,
                             const std::string& sink, int64_t packet_size_b,
                             const std::atomic<bool>* cancel = nullptr);

// Drives the state machine from NetLoad to Done. Phase errors are recorded
// and the walk continues; a MemAlloc allocation failure ends the job cleanly
// with a complete report. expected_s sums the planned durations along the
// realized sequence.
JobReport run_job(const JobSpec& spec, const JobRunnerOptions& options = {});

}  // namespace loadforge

#endif  // LOADFORGE_LOADGEN_HPP_
