#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "misfill/graph.hpp"
#include "misfill/multind.hpp"
#include "misfill/robot.hpp"

namespace misfill {

enum class SchedulerKind { FSync, SSync, ASync };
enum class ActivationKind { RoundRobin, SeededRandom, Scripted };
enum class Protocol { Ind, Multind };

std::string to_string(SchedulerKind k);
std::string to_string(ActivationKind k);
std::string to_string(Protocol p);
std::optional<SchedulerKind> parse_scheduler(const std::string& s);
std::optional<ActivationKind> parse_activation(const std::string& s);
std::optional<Protocol> parse_protocol(const std::string& s);

/// How the adversary activates robots.
///
/// SSYNC: RoundRobin activates one robot per round in id order; SeededRandom
/// activates each robot with probability 1/2 and forces any robot idle for
/// `fairness_bound` rounds; Scripted plays `rounds` (robot ids per round) and
/// then falls back to activating everyone.
///
/// ASYNC: every phase transition (Look to Compute, Compute to first hop, hop
/// to hop, end of cycle to next Look) waits a delay in [1, max_delay].
/// RoundRobin uses 1 everywhere, SeededRandom draws uniformly, Scripted cycles
/// through `delays`.
struct SchedulerPolicy {
  SchedulerKind kind = SchedulerKind::FSync;
  ActivationKind activation = ActivationKind::RoundRobin;
  std::uint64_t seed = 0;
  std::uint32_t fairness_bound = 4;
  std::uint32_t max_delay = 5;
  std::vector<std::vector<std::uint32_t>> rounds;
  std::vector<std::uint32_t> delays;

  bool operator==(const SchedulerPolicy&) const = default;
};

struct SimulationConfig {
  Protocol protocol = Protocol::Ind;
  /// Visibility radius; 0 selects the protocol default (3 for IND, 5 for MULTIND).
  std::uint32_t visibility = 0;
  /// 0 selects 64 * (n^2 + n).
  std::uint64_t max_ticks = 0;
  MultindOptions multind;

  std::uint32_t effective_visibility() const;
  std::uint64_t effective_max_ticks(std::size_t n) const;
  bool operator==(const SimulationConfig&) const = default;
};

enum class EventKind {
  Spawn,
  Look,
  ComputeDone,
  MoveStart,
  Hop,
  MoveEnd,
  ColorChange,
  StateChange,
  Finish,
  Collision,
  Halt,
};

std::string to_string(EventKind k);
std::optional<EventKind> parse_event_kind(const std::string& s);

struct TraceEvent {
  std::uint64_t tick = 0;
  std::uint32_t robot = 0;
  EventKind kind = EventKind::Look;
  VertexId vertex = 0;
  std::string detail;
  bool operator==(const TraceEvent&) const = default;
};

/// Run parameters recorded at the top of every trace so a run can be replayed.
struct TraceHeader {
  Protocol protocol = Protocol::Ind;
  SchedulerPolicy policy;
  std::uint32_t visibility = 3;
  std::uint64_t max_ticks = 0;
  std::size_t vertices = 0;
  std::vector<VertexId> door_vertices;
  bool operator==(const TraceHeader&) const = default;
};

struct Trace {
  TraceHeader header;
  std::vector<TraceEvent> events;
  bool operator==(const Trace&) const = default;
};

/// One JSON object per line: the header first, then one line per event.
std::string to_jsonl(const Trace& trace);
Trace parse_jsonl(const std::string& text);

struct Outcome {
  bool terminated = false;
  std::vector<VertexId> final_occupied;
  std::size_t mis_size = 0;
  std::size_t epochs = 0;
  std::size_t collision_count = 0;
  std::uint64_t ticks = 0;
  Trace trace;
};

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Executes LCM cycles until every robot is Finished and every door is held by
/// a Finished robot, a collision halts the run, or max_ticks is reached (in
/// which case `terminated` is false).
Outcome run(const DoorGraph& dg, const SchedulerPolicy& policy, const SimulationConfig& cfg);

/// Greedy epoch segmentation of a trace.
std::size_t compute_epochs(const Trace& trace);

/// Tick at which each epoch ends, in order. The last entry may close a
/// trailing partial epoch.
std::vector<std::uint64_t> epoch_boundaries(const Trace& trace);

struct ReplayResult {
  bool identical = false;
  std::optional<std::size_t> first_divergence;  // event index
  std::string description;
};

/// Re-runs with the policy recorded in the trace header and compares events.
ReplayResult replay(const Trace& trace, const DoorGraph& dg, const SimulationConfig& cfg);

/// Occupancy after every event up to and including `tick`.
std::vector<std::optional<std::string>> occupancy_at(const Trace& trace, std::size_t vertices,
                                                     std::uint64_t tick);

/// Graphviz rendering of the configuration at the end of each epoch.
std::vector<std::string> render_frames(const Trace& trace, const DoorGraph& dg);

}  // namespace misfill
