#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "misfill/robot.hpp"
#include "misfill/snapshot.hpp"

namespace misfill {

/// Raised when a snapshot contradicts the robot's own handshake state. It
/// signals a simulator defect, never a robot decision.
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Action {
  std::optional<TwoHopPath> move;  // empty means Stay

  static Action stay() { return {}; }
  static Action go(TwoHopPath p) { return {p}; }
  bool is_move() const noexcept { return move.has_value(); }
  bool operator==(const Action&) const = default;
};

struct StepResult {
  RobotVars vars;
  Action action;
  std::string note;  // short tag for traces: "target", "transfer", ...
  bool operator==(const StepResult&) const = default;
};

using TargetFinder =
    std::function<std::optional<TwoHopPath>(const RobotVars&, const Snapshot&)>;

/// The shape shared by IND and MULTIND: which WAIT color a leader shows, how a
/// packed leader picks its next target, and how a fresh leader picks its first.
struct ChainRules {
  TargetFinder find_target;
  TargetFinder find_first_target;
  bool ranked_wait = false;  // WAIT(door_rank) instead of WAIT(1)
  /// When set, a leader re-checks its announced target every activation and
  /// aborts the handshake if the check fails.
  std::function<bool(const RobotVars&, const Snapshot&, const TwoHopPath&)> still_valid;
  /// When set and true, a leader without a target stays in WAIT instead of
  /// handing over leadership.
  std::function<bool(const RobotVars&, const Snapshot&)> should_yield;
};

/// One Compute phase of a chain robot under `rules`. Pure.
StepResult chain_step(const RobotVars& vars, const Snapshot& snap, const ChainRules& rules);

/// IND: one Compute phase for a robot with 3-hop visibility.
StepResult ind_step(const RobotVars& vars, const Snapshot& snap);

/// A packed leader's next target: a free, unoccupied vertex two hops away
/// whose 2-hop neighbours within `check_radius` of the robot hold no active
/// robot. Lexicographically least (one, two) wins.
std::optional<TwoHopPath> select_target(const RobotVars& vars, const Snapshot& snap,
                                        std::uint32_t check_radius = 3);

/// The free-vertex-only condition used by the first robot of a door.
std::optional<TwoHopPath> select_first_target(const RobotVars& vars, const Snapshot& snap);

// Sub-protocols. Each returns the input unchanged (Stay) when its guards fail.
StepResult communicate_substep(const RobotVars& vars, const Snapshot& snap);
StepResult receive_substep(const RobotVars& vars, const Snapshot& snap, Color wait_color);
StepResult packed_state_substep(const RobotVars& vars, const Snapshot& snap);
StepResult leadership_transfer_substep(const RobotVars& vars, const Snapshot& snap);

/// The WAIT color a robot of `vars.door_rank` shows under `rules`.
Color wait_color_for(const RobotVars& vars, bool ranked);

/// Occupant of the cell reached by `p`, if it is visible and occupied.
std::optional<Occupant> occupant_at(const Snapshot& snap, const TwoHopPath& p);

/// Two-hop candidates (one, two) in lexicographic order whose end vertex is at
/// distance two, unoccupied and free, and whose intermediate vertex is empty.
struct Candidate {
  TwoHopPath path;
  CellIndex mid = 0;
  CellIndex end = 0;
};
std::vector<Candidate> free_candidates(const Snapshot& snap);

/// True when every cell at local distance 2 from `v`, within `radius` of the
/// observer and other than the observer, is empty or holds an OFF robot.
bool two_hop_ring_clear(const Snapshot& snap, CellIndex v, std::uint32_t radius,
                        const std::vector<bool>& ignore = {});

}  // namespace misfill
