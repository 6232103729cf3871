#pragma once

#include <optional>
#include <vector>

#include "misfill/ind.hpp"

namespace misfill {

/// Leaders visible in a snapshot, split by WAIT rank against the observer.
/// Only robots currently showing a WAIT color count as leaders.
struct DominationView {
  std::vector<CellIndex> dominators;
  std::vector<CellIndex> dominated;
  /// Robots mid-handshake (DIR or CONFC) other than our own successor. Their
  /// rank is hidden, so a leader that is not rank 1 treats them as dominators.
  std::vector<CellIndex> suspected;
};

struct MultindOptions {
  /// Observer radius for the 2-hop-ring check around a candidate target.
  std::uint32_t ring_radius = 3;
  /// Length bound for the path set toward a dominating leader.
  std::uint32_t path_bound = 5;
  /// Fill DominationView::suspected.
  bool suspect_handshakes = true;
  /// A dominated leader with a free vertex it may not take waits instead of
  /// handing over leadership.
  bool yield_when_dominated = true;
  /// Re-check the announced target before every handshake step.
  bool revalidate = true;
  /// Reject targets within this distance of a robot holding or receiving
  /// move directions (DIR, CONF, CONFC, CONF2), other than our successor.
  /// 0 disables the check.
  std::uint32_t pending_radius = 3;
};

DominationView domination_view(const RobotVars& vars, const Snapshot& snap,
                               const MultindOptions& opts = {});

/// Cells of robots that may be about to move two hops, excluding the
/// observer's own successor.
std::vector<CellIndex> pending_movers(const RobotVars& vars, const Snapshot& snap);

/// True when the vertex between the robot and a target has two or more
/// occupied neighbours (other than the robot) and at least one is not OFF.
bool cuts_chain(const Snapshot& snap, CellIndex mid, const std::vector<bool>& ignore = {});

/// Every acceptable target, in tie-break order.
std::vector<TwoHopPath> multind_targets(const RobotVars& vars, const Snapshot& snap,
                                        const MultindOptions& opts = {});

std::optional<TwoHopPath> multind_find_target(const RobotVars& vars, const Snapshot& snap,
                                              const MultindOptions& opts = {});

/// True when a leader should wait rather than give up: some free vertex is
/// blocked only by robots whose colors are about to change (handshakes,
/// stronger leaders, suspected leaders).
bool multind_should_yield(const RobotVars& vars, const Snapshot& snap,
                          const MultindOptions& opts = {});

StepResult multind_step(const RobotVars& vars, const Snapshot& snap,
                        const MultindOptions& opts = {});

}  // namespace misfill
