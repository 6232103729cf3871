#include "misfill/multind.hpp"

#include <algorithm>

namespace misfill {

DominationView domination_view(const RobotVars& vars, const Snapshot& snap,
                               const MultindOptions& opts) {
  DominationView view;
  const Color mine = Color::wait(vars.door_rank);
  std::optional<CellIndex> successor;
  if (auto p = successor_position(vars)) successor = snap.follow(*p);
  for (std::size_t i = 1; i < snap.size(); ++i) {
    const auto& occ = snap.cells()[i].occupant;
    if (!occ) continue;
    const auto cell = static_cast<CellIndex>(i);
    if (occ->color.is(ColorKind::Wait)) {
      if (dominates(occ->color, mine)) view.dominators.push_back(cell);
      if (dominates(mine, occ->color)) view.dominated.push_back(cell);
    } else if (opts.suspect_handshakes && vars.door_rank > 1 && cell != successor &&
               (occ->color.is(ColorKind::Dir) || occ->color.is(ColorKind::ConfC))) {
      view.suspected.push_back(cell);
    }
  }
  return view;
}

std::vector<CellIndex> pending_movers(const RobotVars& vars, const Snapshot& snap) {
  std::optional<CellIndex> successor;
  if (auto p = successor_position(vars)) successor = snap.follow(*p);
  std::vector<CellIndex> out;
  for (std::size_t i = 1; i < snap.size(); ++i) {
    const auto& occ = snap.cells()[i].occupant;
    if (!occ || static_cast<CellIndex>(i) == successor) continue;
    switch (occ->color.kind) {
      case ColorKind::Dir:
      case ColorKind::Conf:
      case ColorKind::ConfC:
      case ColorKind::Conf2: out.push_back(static_cast<CellIndex>(i)); break;
      default: break;
    }
  }
  return out;
}

bool cuts_chain(const Snapshot& snap, CellIndex mid, const std::vector<bool>& ignore) {
  std::size_t occupied = 0;
  bool active = false;
  for (const auto& cp : snap.cell(mid).ports) {
    if (cp.cell == kOutside || cp.cell == 0) continue;
    const auto& occ = snap.cell(cp.cell).occupant;
    if (!occ || (static_cast<std::size_t>(cp.cell) < ignore.size() && ignore[cp.cell])) continue;
    ++occupied;
    active = active || !occ->color.is(ColorKind::Off);
  }
  return occupied >= 2 && active;
}

std::vector<TwoHopPath> multind_targets(const RobotVars& vars, const Snapshot& snap,
                                        const MultindOptions& opts) {
  std::vector<TwoHopPath> out;
  const auto view = domination_view(vars, snap, opts);
  std::vector<bool> forbidden(snap.size(), false);
  std::vector<bool> weaker(snap.size(), false);
  for (auto c : view.dominated) weaker[static_cast<std::size_t>(c)] = true;
  auto stronger = view.dominators;
  stronger.insert(stronger.end(), view.suspected.begin(), view.suspected.end());
  for (auto dom : stronger) {
    auto on_path = snap.local_path_set(0, dom, opts.path_bound);
    for (std::size_t i = 0; i < on_path.size(); ++i)
      if (on_path[i]) forbidden[i] = true;
  }
  const auto movers = opts.pending_radius ? pending_movers(vars, snap) : std::vector<CellIndex>{};
  for (const auto& c : free_candidates(snap)) {
    if (forbidden[static_cast<std::size_t>(c.end)]) continue;
    if (!movers.empty()) {
      const auto d = snap.local_distances(c.end);
      const bool near = std::any_of(movers.begin(), movers.end(), [&](CellIndex m) {
        return d[static_cast<std::size_t>(m)] <= opts.pending_radius;
      });
      if (near) continue;
    }
    if (cuts_chain(snap, c.mid)) continue;
    if (!two_hop_ring_clear(snap, c.end, opts.ring_radius, weaker)) continue;
    out.push_back(c.path);
  }
  return out;
}

std::optional<TwoHopPath> multind_find_target(const RobotVars& vars, const Snapshot& snap,
                                              const MultindOptions& opts) {
  auto all = multind_targets(vars, snap, opts);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool multind_should_yield(const RobotVars& vars, const Snapshot& snap,
                          const MultindOptions& opts) {
  if (!opts.yield_when_dominated) return false;
  // While our chain is packed it shows only CONF3 (ON at the door), so any
  // other active color belongs to a robot that will change soon.
  std::vector<bool> transient(snap.size(), false);
  bool any = false;
  for (std::size_t i = 1; i < snap.size(); ++i) {
    const auto& occ = snap.cells()[i].occupant;
    if (!occ) continue;
    const auto k = occ->color.kind;
    if (k == ColorKind::Off || k == ColorKind::Conf3 || k == ColorKind::On) continue;
    if (k == ColorKind::Wait && !dominates(occ->color, Color::wait(vars.door_rank))) continue;
    transient[i] = true;
    any = true;
  }
  if (!any) return false;
  for (const auto& c : free_candidates(snap))
    if (!cuts_chain(snap, c.mid, transient) &&
        two_hop_ring_clear(snap, c.end, opts.ring_radius, transient))
      return true;
  return false;
}

StepResult multind_step(const RobotVars& vars, const Snapshot& snap, const MultindOptions& opts) {
  ChainRules rules{
      [opts](const RobotVars& v, const Snapshot& s) { return multind_find_target(v, s, opts); },
      [opts](const RobotVars& v, const Snapshot& s) { return multind_find_target(v, s, opts); },
      true,
      nullptr,
      [opts](const RobotVars& v, const Snapshot& s) { return multind_should_yield(v, s, opts); }};
  if (opts.revalidate) {
    // Pending movers were already excluded when the target was chosen; a
    // second look would make two simultaneous leaders abort each other.
    MultindOptions recheck = opts;
    recheck.pending_radius = 0;
    rules.still_valid = [recheck](const RobotVars& v, const Snapshot& s, const TwoHopPath& p) {
      auto all = multind_targets(v, s, recheck);
      return std::find(all.begin(), all.end(), p) != all.end();
    };
  }
  return chain_step(vars, snap, rules);
}

}  // namespace misfill
