#include "misfill/ind.hpp"

namespace misfill {

namespace {

StepResult unchanged(const RobotVars& vars) { return {vars, Action::stay(), ""}; }

StepResult finish(RobotVars vars, const char* note) {
  vars.color = Color::off();
  vars.state = RobotState::Finished;
  vars.target.reset();
  return {vars, Action::stay(), note};
}

std::optional<Color> color_at(const Snapshot& snap, const std::optional<TwoHopPath>& p) {
  if (!p) return std::nullopt;
  auto occ = occupant_at(snap, *p);
  if (!occ) return std::nullopt;
  return occ->color;
}

StepResult none_branch(const RobotVars& vars, const Snapshot& snap, const ChainRules& rules) {
  if (!vars.color.is(ColorKind::On)) return unchanged(vars);

  bool any_near = false;
  bool all_off = true;
  bool active_in_view = false;
  for (std::size_t i = 1; i < snap.size(); ++i) {
    const auto& c = snap.cells()[i];
    if (!c.occupant) continue;
    const bool off = c.occupant->color.is(ColorKind::Off);
    active_in_view = active_in_view || !off;
    if (c.dist > 2) continue;
    any_near = true;
    all_off = all_off && off;
  }

  if (!any_near) {
    RobotVars out = vars;
    out.state = RobotState::Leader;
    // With ranked leaders, rivals must see our rank before we pick a target.
    if (rules.ranked_wait && active_in_view) {
      out.color = wait_color_for(vars, true);
      return {out, Action::stay(), "claim"};
    }
    if (auto t = rules.find_first_target(out, snap)) {
      out.target = t;
      out.color = Color::mov();
      return {out, Action::go(*t), "lead"};
    }
    return finish(out, "finish");
  }

  // A door's first robot never has a predecessor; whatever it sees belongs
  // to another door's chain. It waits for that chain to settle.
  if (vars.first_at_door || all_off) {
    if (all_off) return finish(vars, "blocked");
    return {vars, Action::stay(), "blocked-wait"};
  }

  auto pred = resolve_predecessor(snap);
  if (!pred || pred->size() != 2) return {vars, Action::stay(), "pred-moving"};

  RobotVars out = vars;
  out.state = RobotState::Follower;
  out.predecessor = TwoHopPath{(*pred)[0], (*pred)[1]};
  auto pc = color_at(snap, out.predecessor);
  if (pc && *pc == wait_color_for(vars, rules.ranked_wait)) out.color = Color::conf3();
  return {out, Action::stay(), "follow"};
}

StepResult leader_branch(const RobotVars& vars, const Snapshot& snap, const ChainRules& rules) {
  if (vars.target) {
    if (rules.still_valid && vars.has_successor && !rules.still_valid(vars, snap, *vars.target)) {
      RobotVars out = vars;
      out.target.reset();
      out.color = wait_color_for(vars, rules.ranked_wait);
      return {out, Action::stay(), "abort"};
    }
    return communicate_substep(vars, snap);
  }
  if (vars.color.is(ColorKind::Dir)) return leadership_transfer_substep(vars, snap);

  if (vars.has_successor) {
    auto sc = color_at(snap, successor_position(vars));
    if (!sc || !sc->is(ColorKind::Conf3)) return packed_state_substep(vars, snap);
  }
  if (auto t = rules.find_target(vars, snap)) {
    RobotVars out = vars;
    out.target = t;
    auto r = communicate_substep(out, snap);
    if (r.note.empty()) r.note = "target";
    return r;
  }
  if (rules.should_yield && rules.should_yield(vars, snap)) return {vars, Action::stay(), "yield"};
  return leadership_transfer_substep(vars, snap);
}

// The predecessor went back to WAIT before moving: forget the directions.
StepResult reset_handshake(RobotVars vars) {
  vars.next_target = {};
  vars.color = Color::conf3();
  return {vars, Action::stay(), "reset"};
}

StepResult follower_branch(const RobotVars& vars, const Snapshot& snap, const ChainRules& rules) {
  if (!vars.predecessor) throw ProtocolViolation("follower without predecessor");
  if (vars.color.is(ColorKind::On)) {
    RobotVars out = vars;
    out.color = Color::conf3();
    return {out, Action::stay(), "ready"};
  }
  if (!vars.next_target.complete()) {
    if (vars.color.is(ColorKind::Mov)) return packed_state_substep(vars, snap);
    const Color wait = wait_color_for(vars, rules.ranked_wait);
    if (vars.next_target.one && color_at(snap, vars.predecessor) == wait)
      return reset_handshake(vars);
    return receive_substep(vars, snap, wait);
  }
  RobotVars out = vars;
  if (!out.target) {
    if (auto occ = occupant_at(snap, *vars.predecessor)) {
      if (occ->color == wait_color_for(vars, rules.ranked_wait)) return reset_handshake(vars);
      return unchanged(vars);
    }
    out.target = vars.predecessor;
  }
  return communicate_substep(out, snap);
}

}  // namespace

Color wait_color_for(const RobotVars& vars, bool ranked) {
  return Color::wait(ranked ? vars.door_rank : 1);
}

std::optional<Occupant> occupant_at(const Snapshot& snap, const TwoHopPath& p) {
  auto c = snap.follow(p);
  if (!c) return std::nullopt;
  return snap.cell(*c).occupant;
}

std::vector<Candidate> free_candidates(const Snapshot& snap) {
  std::vector<Candidate> out;
  const auto& self = snap.cell(0);
  for (std::size_t one = 1; one <= self.ports.size(); ++one) {
    const CellIndex mid = self.ports[one - 1].cell;
    if (mid == kOutside || snap.cell(mid).occupied()) continue;
    const auto& m = snap.cell(mid);
    for (std::size_t two = 1; two <= m.ports.size(); ++two) {
      const CellIndex end = m.ports[two - 1].cell;
      if (end == kOutside || end == 0) continue;
      const auto& e = snap.cell(end);
      if (e.dist != 2 || e.occupied()) continue;
      bool free = true;
      for (const auto& cp : e.ports)
        if (cp.cell != kOutside && snap.cell(cp.cell).occupied()) free = false;
      if (!free) continue;
      out.push_back({{static_cast<Port>(one), static_cast<Port>(two)}, mid, end});
    }
  }
  return out;
}

bool two_hop_ring_clear(const Snapshot& snap, CellIndex v, std::uint32_t radius,
                        const std::vector<bool>& ignore) {
  const auto d = snap.local_distances(v);
  for (std::size_t u = 1; u < snap.size(); ++u) {
    const auto& c = snap.cells()[u];
    if (d[u] != 2 || c.dist > radius || !c.occupant) continue;
    if (u < ignore.size() && ignore[u]) continue;
    if (!c.occupant->color.is(ColorKind::Off)) return false;
  }
  return true;
}

std::optional<TwoHopPath> select_target(const RobotVars&, const Snapshot& snap,
                                        std::uint32_t check_radius) {
  for (const auto& c : free_candidates(snap))
    if (two_hop_ring_clear(snap, c.end, check_radius)) return c.path;
  return std::nullopt;
}

std::optional<TwoHopPath> select_first_target(const RobotVars&, const Snapshot& snap) {
  auto cs = free_candidates(snap);
  if (cs.empty()) return std::nullopt;
  return cs.front().path;
}

StepResult communicate_substep(const RobotVars& vars, const Snapshot& snap) {
  if (!vars.target) throw ProtocolViolation("communicate without target");
  RobotVars out = vars;
  if (!vars.has_successor) {
    out.color = Color::mov();
    return {out, Action::go(*vars.target), "move"};
  }
  auto sc = color_at(snap, successor_position(vars));
  if (!sc) return {out, Action::stay(), ""};
  switch (sc->kind) {
    case ColorKind::Conf3: out.color = Color::dir(vars.target->one); break;
    case ColorKind::Conf: out.color = Color::confc(); break;
    case ColorKind::ConfC: out.color = Color::dir(vars.target->two); break;
    case ColorKind::Conf2:
      out.color = Color::mov();
      return {out, Action::go(*vars.target), "move"};
    default: break;
  }
  return {out, Action::stay(), ""};
}

StepResult receive_substep(const RobotVars& vars, const Snapshot& snap, Color wait_color) {
  if (!vars.predecessor) throw ProtocolViolation("receive without predecessor");
  auto pc = color_at(snap, vars.predecessor);
  if (!pc) return unchanged(vars);
  RobotVars out = vars;
  if (!vars.next_target.one) {
    if (vars.color.is(ColorKind::Conf3) && pc->is(ColorKind::Dir)) {
      out.next_target.one = pc->arg;
      out.color = Color::conf();
      return {out, Action::stay(), "recv1"};
    }
  } else if (!vars.next_target.two) {
    if (vars.color.is(ColorKind::Conf) && pc->is(ColorKind::ConfC)) {
      out.color = Color::confc();
      return {out, Action::stay(), ""};
    }
    if (vars.color.is(ColorKind::Conf) && pc->is(ColorKind::Off)) {
      // The first DIR pointed back at us: the predecessor handed over.
      out.state = RobotState::Leader;
      out.color = wait_color;
      out.next_target = {};
      out.predecessor.reset();
      return {out, Action::stay(), "promoted"};
    }
    if (vars.color.is(ColorKind::ConfC) && pc->is(ColorKind::Dir)) {
      out.next_target.two = pc->arg;
      out.color = Color::conf2();
      return {out, Action::stay(), "recv2"};
    }
  }
  return unchanged(vars);
}

StepResult packed_state_substep(const RobotVars& vars, const Snapshot& snap) {
  auto sc = color_at(snap, successor_position(vars));
  if (!sc) return unchanged(vars);
  if (vars.color.is(ColorKind::Mov) && (sc->is(ColorKind::On) || sc->is(ColorKind::Conf3))) {
    RobotVars out = vars;
    out.color = Color::conf3();
    return {out, Action::stay(), "packed"};
  }
  return unchanged(vars);
}

StepResult leadership_transfer_substep(const RobotVars& vars, const Snapshot& snap) {
  if (!vars.has_successor || !vars.entry) return finish(vars, "finish");
  if (!vars.color.is(ColorKind::Dir)) {
    RobotVars out = vars;
    out.color = Color::dir(vars.entry->back.one);
    return {out, Action::stay(), "transfer"};
  }
  auto sc = color_at(snap, successor_position(vars));
  if (sc && sc->is(ColorKind::Conf)) return finish(vars, "handoff");
  return unchanged(vars);
}

StepResult chain_step(const RobotVars& vars, const Snapshot& snap, const ChainRules& rules) {
  switch (vars.state) {
    case RobotState::Finished: return unchanged(vars);
    case RobotState::None: return none_branch(vars, snap, rules);
    case RobotState::Leader: return leader_branch(vars, snap, rules);
    case RobotState::Follower: return follower_branch(vars, snap, rules);
  }
  return unchanged(vars);
}

StepResult ind_step(const RobotVars& vars, const Snapshot& snap) {
  static const ChainRules rules{
      [](const RobotVars& v, const Snapshot& s) { return select_target(v, s, 3); },
      [](const RobotVars& v, const Snapshot& s) { return select_first_target(v, s); },
      false,
      {},
      {}};
  return chain_step(vars, snap, rules);
}

}  // namespace misfill
