#include "misfill/verifier.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

#include <json.hpp>

namespace misfill {

bool is_independent(const PortGraph& g, const std::vector<VertexId>& s) {
  std::vector<bool> in(g.size(), false);
  for (auto v : s) in[v] = true;
  for (auto v : s)
    for (const auto& l : g.links(v))
      if (in[l.neighbor]) return false;
  return true;
}

bool is_maximal_independent(const PortGraph& g, const std::vector<VertexId>& s) {
  if (!is_independent(g, s)) return false;
  std::vector<bool> in(g.size(), false);
  for (auto v : s) in[v] = true;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (in[v]) continue;
    const auto& ls = g.links(v);
    if (std::none_of(ls.begin(), ls.end(), [&](const Link& l) { return in[l.neighbor]; }))
      return false;
  }
  return true;
}

namespace {

using Mask = std::uint32_t;

// Bron-Kerbosch with pivoting on the complement graph: maximal cliques there
// are exactly the maximal independent sets here.
void bron_kerbosch(const std::vector<Mask>& non_adj, Mask r, Mask p, Mask x,
                   std::vector<Mask>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  const Mask px = p | x;
  int pivot = __builtin_ctz(px);
  std::size_t best = 0;
  for (Mask m = px; m; m &= m - 1) {
    const int u = __builtin_ctz(m);
    const auto c = static_cast<std::size_t>(__builtin_popcount(p & non_adj[u]));
    if (c >= best) {
      best = c;
      pivot = u;
    }
  }
  for (Mask m = p & ~non_adj[pivot]; m; m &= m - 1) {
    const int v = __builtin_ctz(m);
    const Mask bit = Mask{1} << v;
    bron_kerbosch(non_adj, r | bit, p & non_adj[v], x & non_adj[v], out);
    p &= ~bit;
    x |= bit;
  }
}

}  // namespace

std::vector<std::vector<VertexId>> enumerate_mis(const PortGraph& g) {
  const std::size_t n = g.size();
  if (n > kMaxEnumerate)
    throw GraphTooLarge("enumerate_mis: " + std::to_string(n) + " vertices exceeds " +
                        std::to_string(kMaxEnumerate));
  if (n == 0) return {{}};
  const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<Mask> non_adj(n);
  for (VertexId v = 0; v < n; ++v) {
    Mask adj = Mask{1} << v;
    for (const auto& l : g.links(v)) adj |= Mask{1} << l.neighbor;
    non_adj[v] = all & ~adj;
  }
  std::vector<Mask> found;
  bron_kerbosch(non_adj, 0, all, 0, found);
  std::vector<std::vector<VertexId>> out;
  for (Mask m : found) {
    std::vector<VertexId> s;
    for (VertexId v = 0; v < n; ++v)
      if (m >> v & 1) s.push_back(v);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Warn: return "warn";
    case CheckStatus::NotEvaluated: return "not-evaluated";
  }
  return "?";
}

namespace {

struct RobotInfo {
  std::size_t door = 0;  // rank, 1-based
  VertexId at = 0;
  RobotState state = RobotState::None;
  std::string color = "ON";
  bool in_transit = false;
  bool moved = false;
  VertexId last_source = 0;
  VertexId last_mid = 0;
};

struct MoveInfo {
  VertexId mid = 0;
  VertexId to = 0;
};

std::optional<MoveInfo> parse_move(const std::string& detail) {
  MoveInfo m;
  unsigned long mid = 0, to = 0;
  if (std::sscanf(detail.c_str(), "mid=%lu to=%lu", &mid, &to) != 2) return std::nullopt;
  m.mid = static_cast<VertexId>(mid);
  m.to = static_cast<VertexId>(to);
  return m;
}

std::string note_of(const std::string& detail) { return detail.substr(0, detail.find('|')); }

// Robot positions, states and colors as the trace unfolds.
class Tracker {
 public:
  explicit Tracker(const DoorGraph& dg) : dg_(dg), at_(dg.graph.size()) {
    closed_.assign(dg.doors.k(), false);
  }

  // Returns a description when the event breaks vertex exclusivity.
  std::optional<std::string> apply(const TraceEvent& e) {
    std::optional<std::string> clash;
    switch (e.kind) {
      case EventKind::Spawn: {
        RobotInfo r;
        std::size_t rank = 0;
        std::sscanf(e.detail.c_str(), "door=%zu", &rank);
        r.door = rank;
        r.at = e.vertex;
        clash = occupy(e.robot, e.vertex);
        robots_[e.robot] = r;
        break;
      }
      case EventKind::ColorChange: robots_[e.robot].color = e.detail; break;
      case EventKind::StateChange:
        if (auto s = parse_state(e.detail)) robots_[e.robot].state = *s;
        break;
      case EventKind::MoveStart: {
        auto& r = robots_[e.robot];
        r.in_transit = true;
        r.moved = true;
        r.last_source = r.at;
        if (auto m = parse_move(e.detail)) r.last_mid = m->mid;
        break;
      }
      case EventKind::Hop: {
        auto& r = robots_[e.robot];
        if (at_[r.at] == e.robot) at_[r.at].reset();
        clash = occupy(e.robot, e.vertex);
        r.at = e.vertex;
        break;
      }
      case EventKind::MoveEnd: robots_[e.robot].in_transit = false; break;
      case EventKind::Finish: {
        auto& r = robots_[e.robot];
        r.state = RobotState::Finished;
        if (r.door >= 1 && r.door <= dg_.doors.k() && dg_.doors.doors[r.door - 1].door == r.at)
          closed_[r.door - 1] = true;
        break;
      }
      default: break;
    }
    return clash;
  }

  const std::map<std::uint32_t, RobotInfo>& robots() const { return robots_; }
  const RobotInfo& robot(std::uint32_t id) const { return robots_.at(id); }
  const std::optional<std::uint32_t>& at(VertexId v) const { return at_[v]; }
  bool door_closed(std::size_t rank) const { return closed_[rank - 1]; }

  /// Non-finished robots of a door, oldest (leader end) first.
  std::vector<std::uint32_t> members(std::size_t rank) const {
    std::vector<std::uint32_t> out;
    for (const auto& [id, r] : robots_)
      if (r.door == rank && r.state != RobotState::Finished) out.push_back(id);
    return out;
  }

  Chain chain(std::size_t rank) const {
    Chain c;
    c.door_rank = rank;
    auto ms = members(rank);
    std::reverse(ms.begin(), ms.end());  // door end first
    c.robots = ms;
    if (ms.empty()) return c;
    bool packed = robots_.at(ms.front()).at == dg_.doors.doors[rank - 1].door;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto& r = robots_.at(ms[i]);
      packed = packed && !r.in_transit;
      if (i > 0) {
        const auto& succ = robots_.at(ms[i - 1]);
        const bool linked = r.moved && r.last_source == succ.at;
        packed = packed && linked;
        if (linked) c.path.push_back(r.last_mid);
      }
      c.occupied_indices.push_back(c.path.size());
      c.path.push_back(r.at);
    }
    c.packed = packed;
    return c;
  }

  std::vector<VertexId> occupied() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < at_.size(); ++v)
      if (at_[v]) out.push_back(v);
    return out;
  }

 private:
  std::optional<std::string> occupy(std::uint32_t id, VertexId v) {
    std::optional<std::string> clash;
    if (at_[v] && *at_[v] != id)
      clash = "robots " + std::to_string(*at_[v]) + " and " + std::to_string(id) +
              " share vertex " + std::to_string(v);
    at_[v] = id;
    return clash;
  }

  const DoorGraph& dg_;
  std::vector<std::optional<std::uint32_t>> at_;
  std::map<std::uint32_t, RobotInfo> robots_;
  std::vector<bool> closed_;
};

class Monitor {
 public:
  explicit Monitor(std::string name) { report_.name = std::move(name); }

  void fail(std::uint64_t tick, std::string why, CheckStatus how = CheckStatus::Fail) {
    if (how == CheckStatus::Fail || report_.status == CheckStatus::Pass) report_.status = how;
    if (!report_.first_violation) report_.first_violation = Violation{tick, std::move(why)};
  }
  void skip(std::string why) {
    report_.status = CheckStatus::NotEvaluated;
    report_.detail = std::move(why);
  }
  void detail(std::string d) { report_.detail = std::move(d); }
  CheckReport done() const { return report_; }

 private:
  CheckReport report_;
};

class Distances {
 public:
  explicit Distances(const PortGraph& g) : g_(g), cache_(g.size()) {}
  std::size_t operator()(VertexId a, VertexId b) {
    if (cache_[a].empty()) cache_[a] = bfs_distances(g_, a);
    return cache_[a][b];
  }

 private:
  const PortGraph& g_;
  std::vector<std::vector<std::size_t>> cache_;
};

std::size_t epoch_index(const std::vector<std::uint64_t>& ends, std::uint64_t tick) {
  return static_cast<std::size_t>(std::lower_bound(ends.begin(), ends.end(), tick) - ends.begin());
}

struct PendingMove {
  std::uint64_t tick = 0;
  std::size_t chain_len = 0;
  std::vector<std::uint32_t> followers;  // still to complete a move
  std::uint64_t last_done = 0;
};

}  // namespace

std::vector<Chain> reconstruct_chains(const Trace& trace, const DoorGraph& dg, std::uint64_t tick) {
  Tracker t(dg);
  for (const auto& e : trace.events) {
    if (e.tick > tick) break;
    t.apply(e);
  }
  std::vector<Chain> out;
  for (std::size_t rank = 1; rank <= dg.doors.k(); ++rank) out.push_back(t.chain(rank));
  return out;
}

std::vector<CheckReport> check_trace(const Trace& trace, const DoorGraph& dg, Protocol protocol) {
  const auto& g = dg.graph;
  const bool ind = protocol == Protocol::Ind;
  const bool async = trace.header.policy.kind == SchedulerKind::ASync;
  const CheckStatus latency_miss = async ? CheckStatus::Warn : CheckStatus::Fail;
  const auto ends = epoch_boundaries(trace);
  Distances dist(g);
  Tracker t(dg);

  Monitor collision("no_collision"), single("single_leader"), adjacent("no_adjacent_finished"),
      final_mis("final_mis"), packed("packed_before_move"), self_cross("no_self_cross"),
      chain_cross("no_chain_cross"), epochs("epoch_bound"), transfer("leadership_latency"),
      move_lat("move_latency"), repack("repack_latency");

  std::map<std::size_t, std::uint64_t> transfer_start;  // door -> tick of "transfer"
  std::size_t worst_transfer = 0;
  std::map<std::size_t, PendingMove> moving;            // door -> follow-up moves
  std::size_t worst_move = 0, worst_move_i = 0;
  std::map<std::size_t, PendingMove> repacking;         // door -> awaiting CONF3
  std::size_t worst_repack = 0, worst_repack_i = 0;
  std::optional<std::string> halt;
  std::size_t spawned = 0;

  auto end_of_tick = [&](std::uint64_t tick) {
    if (ind) {
      std::size_t leaders = 0;
      for (const auto& [id, r] : t.robots()) leaders += r.state == RobotState::Leader;
      if (leaders > 1) single.fail(tick, std::to_string(leaders) + " leaders");
    }
    for (const auto& [id, r] : t.robots()) {
      if (r.state != RobotState::Finished) continue;
      for (const auto& l : g.links(r.at)) {
        const auto& o = t.at(l.neighbor);
        if (o && *o > id && t.robot(*o).state == RobotState::Finished)
          adjacent.fail(tick, "finished robots " + std::to_string(id) + " and " +
                                  std::to_string(*o) + " on adjacent vertices " +
                                  std::to_string(r.at) + ", " + std::to_string(l.neighbor));
      }
    }
  };

  const std::uint32_t cross_radius = ind ? 3 : 2;

  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& e = trace.events[i];

    // Checks that read the state before the event applies.
    if (e.kind == EventKind::MoveStart && t.robot(e.robot).state == RobotState::Leader) {
      const auto& r = t.robot(e.robot);
      const auto mv = parse_move(e.detail);
      const auto ch = t.chain(r.door);
      if (ch.robots.size() > 1 && !ch.packed)
        packed.fail(e.tick, "leader " + std::to_string(e.robot) + " moved from " +
                                std::to_string(r.at) + " with its chain unpacked");
      if (mv) {
        for (auto id : ch.robots) {
          if (id == e.robot) continue;
          const auto u = t.robot(id).at;
          if (dist(mv->to, u) == 2 && dist(r.at, u) <= cross_radius)
            self_cross.fail(e.tick, "leader " + std::to_string(e.robot) + " target " +
                                        std::to_string(mv->to) + " two hops from own chain robot " +
                                        std::to_string(id));
        }
        if (!ind) {
          std::size_t occupied = 0;
          bool active = false;
          for (const auto& l : g.links(mv->mid)) {
            if (l.neighbor == r.at) continue;
            if (const auto& o = t.at(l.neighbor)) {
              ++occupied;
              active = active || t.robot(*o).state != RobotState::Finished;
            }
          }
          if (occupied >= 2 && active)
            chain_cross.fail(e.tick, "leader " + std::to_string(e.robot) + " passes vertex " +
                                         std::to_string(mv->mid) + " between occupied vertices");
        }
      }
    }

    if (auto clash = t.apply(e)) collision.fail(e.tick, *clash);
    const auto& r = e.kind == EventKind::Halt || !t.robots().count(e.robot)
                        ? RobotInfo{}
                        : t.robot(e.robot);

    switch (e.kind) {
      case EventKind::Spawn: ++spawned; break;
      case EventKind::Collision: collision.fail(e.tick, "collision at " + std::to_string(e.vertex) + ": " + e.detail); break;
      case EventKind::Halt: halt = e.detail; break;
      case EventKind::ComputeDone: {
        const auto note = note_of(e.detail);
        if (note == "transfer") transfer_start[r.door] = e.tick;
        if (note == "promoted" && transfer_start.count(r.door)) {
          const auto span = epoch_index(ends, e.tick) - epoch_index(ends, transfer_start[r.door]) + 1;
          worst_transfer = std::max(worst_transfer, span);
          if (span > 4)
            transfer.fail(e.tick, "leadership transfer took " + std::to_string(span) + " epochs",
                          latency_miss);
          transfer_start.erase(r.door);
        }
        break;
      }
      case EventKind::MoveEnd: {
        if (r.state == RobotState::Leader) {
          auto ms = t.members(r.door);
          const auto& door = dg.doors.doors[r.door - 1].door;
          std::size_t len = ms.size();
          if (!t.at(door) && !t.door_closed(r.door)) ++len;
          PendingMove pm{e.tick, len, {}, e.tick};
          for (auto id : ms)
            if (id != e.robot) pm.followers.push_back(id);
          if (!pm.followers.empty()) moving[r.door] = pm;
          if (len > 1) repacking[r.door] = pm;
        } else if (moving.count(r.door)) {
          auto& pm = moving[r.door];
          auto it = std::find(pm.followers.begin(), pm.followers.end(), e.robot);
          if (it != pm.followers.end()) {
            pm.followers.erase(it);
            if (pm.followers.empty()) {
              const auto span = epoch_index(ends, e.tick) - epoch_index(ends, pm.tick) + 1;
              if (span > worst_move) {
                worst_move = span;
                worst_move_i = pm.chain_len;
              }
              if (span > pm.chain_len)
                move_lat.fail(e.tick, "chain of " + std::to_string(pm.chain_len) +
                                          " finished following after " + std::to_string(span) +
                                          " epochs", CheckStatus::Warn);
              moving.erase(r.door);
            }
          }
        }
        break;
      }
      case EventKind::ColorChange: {
        if (e.detail != "CONF3" || !repacking.count(r.door)) break;
        const auto ms = t.members(r.door);
        // The leader's successor is the second-oldest member.
        if (ms.size() < 2 || ms[1] != e.robot) break;
        const auto& pm = repacking[r.door];
        const auto span = epoch_index(ends, e.tick) - epoch_index(ends, pm.tick) + 1;
        if (span > worst_repack) {
          worst_repack = span;
          worst_repack_i = pm.chain_len;
        }
        if (span > 7 * pm.chain_len)
          repack.fail(e.tick, "chain of " + std::to_string(pm.chain_len) + " repacked after " +
                                  std::to_string(span) + " epochs", latency_miss);
        repacking.erase(r.door);
        break;
      }
      default: break;
    }

    const bool last_of_tick = i + 1 == trace.events.size() || trace.events[i + 1].tick != e.tick;
    if (last_of_tick) end_of_tick(e.tick);
  }

  if (!ind) single.skip("single-door property");
  if (ind) chain_cross.skip("multi-door property");

  if (halt == std::string("terminated")) {
    const auto occ = t.occupied();
    if (!is_maximal_independent(g, occ)) {
      std::string s;
      for (auto v : occ) s += (s.empty() ? "" : ",") + std::to_string(v);
      final_mis.fail(trace.events.back().tick, "final configuration {" + s + "} is not an MIS");
    }
  } else {
    final_mis.skip(halt ? "run halted: " + *halt : "trace has no Halt event");
  }

  const std::size_t m = spawned;
  const std::size_t count = ends.size();
  if (ind) {
    const std::size_t bound = ind_epoch_bound(m);
    epochs.detail("epochs=" + std::to_string(count) + " bound=" + std::to_string(bound));
    if (count > bound) epochs.fail(ends.back(), "epoch count exceeds bound");
  } else {
    std::ostringstream c;
    c.precision(3);
    c << "epochs=" << count << " m=" << m << " c=" << (m ? double(count) / double(m * m) : 0.0);
    epochs.detail(c.str());
  }
  transfer.detail("worst=" + std::to_string(worst_transfer));
  move_lat.detail("worst=" + std::to_string(worst_move) + " i=" + std::to_string(worst_move_i));
  repack.detail("worst=" + std::to_string(worst_repack) + " i=" + std::to_string(worst_repack_i));

  return {collision.done(), single.done(),     adjacent.done(),    final_mis.done(),
          packed.done(),    self_cross.done(), chain_cross.done(), epochs.done(),
          transfer.done(),  move_lat.done(),   repack.done()};
}

std::string to_jsonl(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["check"] = r.name;
    j["status"] = to_string(r.status);
    j["pass"] = r.pass();
    if (r.first_violation) {
      j["tick"] = r.first_violation->tick;
      j["violation"] = r.first_violation->description;
    }
    if (!r.detail.empty()) j["detail"] = r.detail;
    out += j.dump() + "\n";
  }
  return out;
}

std::size_t ind_epoch_bound(std::size_t m) { return 7 * m * (m + 1) / 2 + 4 * m; }

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass(); });
}

}  // namespace misfill
