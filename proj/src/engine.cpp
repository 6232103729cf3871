#include "misfill/engine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "misfill/ind.hpp"
#include "misfill/snapshot.hpp"

namespace misfill {

std::string to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::FSync: return "fsync";
    case SchedulerKind::SSync: return "ssync";
    case SchedulerKind::ASync: return "async";
  }
  return "?";
}

std::string to_string(ActivationKind k) {
  switch (k) {
    case ActivationKind::RoundRobin: return "round-robin";
    case ActivationKind::SeededRandom: return "random";
    case ActivationKind::Scripted: return "scripted";
  }
  return "?";
}

std::string to_string(Protocol p) { return p == Protocol::Ind ? "ind" : "multind"; }

std::optional<SchedulerKind> parse_scheduler(const std::string& s) {
  if (s == "fsync") return SchedulerKind::FSync;
  if (s == "ssync") return SchedulerKind::SSync;
  if (s == "async") return SchedulerKind::ASync;
  return std::nullopt;
}

std::optional<ActivationKind> parse_activation(const std::string& s) {
  if (s == "round-robin") return ActivationKind::RoundRobin;
  if (s == "random") return ActivationKind::SeededRandom;
  if (s == "scripted") return ActivationKind::Scripted;
  return std::nullopt;
}

std::optional<Protocol> parse_protocol(const std::string& s) {
  if (s == "ind") return Protocol::Ind;
  if (s == "multind") return Protocol::Multind;
  return std::nullopt;
}

namespace {

constexpr const char* kEventNames[] = {"Spawn",       "Look",        "ComputeDone", "MoveStart",
                                       "Hop",         "MoveEnd",     "ColorChange", "StateChange",
                                       "Finish",      "Collision",   "Halt"};

}  // namespace

std::string to_string(EventKind k) { return kEventNames[static_cast<int>(k)]; }

std::optional<EventKind> parse_event_kind(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(EventKind::Halt); ++i)
    if (s == kEventNames[i]) return static_cast<EventKind>(i);
  return std::nullopt;
}

std::uint32_t SimulationConfig::effective_visibility() const {
  if (visibility != 0) return visibility;
  return protocol == Protocol::Ind ? 3 : 5;
}

std::uint64_t SimulationConfig::effective_max_ticks(std::size_t n) const {
  if (max_ticks != 0) return max_ticks;
  return 64 * (static_cast<std::uint64_t>(n) * n + n);
}

namespace {

struct Robot {
  std::uint32_t id = 0;
  VertexId at = 0;
  std::size_t door_index = 0;
  RobotVars vars;
  bool in_transit = false;

  // ASYNC bookkeeping.
  enum class Phase { Idle, Looked, Moving } phase = Phase::Idle;
  std::uint64_t next_tick = 0;
  Snapshot snap;
  TwoHopPath path;
  VertexId source = 0;
  VertexId mid = 0;
  VertexId dest = 0;
  int hops_done = 0;

  // SSYNC fairness.
  std::uint64_t last_active = 0;
};

class Simulation {
 public:
  Simulation(const DoorGraph& dg, const SchedulerPolicy& policy, const SimulationConfig& cfg)
      : dg_(dg), g_(dg.graph), policy_(policy), cfg_(cfg), rng_(policy.seed) {
    if (dg.doors.k() == 0) throw EngineError("graph has no doors");
    if (policy.max_delay == 0 || policy.fairness_bound == 0)
      throw EngineError("scheduler bounds must be positive");
    at_.assign(g_.size(), std::nullopt);
    closed_.assign(dg.doors.k(), false);
    spawned_any_.assign(dg.doors.k(), false);
    radius_ = cfg.effective_visibility();
    limit_ = cfg.effective_max_ticks(g_.size());

    auto& h = out_.trace.header;
    h.protocol = cfg.protocol;
    h.policy = policy;
    h.visibility = radius_;
    h.max_ticks = limit_;
    h.vertices = g_.size();
    for (const auto& d : dg.doors.doors) h.door_vertices.push_back(d.door);
  }

  Outcome execute() {
    std::uint64_t tick = 0;
    std::string halt = "max_ticks";
    for (; tick < limit_; ++tick) {
      spawn(tick);
      if (policy_.kind == SchedulerKind::ASync) {
        async_tick(tick);
      } else {
        sync_round(tick);
      }
      if (collided_) {
        halt = "collision";
        break;
      }
      if (done()) {
        out_.terminated = true;
        halt = "terminated";
        break;
      }
    }
    emit(tick, 0, EventKind::Halt, 0, halt);
    out_.ticks = tick;
    for (VertexId v = 0; v < g_.size(); ++v)
      if (at_[v]) out_.final_occupied.push_back(v);
    out_.mis_size = out_.final_occupied.size();
    out_.epochs = compute_epochs(out_.trace);
    return std::move(out_);
  }

 private:
  void emit(std::uint64_t tick, std::uint32_t robot, EventKind kind, VertexId v,
            std::string detail = {}) {
    out_.trace.events.push_back({tick, robot, kind, v, std::move(detail)});
  }

  std::uint32_t draw_delay() {
    switch (policy_.activation) {
      case ActivationKind::RoundRobin: return 1;
      case ActivationKind::SeededRandom:
        return 1 + static_cast<std::uint32_t>(rng_() % policy_.max_delay);
      case ActivationKind::Scripted: {
        if (policy_.delays.empty()) return 1;
        auto d = policy_.delays[script_pos_++ % policy_.delays.size()];
        return std::clamp<std::uint32_t>(d, 1, policy_.max_delay);
      }
    }
    return 1;
  }

  Configuration configuration() const {
    Configuration c(g_.size());
    for (VertexId v = 0; v < g_.size(); ++v) {
      if (!at_[v]) continue;
      const auto& r = robots_[*at_[v]];
      c[v] = Occupant{r.in_transit ? Color::mov() : r.vars.color, r.in_transit};
    }
    return c;
  }

  StepResult compute(const Robot& r, const Snapshot& snap) const {
    if (cfg_.protocol == Protocol::Ind) return ind_step(r.vars, snap);
    return multind_step(r.vars, snap, cfg_.multind);
  }

  void spawn(std::uint64_t tick) {
    for (std::size_t i = 0; i < dg_.doors.k(); ++i) {
      const VertexId d = dg_.doors.doors[i].door;
      if (closed_[i] || at_[d]) continue;
      Robot r;
      r.id = static_cast<std::uint32_t>(robots_.size());
      r.at = d;
      r.door_index = i;
      r.vars = spawn_vars(static_cast<std::uint32_t>(i + 1), !spawned_any_[i]);
      r.last_active = tick;
      spawned_any_[i] = true;
      at_[d] = r.id;
      emit(tick, r.id, EventKind::Spawn, d, "door=" + std::to_string(i + 1));
      robots_.push_back(std::move(r));
      if (policy_.kind == SchedulerKind::ASync) robots_.back().next_tick = tick + draw_delay();
    }
  }

  bool done() const {
    for (const auto& r : robots_)
      if (r.vars.state != RobotState::Finished) return false;
    return std::all_of(closed_.begin(), closed_.end(), [](bool c) { return c; });
  }

  // Records a Compute phase outcome: color/state diffs and Finish.
  void apply_compute(std::uint64_t tick, Robot& r, const StepResult& res) {
    std::string detail = res.note.empty() ? "-" : res.note;
    detail += res.action.is_move() ? "|move:" + to_string(*res.action.move) : "|stay";
    emit(tick, r.id, EventKind::ComputeDone, r.at, detail);
    const RobotVars before = r.vars;
    r.vars = res.vars;
    if (!(before.color == r.vars.color))
      emit(tick, r.id, EventKind::ColorChange, r.at, to_string(r.vars.color));
    if (before.state != r.vars.state)
      emit(tick, r.id, EventKind::StateChange, r.at, to_string(r.vars.state));
    if (r.vars.state == RobotState::Finished && before.state != RobotState::Finished) {
      emit(tick, r.id, EventKind::Finish, r.at);
      if (r.at == dg_.doors.doors[r.door_index].door) closed_[r.door_index] = true;
    }
  }

  // Resolves the concrete vertices of a two-hop move from r's position.
  bool resolve_move(Robot& r, const TwoHopPath& p) {
    const auto& here = g_.links(r.at);
    if (p.one == 0 || p.one > here.size()) return false;
    r.mid = here[p.one - 1].neighbor;
    const auto& mid = g_.links(r.mid);
    if (p.two == 0 || p.two > mid.size()) return false;
    r.dest = mid[p.two - 1].neighbor;
    r.source = r.at;
    r.path = p;
    return true;
  }

  void arrive(std::uint64_t tick, Robot& r, VertexId from) {
    const Port back_one = *g_.port_to(r.dest, r.mid);
    const Port back_two = *g_.port_to(r.mid, from);
    r.in_transit = false;
    r.hops_done = 0;
    emit(tick, r.id, EventKind::MoveEnd, r.dest);
    const Color before = r.vars.color;
    r.vars.entry = Entry{r.path, {back_one, back_two}};
    r.vars.has_successor = true;
    r.vars.target.reset();
    if (r.vars.state == RobotState::Leader) {
      r.vars.color = wait_color_for(r.vars, cfg_.protocol == Protocol::Multind);
    } else if (r.vars.state == RobotState::Follower) {
      r.vars.predecessor = r.vars.next_target.path();
      r.vars.next_target = {};
    }
    if (!(before == r.vars.color))
      emit(tick, r.id, EventKind::ColorChange, r.dest, to_string(r.vars.color));
  }

  void collision(std::uint64_t tick, const Robot& r, VertexId v, const std::string& why) {
    ++out_.collision_count;
    collided_ = true;
    emit(tick, r.id, EventKind::Collision, v, why);
  }

  std::string move_detail(const Robot& r) const {
    return "mid=" + std::to_string(r.mid) + " to=" + std::to_string(r.dest) +
           " path=" + to_string(r.path);
  }

  // ---- FSYNC / SSYNC ------------------------------------------------------

  std::vector<std::uint32_t> activation_set(std::uint64_t tick) {
    std::vector<std::uint32_t> alive;
    for (const auto& r : robots_)
      if (r.vars.state != RobotState::Finished) alive.push_back(r.id);
    if (alive.empty() || policy_.kind == SchedulerKind::FSync) return alive;

    switch (policy_.activation) {
      case ActivationKind::RoundRobin: {
        auto it = std::upper_bound(alive.begin(), alive.end(), cursor_);
        std::uint32_t pick = it == alive.end() ? alive.front() : *it;
        if (!rr_started_) pick = alive.front();
        rr_started_ = true;
        cursor_ = pick;
        return {pick};
      }
      case ActivationKind::SeededRandom: {
        std::vector<std::uint32_t> chosen;
        for (auto id : alive) {
          const bool coin = rng_() % 2 == 0;
          const bool starving = tick - robots_[id].last_active + 1 >= policy_.fairness_bound;
          if (coin || starving) chosen.push_back(id);
        }
        if (chosen.empty()) chosen.push_back(alive[rng_() % alive.size()]);
        return chosen;
      }
      case ActivationKind::Scripted: {
        if (script_pos_ >= policy_.rounds.size()) return alive;
        std::vector<std::uint32_t> chosen;
        for (auto id : policy_.rounds[script_pos_])
          if (std::binary_search(alive.begin(), alive.end(), id)) chosen.push_back(id);
        ++script_pos_;
        std::sort(chosen.begin(), chosen.end());
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
        return chosen;
      }
    }
    return alive;
  }

  void sync_round(std::uint64_t tick) {
    const auto active = activation_set(tick);
    const Configuration start = configuration();
    std::vector<std::pair<std::uint32_t, StepResult>> results;
    for (auto id : active) {
      auto& r = robots_[id];
      r.last_active = tick;
      emit(tick, id, EventKind::Look, r.at);
      results.emplace_back(id, compute(r, make_snapshot(g_, start, r.at, radius_)));
    }
    std::vector<std::pair<std::uint32_t, TwoHopPath>> movers;
    for (auto& [id, res] : results) {
      apply_compute(tick, robots_[id], res);
      if (res.action.is_move()) movers.emplace_back(id, *res.action.move);
    }

    // Moves commit together against the round-start configuration.
    std::map<VertexId, std::uint32_t> claimed;
    for (const auto& [id, path] : movers) {
      auto& r = robots_[id];
      if (!resolve_move(r, path)) {
        collision(tick, r, r.at, "invalid port");
        return;
      }
      emit(tick, id, EventKind::MoveStart, r.at, move_detail(r));
      for (VertexId v : {r.mid, r.dest}) {
        if (start[v] || !claimed.emplace(v, id).second) {
          collision(tick, r, v, "vertex " + std::to_string(v) + " busy");
          return;
        }
      }
    }
    for (const auto& mv : movers) {
      const auto id = mv.first;
      auto& r = robots_[id];
      const VertexId from = r.at;
      at_[from].reset();
      emit(tick, id, EventKind::Hop, r.mid, "1");
      emit(tick, id, EventKind::Hop, r.dest, "2");
      r.at = r.dest;
      at_[r.dest] = id;
      arrive(tick, r, from);
    }
  }

  // ---- ASYNC --------------------------------------------------------------

  void async_tick(std::uint64_t tick) {
    for (std::size_t i = 0; i < robots_.size(); ++i) {
      auto& r = robots_[i];
      if (r.vars.state == RobotState::Finished || r.next_tick != tick) continue;
      switch (r.phase) {
        case Robot::Phase::Idle:
          emit(tick, r.id, EventKind::Look, r.at);
          r.snap = make_snapshot(g_, configuration(), r.at, radius_);
          r.phase = Robot::Phase::Looked;
          break;
        case Robot::Phase::Looked: {
          auto res = compute(r, r.snap);
          r.snap = {};
          apply_compute(tick, r, res);
          if (res.action.is_move()) {
            if (!resolve_move(r, *res.action.move)) {
              collision(tick, r, r.at, "invalid port");
              return;
            }
            r.in_transit = true;
            r.phase = Robot::Phase::Moving;
            r.hops_done = 0;
            emit(tick, r.id, EventKind::MoveStart, r.at, move_detail(r));
          } else {
            r.phase = Robot::Phase::Idle;
          }
          break;
        }
        case Robot::Phase::Moving: {
          const VertexId next = r.hops_done == 0 ? r.mid : r.dest;
          if (at_[next]) {
            collision(tick, r, next, "vertex " + std::to_string(next) + " busy");
            return;
          }
          at_[r.at].reset();
          at_[next] = r.id;
          r.at = next;
          ++r.hops_done;
          emit(tick, r.id, EventKind::Hop, next, std::to_string(r.hops_done));
          if (r.hops_done == 2) {
            arrive(tick, r, r.source);
            r.phase = Robot::Phase::Idle;
          }
          break;
        }
      }
      r.next_tick = tick + draw_delay();
    }
  }

  const DoorGraph& dg_;
  const PortGraph& g_;
  SchedulerPolicy policy_;
  SimulationConfig cfg_;
  std::mt19937_64 rng_;
  std::uint32_t radius_ = 3;
  std::uint64_t limit_ = 0;

  std::vector<Robot> robots_;
  std::vector<std::optional<std::uint32_t>> at_;
  std::vector<bool> closed_;
  std::vector<bool> spawned_any_;
  std::size_t script_pos_ = 0;
  std::uint32_t cursor_ = 0;
  bool rr_started_ = false;
  bool collided_ = false;
  Outcome out_;
};

}  // namespace

Outcome run(const DoorGraph& dg, const SchedulerPolicy& policy, const SimulationConfig& cfg) {
  return Simulation(dg, policy, cfg).execute();
}


// ---- Epochs -----------------------------------------------------------------

namespace {

struct Cycle {
  std::uint64_t look = 0;
  std::uint64_t done = 0;
};

struct RobotTimeline {
  std::uint64_t spawn = 0;
  std::optional<std::uint64_t> finish;
  std::vector<Cycle> cycles;  // completed cycles in order
};

std::map<std::uint32_t, RobotTimeline> timelines(const Trace& trace) {
  std::map<std::uint32_t, RobotTimeline> out;
  std::map<std::uint32_t, std::uint64_t> open_look;
  for (const auto& e : trace.events) {
    switch (e.kind) {
      case EventKind::Spawn: out[e.robot].spawn = e.tick; break;
      case EventKind::Look: open_look[e.robot] = e.tick; break;
      case EventKind::ComputeDone:
        if (e.detail.size() >= 5 && e.detail.compare(e.detail.size() - 5, 5, "|stay") == 0)
          out[e.robot].cycles.push_back({open_look[e.robot], e.tick});
        break;
      case EventKind::MoveEnd: out[e.robot].cycles.push_back({open_look[e.robot], e.tick}); break;
      case EventKind::Finish: out[e.robot].finish = e.tick; break;
      default: break;
    }
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> epoch_boundaries(const Trace& trace) {
  const auto tl = timelines(trace);
  std::vector<std::uint64_t> ends;
  if (tl.empty()) return ends;

  std::uint64_t s = 0;
  while (true) {
    bool any_relevant = false;
    bool complete = true;
    std::uint64_t e = s;
    std::optional<std::uint64_t> next_spawn;
    for (const auto& [id, r] : tl) {
      if (r.spawn > s) {
        if (!next_spawn || r.spawn < *next_spawn) next_spawn = r.spawn;
        continue;
      }
      if (r.finish && *r.finish < s) continue;
      any_relevant = true;
      auto it = std::find_if(r.cycles.begin(), r.cycles.end(),
                             [s](const Cycle& c) { return c.look >= s; });
      if (it == r.cycles.end()) {
        complete = false;
      } else {
        e = std::max(e, it->done);
      }
    }
    if (!any_relevant) {
      if (!next_spawn) break;
      s = *next_spawn;
      continue;
    }
    if (!complete) {
      // Trailing partial epoch: counted if anything completed inside it.
      std::optional<std::uint64_t> last;
      for (const auto& [id, r] : tl)
        for (const auto& c : r.cycles)
          if (c.look >= s && (!last || c.done > *last)) last = c.done;
      if (last) ends.push_back(*last);
      break;
    }
    ends.push_back(e);
    s = e + 1;
  }
  return ends;
}

std::size_t compute_epochs(const Trace& trace) { return epoch_boundaries(trace).size(); }

// ---- JSONL ------------------------------------------------------------------

std::string to_jsonl(const Trace& trace) {
  using nlohmann::ordered_json;
  const auto& h = trace.header;
  ordered_json head;
  head["type"] = "header";
  head["protocol"] = to_string(h.protocol);
  head["scheduler"] = to_string(h.policy.kind);
  head["activation"] = to_string(h.policy.activation);
  head["seed"] = h.policy.seed;
  head["fairness_bound"] = h.policy.fairness_bound;
  head["max_delay"] = h.policy.max_delay;
  head["rounds"] = h.policy.rounds;
  head["delays"] = h.policy.delays;
  head["visibility"] = h.visibility;
  head["max_ticks"] = h.max_ticks;
  head["vertices"] = h.vertices;
  head["doors"] = h.door_vertices;
  std::string out = head.dump() + "\n";
  for (const auto& e : trace.events) {
    ordered_json j;
    j["tick"] = e.tick;
    j["robot"] = e.robot;
    j["kind"] = to_string(e.kind);
    j["vertex"] = e.vertex;
    if (!e.detail.empty()) j["detail"] = e.detail;
    out += j.dump() + "\n";
  }
  return out;
}

Trace parse_jsonl(const std::string& text) {
  Trace t;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      if (j.value("type", "") == "header") {
        auto& h = t.header;
        auto proto = parse_protocol(j.at("protocol").get<std::string>());
        auto kind = parse_scheduler(j.at("scheduler").get<std::string>());
        auto act = parse_activation(j.at("activation").get<std::string>());
        if (!proto || !kind || !act) throw EngineError("bad header values");
        h.protocol = *proto;
        h.policy.kind = *kind;
        h.policy.activation = *act;
        h.policy.seed = j.at("seed").get<std::uint64_t>();
        h.policy.fairness_bound = j.at("fairness_bound").get<std::uint32_t>();
        h.policy.max_delay = j.at("max_delay").get<std::uint32_t>();
        h.policy.rounds = j.at("rounds").get<std::vector<std::vector<std::uint32_t>>>();
        h.policy.delays = j.at("delays").get<std::vector<std::uint32_t>>();
        h.visibility = j.at("visibility").get<std::uint32_t>();
        h.max_ticks = j.at("max_ticks").get<std::uint64_t>();
        h.vertices = j.at("vertices").get<std::size_t>();
        h.door_vertices = j.at("doors").get<std::vector<VertexId>>();
        have_header = true;
        continue;
      }
      TraceEvent e;
      e.tick = j.at("tick").get<std::uint64_t>();
      e.robot = j.at("robot").get<std::uint32_t>();
      auto kind = parse_event_kind(j.at("kind").get<std::string>());
      if (!kind) throw EngineError("unknown event kind");
      e.kind = *kind;
      e.vertex = j.at("vertex").get<VertexId>();
      e.detail = j.value("detail", "");
      t.events.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw EngineError("trace line " + std::to_string(lineno) + ": " + ex.what());
    } catch (const EngineError& ex) {
      throw EngineError("trace line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  if (!have_header) throw EngineError("trace has no header line");
  return t;
}

// ---- Replay -----------------------------------------------------------------

ReplayResult replay(const Trace& trace, const DoorGraph& dg, const SimulationConfig& cfg) {
  ReplayResult res;
  const auto& h = trace.header;
  if (h.vertices != dg.graph.size()) {
    res.description = "trace was recorded on a graph with " + std::to_string(h.vertices) +
                      " vertices, this graph has " + std::to_string(dg.graph.size());
    return res;
  }
  SimulationConfig c = cfg;
  c.protocol = h.protocol;
  c.visibility = h.visibility;
  c.max_ticks = h.max_ticks;
  const auto again = run(dg, h.policy, c).trace;
  const std::size_t n = std::min(again.events.size(), trace.events.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (again.events[i] == trace.events[i]) continue;
    res.first_divergence = i;
    const auto& a = trace.events[i];
    const auto& b = again.events[i];
    res.description = "event " + std::to_string(i) + ": recorded " + to_string(a.kind) + "@" +
                      std::to_string(a.tick) + " robot " + std::to_string(a.robot) +
                      ", replayed " + to_string(b.kind) + "@" + std::to_string(b.tick) +
                      " robot " + std::to_string(b.robot);
    return res;
  }
  if (again.events.size() != trace.events.size()) {
    res.first_divergence = n;
    res.description = "recorded " + std::to_string(trace.events.size()) + " events, replayed " +
                      std::to_string(again.events.size());
    return res;
  }
  res.identical = true;
  res.description = "identical (" + std::to_string(n) + " events)";
  return res;
}

// ---- Occupancy and frames -----------------------------------------------------

std::vector<std::optional<std::string>> occupancy_at(const Trace& trace, std::size_t vertices,
                                                     std::uint64_t tick) {
  std::map<std::uint32_t, VertexId> where;
  std::map<std::uint32_t, std::string> color;
  for (const auto& e : trace.events) {
    if (e.tick > tick) break;
    switch (e.kind) {
      case EventKind::Spawn:
        where[e.robot] = e.vertex;
        color[e.robot] = to_string(Color::on());
        break;
      case EventKind::ColorChange: color[e.robot] = e.detail; break;
      case EventKind::MoveStart: color[e.robot] = to_string(Color::mov()); break;
      case EventKind::Hop: where[e.robot] = e.vertex; break;
      default: break;
    }
  }
  std::vector<std::optional<std::string>> occ(vertices);
  for (const auto& [id, v] : where)
    if (v < vertices) occ[v] = color[id];
  return occ;
}

std::vector<std::string> render_frames(const Trace& trace, const DoorGraph& dg) {
  const auto& g = dg.graph;
  std::vector<bool> is_door(g.size(), false);
  for (const auto& d : dg.doors.doors) is_door[d.door] = true;

  std::vector<std::string> frames;
  const auto ends = epoch_boundaries(trace);
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const auto occ = occupancy_at(trace, g.size(), ends[i]);
    std::ostringstream dot;
    dot << "graph epoch_" << i + 1 << " {\n  label=\"epoch " << i + 1 << " (tick " << ends[i]
        << ")\";\n";
    for (VertexId v = 0; v < g.size(); ++v) {
      dot << "  " << v << " [shape=" << (is_door[v] ? "box" : "circle");
      if (occ[v]) {
        const bool off = *occ[v] == to_string(Color::off());
        dot << ", style=filled, fillcolor=" << (off ? "black, fontcolor=white" : "orange")
            << ", xlabel=\"" << *occ[v] << "\"";
      }
      dot << "];\n";
    }
    for (const auto& e : g.edges())
      dot << "  " << e.u << " -- " << e.v << " [taillabel=" << e.pu << ", headlabel=" << e.pv
          << "];\n";
    dot << "}\n";
    frames.push_back(dot.str());
  }
  return frames;
}

}  // namespace misfill
