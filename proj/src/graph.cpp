#include "misfill/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace misfill {

const char* to_string(GraphErrc e) {
  switch (e) {
    case GraphErrc::DisconnectedGraph: return "DisconnectedGraph";
    case GraphErrc::DuplicatePort: return "DuplicatePort";
    case GraphErrc::SelfLoop: return "SelfLoop";
    case GraphErrc::PortGap: return "PortGap";
    case GraphErrc::MultiEdge: return "MultiEdge";
    case GraphErrc::DuplicateAnchor: return "DuplicateAnchor";
    case GraphErrc::UnknownVertex: return "UnknownVertex";
    case GraphErrc::InfeasibleParameters: return "InfeasibleParameters";
    case GraphErrc::ParseError: return "ParseError";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(GraphErrc code, const std::string& msg) {
  throw GraphError(code, std::string(to_string(code)) + ": " + msg);
}

void require_vertex(const PortGraph& g, VertexId v) {
  if (!g.contains(v)) fail(GraphErrc::UnknownVertex, "vertex " + std::to_string(v));
}

}  // namespace

bool PortGraph::adjacent(VertexId a, VertexId b) const {
  for (const auto& l : adj_.at(a))
    if (l.neighbor == b) return true;
  return false;
}

std::optional<Port> PortGraph::port_to(VertexId from, VertexId to) const {
  const auto& ls = adj_.at(from);
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (ls[i].neighbor == to) return static_cast<Port>(i + 1);
  return std::nullopt;
}

std::vector<EdgeSpec> PortGraph::edges() const {
  std::vector<EdgeSpec> out;
  for (VertexId u = 0; u < adj_.size(); ++u)
    for (std::size_t i = 0; i < adj_[u].size(); ++i) {
      const auto& l = adj_[u][i];
      if (u < l.neighbor) out.push_back({u, static_cast<Port>(i + 1), l.neighbor, l.neighbor_port});
    }
  return out;
}

PortGraph build_graph(std::size_t n, const std::vector<EdgeSpec>& edges) {
  if (n == 0) fail(GraphErrc::InfeasibleParameters, "graph must have at least one vertex");
  std::vector<std::vector<std::optional<Link>>> slots(n);
  std::set<std::pair<VertexId, VertexId>> seen;

  auto place = [&](VertexId at, Port p, Link l) {
    if (p == 0) fail(GraphErrc::PortGap, "port 0 at vertex " + std::to_string(at));
    auto& s = slots[at];
    if (s.size() < p) s.resize(p);
    if (s[p - 1]) {
      fail(GraphErrc::DuplicatePort,
           "port " + std::to_string(p) + " used twice at vertex " + std::to_string(at));
    }
    s[p - 1] = l;
  };

  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      fail(GraphErrc::UnknownVertex,
           "edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    if (e.u == e.v) fail(GraphErrc::SelfLoop, "vertex " + std::to_string(e.u));
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second) {
      fail(GraphErrc::MultiEdge,
           "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " repeated");
    }
    place(e.u, e.pu, {e.v, e.pv});
    place(e.v, e.pv, {e.u, e.pu});
  }

  PortGraph g;
  g.adj_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < slots[v].size(); ++i) {
      if (!slots[v][i]) {
        fail(GraphErrc::PortGap,
             "vertex " + std::to_string(v) + " misses port " + std::to_string(i + 1));
      }
      g.adj_[v].push_back(*slots[v][i]);
    }
    g.max_degree_ = std::max(g.max_degree_, g.adj_[v].size());
  }
  g.edges_ = edges.size();

  auto dist = bfs_distances(g, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (dist[v] == std::numeric_limits<std::size_t>::max())
      fail(GraphErrc::DisconnectedGraph, "vertex " + std::to_string(v) + " unreachable");
  }
  return g;
}

std::optional<std::size_t> DoorAttachment::rank_of_door_vertex(VertexId v) const {
  for (std::size_t i = 0; i < doors.size(); ++i)
    if (doors[i].door == v) return i + 1;
  return std::nullopt;
}

DoorGraph attach_doors(const PortGraph& g, const std::vector<VertexId>& anchors) {
  std::set<VertexId> uniq;
  for (auto a : anchors) {
    require_vertex(g, a);
    if (!uniq.insert(a).second) fail(GraphErrc::DuplicateAnchor, "anchor " + std::to_string(a));
  }
  auto edges = g.edges();
  const auto n0 = static_cast<VertexId>(g.size());
  DoorGraph out;
  out.original_size = g.size();
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const VertexId anchor = anchors[i];
    const VertexId buffer = n0 + static_cast<VertexId>(2 * i);
    const VertexId door = buffer + 1;
    edges.push_back({anchor, static_cast<Port>(g.degree(anchor) + 1), buffer, 1});
    edges.push_back({buffer, 2, door, 1});
    out.doors.doors.push_back({door, buffer, anchor});
  }
  out.graph = build_graph(g.size() + 2 * anchors.size(), edges);
  return out;
}

std::vector<std::size_t> bfs_distances(const PortGraph& g, VertexId v) {
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.size(), inf);
  std::deque<VertexId> q{v};
  dist[v] = 0;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (const auto& l : g.links(u)) {
      if (dist[l.neighbor] == inf) {
        dist[l.neighbor] = dist[u] + 1;
        q.push_back(l.neighbor);
      }
    }
  }
  return dist;
}

std::vector<VertexId> neighborhood(const PortGraph& g, VertexId v, std::size_t k) {
  require_vertex(g, v);
  auto dist = bfs_distances(g, v);
  std::vector<VertexId> out;
  for (VertexId u = 0; u < g.size(); ++u)
    if (dist[u] == k) out.push_back(u);
  return out;
}

std::vector<VertexId> ball(const PortGraph& g, VertexId v, std::size_t k) {
  require_vertex(g, v);
  auto dist = bfs_distances(g, v);
  std::vector<VertexId> out;
  for (VertexId u = 0; u < g.size(); ++u)
    if (dist[u] <= k) out.push_back(u);
  return out;
}

std::vector<VertexId> path_set(const PortGraph& g, VertexId u, VertexId w, std::size_t k) {
  require_vertex(g, u);
  require_vertex(g, w);
  std::vector<bool> on_path(g.size(), false), in_set(g.size(), false);
  std::vector<VertexId> stack;
  auto to_w = bfs_distances(g, w);

  // DFS over simple paths, pruned by the remaining distance to w.
  auto dfs = [&](auto&& self, VertexId at, std::size_t used) -> void {
    if (at == w) {
      for (auto x : stack) in_set[x] = true;
      return;
    }
    for (const auto& l : g.links(at)) {
      const auto nb = l.neighbor;
      if (on_path[nb] || used + 1 + to_w[nb] > k) continue;
      on_path[nb] = true;
      stack.push_back(nb);
      self(self, nb, used + 1);
      stack.pop_back();
      on_path[nb] = false;
    }
  };
  if (u == w) return {u};
  if (to_w[u] > k) return {};
  on_path[u] = true;
  stack.push_back(u);
  dfs(dfs, u, 0);

  std::vector<VertexId> out;
  for (VertexId x = 0; x < g.size(); ++x)
    if (in_set[x]) out.push_back(x);
  return out;
}

bool is_free(const PortGraph& g, const std::vector<bool>& occupied, VertexId v) {
  for (const auto& l : g.links(v))
    if (l.neighbor < occupied.size() && occupied[l.neighbor]) return false;
  return true;
}

PortGraph random_connected_graph(std::size_t n, std::size_t max_deg, std::uint64_t seed) {
  if (n == 0 || (n >= 3 && max_deg < 2) || (n == 2 && max_deg < 1)) {
    fail(GraphErrc::InfeasibleParameters,
         "n=" + std::to_string(n) + " max_deg=" + std::to_string(max_deg));
  }
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

  std::vector<std::vector<VertexId>> nbrs(n);
  auto connect = [&](VertexId a, VertexId b) {
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
  };
  for (VertexId v = 1; v < n; ++v) {
    std::vector<VertexId> open;
    for (VertexId u = 0; u < v; ++u)
      if (nbrs[u].size() < max_deg) open.push_back(u);
    connect(v, open[pick(open.size())]);
  }
  const std::size_t extra_attempts = n;
  for (std::size_t t = 0; t < extra_attempts; ++t) {
    auto a = static_cast<VertexId>(pick(n));
    auto b = static_cast<VertexId>(pick(n));
    if (a == b || nbrs[a].size() >= max_deg || nbrs[b].size() >= max_deg) continue;
    if (std::find(nbrs[a].begin(), nbrs[a].end(), b) != nbrs[a].end()) continue;
    if (pick(2) == 0) connect(a, b);
  }
  for (auto& list : nbrs) {
    for (std::size_t i = list.size(); i > 1; --i) std::swap(list[i - 1], list[pick(i)]);
  }
  std::vector<EdgeSpec> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < nbrs[u].size(); ++i) {
      VertexId v = nbrs[u][i];
      if (u >= v) continue;
      auto& back = nbrs[v];
      auto j = std::find(back.begin(), back.end(), u) - back.begin();
      edges.push_back({u, static_cast<Port>(i + 1), v, static_cast<Port>(j + 1)});
    }
  }
  return build_graph(n, edges);
}

GraphFile parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<EdgeSpec> edges;
  std::vector<std::pair<std::size_t, VertexId>> doors;
  GraphFile out;

  auto bad = [&](const std::string& why) {
    fail(GraphErrc::ParseError, "line " + std::to_string(lineno) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "graph") {
      std::size_t count = 0;
      if (!(ls >> count)) bad("expected vertex count");
      n = count;
    } else if (word == "edge") {
      EdgeSpec e;
      if (!(ls >> e.u >> e.pu >> e.v >> e.pv)) bad("expected `edge u pu v pv`");
      edges.push_back(e);
    } else if (word == "door") {
      std::size_t rank = 0;
      VertexId anchor = 0;
      if (!(ls >> rank >> anchor) || rank == 0) bad("expected `door rank anchor`");
      doors.emplace_back(rank, anchor);
    } else if (word == "set") {
      std::string key, value;
      if (!(ls >> key >> value)) bad("expected `set key value`");
      out.settings.emplace_back(key, value);
    } else {
      bad("unknown directive `" + word + "`");
    }
    std::string trailing;
    if (ls >> trailing) bad("trailing token `" + trailing + "`");
  }
  if (!n) fail(GraphErrc::ParseError, "missing `graph <n>` header");

  out.original = build_graph(*n, edges);
  std::sort(doors.begin(), doors.end());
  for (std::size_t i = 0; i < doors.size(); ++i) {
    if (doors[i].first != i + 1) {
      fail(GraphErrc::ParseError, "door ranks must be 1..k without gaps");
    }
    out.anchors.push_back(doors[i].second);
  }
  return out;
}

GraphFile load_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(GraphErrc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_graph_text(ss.str());
}

std::string to_graph_text(const PortGraph& original, const std::vector<VertexId>& anchors) {
  std::ostringstream out;
  out << "graph " << original.size() << "\n";
  for (const auto& e : original.edges())
    out << "edge " << e.u << ' ' << e.pu << ' ' << e.v << ' ' << e.pv << "\n";
  for (std::size_t i = 0; i < anchors.size(); ++i) out << "door " << i + 1 << ' ' << anchors[i] << "\n";
  return out.str();
}

}  // namespace misfill
