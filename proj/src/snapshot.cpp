#include "misfill/snapshot.hpp"

#include <deque>
#include <limits>

namespace misfill {

Color Snapshot::self_color() const {
  const auto& occ = cells_.at(0).occupant;
  return occ ? occ->color : Color::on();
}

std::optional<CellIndex> Snapshot::follow(CellIndex from, const std::vector<Port>& ports) const {
  CellIndex at = from;
  for (Port p : ports) {
    const auto& c = cell(at);
    if (p == 0 || p > c.ports.size()) return std::nullopt;
    at = c.ports[p - 1].cell;
    if (at == kOutside) return std::nullopt;
  }
  return at;
}

std::optional<CellIndex> Snapshot::follow(const TwoHopPath& p) const {
  return follow(0, {p.one, p.two});
}

std::optional<Port> Snapshot::port_between(CellIndex at, CellIndex to) const {
  const auto& ps = cell(at).ports;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].cell == to) return static_cast<Port>(i + 1);
  return std::nullopt;
}

std::vector<std::uint32_t> Snapshot::local_distances(CellIndex from) const {
  constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(cells_.size(), inf);
  std::deque<CellIndex> q{from};
  dist[static_cast<std::size_t>(from)] = 0;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (const auto& cp : cell(u).ports) {
      if (cp.cell == kOutside) continue;
      auto& d = dist[static_cast<std::size_t>(cp.cell)];
      if (d == inf) {
        d = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(cp.cell);
      }
    }
  }
  return dist;
}

std::vector<bool> Snapshot::local_path_set(CellIndex a, CellIndex b, std::uint32_t k) const {
  std::vector<bool> in_set(cells_.size(), false), on_path(cells_.size(), false);
  if (a == b) {
    in_set[static_cast<std::size_t>(a)] = true;
    return in_set;
  }
  const auto to_b = local_distances(b);
  std::vector<CellIndex> stack{a};
  on_path[static_cast<std::size_t>(a)] = true;
  auto dfs = [&](auto&& self, CellIndex at, std::uint32_t used) -> void {
    if (at == b) {
      for (auto x : stack) in_set[static_cast<std::size_t>(x)] = true;
      return;
    }
    for (const auto& cp : cell(at).ports) {
      if (cp.cell == kOutside) continue;
      const auto nb = static_cast<std::size_t>(cp.cell);
      if (on_path[nb] || to_b[nb] == std::numeric_limits<std::uint32_t>::max() ||
          used + 1 + to_b[nb] > k)
        continue;
      on_path[nb] = true;
      stack.push_back(cp.cell);
      self(self, cp.cell, used + 1);
      stack.pop_back();
      on_path[nb] = false;
    }
  };
  dfs(dfs, a, 0);
  return in_set;
}

Snapshot make_snapshot(const PortGraph& g, const Configuration& config, VertexId here,
                       std::uint32_t radius) {
  // Expanding ports in ascending order from a FIFO queue discovers every
  // vertex along its lexicographically least shortest port sequence.
  constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(g.size(), unseen);
  std::vector<VertexId> order{here};
  std::vector<Cell> cells(1);
  index[here] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const VertexId u = order[head];
    if (cells[head].dist == radius) continue;
    const auto& links = g.links(u);
    for (std::size_t p = 0; p < links.size(); ++p) {
      const VertexId nb = links[p].neighbor;
      if (index[nb] != unseen) continue;
      index[nb] = static_cast<std::uint32_t>(order.size());
      order.push_back(nb);
      Cell c;
      c.path = cells[head].path;
      c.path.push_back(static_cast<Port>(p + 1));
      c.dist = cells[head].dist + 1;
      cells.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const VertexId u = order[i];
    cells[i].occupant = u < config.size() ? config[u] : std::nullopt;
    for (const auto& l : g.links(u)) {
      if (index[l.neighbor] == unseen) {
        cells[i].ports.push_back({kOutside, 0});
      } else {
        cells[i].ports.push_back({static_cast<CellIndex>(index[l.neighbor]), l.neighbor_port});
      }
    }
  }
  return Snapshot(radius, std::move(cells));
}

std::optional<std::vector<Port>> resolve_predecessor(const Snapshot& snap) {
  for (std::size_t i = 1; i < snap.size(); ++i) {
    const auto& c = snap.cells()[i];
    if (c.dist > 2) break;
    if (c.occupant && !c.occupant->color.is(ColorKind::Off)) return c.path;
  }
  return std::nullopt;
}

}  // namespace misfill
