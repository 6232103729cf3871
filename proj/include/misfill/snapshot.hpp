#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "misfill/graph.hpp"
#include "misfill/robot.hpp"

namespace misfill {

/// What the simulator knows about a robot standing on a vertex.
struct Occupant {
  Color color;
  bool in_transit = false;
  bool operator==(const Occupant&) const = default;
};

/// Occupancy indexed by VertexId.
using Configuration = std::vector<std::optional<Occupant>>;

using CellIndex = std::int32_t;
inline constexpr CellIndex kOutside = -1;

struct CellPort {
  CellIndex cell = kOutside;   // kOutside when the neighbor is beyond the radius
  Port neighbor_port = 0;      // 0 when the neighbor is beyond the radius
  bool operator==(const CellPort&) const = default;
};

/// One visible vertex. `path` is the lexicographically least shortest port
/// sequence from the observer; it is the only name the robot has for it.
struct Cell {
  std::vector<Port> path;
  std::uint32_t dist = 0;
  std::optional<Occupant> occupant;
  std::vector<CellPort> ports;

  bool occupied() const noexcept { return occupant.has_value(); }
  bool operator==(const Cell&) const = default;
};

/// The Look-phase view: every vertex within `radius` hops, ordered by
/// (distance, canonical path). Cell 0 is the observer.
class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(std::uint32_t radius, std::vector<Cell> cells)
      : radius_(radius), cells_(std::move(cells)) {}

  std::uint32_t radius() const noexcept { return radius_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& cell(CellIndex i) const { return cells_.at(static_cast<std::size_t>(i)); }
  std::size_t size() const noexcept { return cells_.size(); }
  Color self_color() const;

  /// Cell reached by following `ports` from `from`; nullopt if a port is
  /// invalid or leaves the visible region.
  std::optional<CellIndex> follow(CellIndex from, const std::vector<Port>& ports) const;
  std::optional<CellIndex> follow(const TwoHopPath& p) const;
  /// Port at `at` whose edge leads to cell `to`, when adjacent.
  std::optional<Port> port_between(CellIndex at, CellIndex to) const;

  /// BFS distances inside the visible subgraph.
  std::vector<std::uint32_t> local_distances(CellIndex from) const;
  /// Vertices of all simple paths a..b with at most k edges inside the view.
  std::vector<bool> local_path_set(CellIndex a, CellIndex b, std::uint32_t k) const;

  bool operator==(const Snapshot&) const = default;

 private:
  std::uint32_t radius_ = 0;
  std::vector<Cell> cells_;
};

Snapshot make_snapshot(const PortGraph& g, const Configuration& config, VertexId here,
                       std::uint32_t radius);

/// Nearest visible non-finished robot within two hops, ties broken by the
/// canonical path order.
std::optional<std::vector<Port>> resolve_predecessor(const Snapshot& snap);

}  // namespace misfill
