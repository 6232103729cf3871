#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace misfill {

using VertexId = std::uint32_t;
using Port = std::uint32_t;  // 1-based at every vertex

enum class GraphErrc {
  DisconnectedGraph,
  DuplicatePort,
  SelfLoop,
  PortGap,
  MultiEdge,
  DuplicateAnchor,
  UnknownVertex,
  InfeasibleParameters,
  ParseError,
};

const char* to_string(GraphErrc e);

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GraphErrc code() const noexcept { return code_; }

 private:
  GraphErrc code_;
};

/// One directed half of an edge as seen from its owning vertex.
struct Link {
  VertexId neighbor = 0;
  Port neighbor_port = 0;
  bool operator==(const Link&) const = default;
};

/// Edge description used by build_graph: u's port pu joins v's port pv.
struct EdgeSpec {
  VertexId u = 0;
  Port pu = 0;
  VertexId v = 0;
  Port pv = 0;
};

/// Anonymous connected port-labeled graph. links(v)[p - 1] is the edge behind
/// port p of v. Vertex ids exist only inside the simulator.
class PortGraph {
 public:
  PortGraph() = default;

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t degree(VertexId v) const { return adj_.at(v).size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  std::size_t edge_count() const noexcept { return edges_; }

  const std::vector<Link>& links(VertexId v) const { return adj_.at(v); }
  const Link& follow(VertexId v, Port p) const { return adj_.at(v).at(p - 1); }
  bool contains(VertexId v) const noexcept { return v < adj_.size(); }
  bool adjacent(VertexId a, VertexId b) const;
  std::optional<Port> port_to(VertexId from, VertexId to) const;

  /// Every edge once, with u < v.
  std::vector<EdgeSpec> edges() const;

  bool operator==(const PortGraph&) const = default;

 private:
  friend PortGraph build_graph(std::size_t n, const std::vector<EdgeSpec>& edges);

  std::vector<std::vector<Link>> adj_;
  std::size_t max_degree_ = 0;
  std::size_t edges_ = 0;
};

/// Validates and builds. Throws GraphError on any invariant breach.
PortGraph build_graph(std::size_t n, const std::vector<EdgeSpec>& edges);

struct Door {
  VertexId door = 0;    // d_i, degree 1
  VertexId buffer = 0;  // d_i', degree 2
  VertexId anchor = 0;  // v_i in the original graph
};

/// Doors in priority order; index 0 is rank 1 (strongest).
struct DoorAttachment {
  std::vector<Door> doors;
  std::size_t k() const noexcept { return doors.size(); }
  std::optional<std::size_t> rank_of_door_vertex(VertexId v) const;
};

struct DoorGraph {
  PortGraph graph;
  DoorAttachment doors;
  std::size_t original_size = 0;
};

/// Appends d_i' then d_i for every anchor. The anchor's new port is
/// deg(v_i)+1; at d_i' port 1 leads to v_i and port 2 to d_i.
DoorGraph attach_doors(const PortGraph& g, const std::vector<VertexId>& anchors);

/// Vertices at distance exactly k.
std::vector<VertexId> neighborhood(const PortGraph& g, VertexId v, std::size_t k);
/// Vertices at distance at most k (always contains v).
std::vector<VertexId> ball(const PortGraph& g, VertexId v, std::size_t k);
/// All-distance BFS from v; unreachable entries are SIZE_MAX.
std::vector<std::size_t> bfs_distances(const PortGraph& g, VertexId v);

/// Union of the vertices of all simple u-w paths with at most k edges.
std::vector<VertexId> path_set(const PortGraph& g, VertexId u, VertexId w, std::size_t k);

/// True iff no neighbor of v is marked in occupied (indexed by vertex).
bool is_free(const PortGraph& g, const std::vector<bool>& occupied, VertexId v);

/// Deterministic connected graph with max degree <= max_deg.
PortGraph random_connected_graph(std::size_t n, std::size_t max_deg, std::uint64_t seed);

// Text format:
//   graph <n>
//   edge <u> <pu> <v> <pv>
//   door <i> <anchor>
// with '#' comments. Doors are attached after all lines are read.
struct GraphFile {
  PortGraph original;
  std::vector<VertexId> anchors;  // in rank order
  std::vector<std::pair<std::string, std::string>> settings;  // `set key value`
};

GraphFile parse_graph_text(const std::string& text);
GraphFile load_graph_file(const std::string& path);
std::string to_graph_text(const PortGraph& original, const std::vector<VertexId>& anchors);

}  // namespace misfill
