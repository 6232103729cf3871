#include <doctest.h>

#include <random>

#include "misfill/graph.hpp"
#include "oracles.hpp"

using namespace misfill;

namespace {

GraphErrc build_error(std::size_t n, const std::vector<EdgeSpec>& edges) {
  try {
    build_graph(n, edges);
  } catch (const GraphError& e) {
    return e.code();
  }
  FAIL("expected GraphError");
  return GraphErrc::ParseError;
}

}  // namespace

TEST_CASE("build_graph rejects malformed input") {
  CHECK(build_error(2, {{0, 1, 0, 2}}) == GraphErrc::SelfLoop);
  CHECK(build_error(3, {{0, 1, 1, 1}, {0, 1, 2, 1}}) == GraphErrc::DuplicatePort);
  CHECK(build_error(2, {{0, 2, 1, 1}}) == GraphErrc::PortGap);
  CHECK(build_error(2, {{0, 1, 1, 1}, {0, 2, 1, 2}}) == GraphErrc::MultiEdge);
  CHECK(build_error(4, {{0, 1, 1, 1}, {2, 1, 3, 1}}) == GraphErrc::DisconnectedGraph);
  CHECK(build_error(2, {{0, 1, 5, 1}}) == GraphErrc::UnknownVertex);
}

TEST_CASE("every port leads back to where it came from") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto g = oracle::random_graph(rng, 2 + rng() % 15, 2 + rng() % 4);
    for (VertexId v = 0; v < g.size(); ++v)
      for (Port p = 1; p <= g.degree(v); ++p) {
        const auto& l = g.follow(v, p);
        CHECK(g.follow(l.neighbor, l.neighbor_port).neighbor == v);
        CHECK(g.follow(l.neighbor, l.neighbor_port).neighbor_port == p);
      }
  }
}

TEST_CASE("attach_doors on a path with the middle vertex as anchor") {
  const auto g = oracle::path_graph(3);
  const auto dg = attach_doors(g, {1});
  REQUIRE(dg.graph.size() == 5);
  CHECK(dg.original_size == 3);
  const auto& d = dg.doors.doors.at(0);
  CHECK(d.anchor == 1);
  CHECK(d.buffer == 3);
  CHECK(d.door == 4);
  CHECK(dg.graph.degree(d.door) == 1);
  CHECK(dg.graph.degree(d.buffer) == 2);
  CHECK(dg.graph.port_to(1, d.buffer) == Port{3});
  CHECK(dg.graph.follow(d.buffer, 1).neighbor == 1);
  CHECK(dg.graph.follow(d.buffer, 2).neighbor == d.door);
  CHECK(dg.doors.rank_of_door_vertex(d.door) == std::size_t{1});
  CHECK_FALSE(dg.doors.rank_of_door_vertex(0).has_value());
}

TEST_CASE("attach_doors on a triangle with three anchors") {
  const auto g = build_graph(3, {{0, 1, 1, 1}, {1, 2, 2, 1}, {2, 2, 0, 2}});
  const auto dg = attach_doors(g, {0, 1, 2});
  CHECK(dg.graph.size() == 9);
  CHECK(dg.graph.edge_count() == 3 + 6);
  for (VertexId v = 0; v < 3; ++v) CHECK(dg.graph.degree(v) == 3);
  CHECK_THROWS_AS(attach_doors(g, {0, 0}), GraphError);
  CHECK_THROWS_AS(attach_doors(g, {3}), GraphError);
}

TEST_CASE("distances, balls and neighborhoods agree with a reference BFS") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto g = oracle::random_graph(rng, 1 + rng() % 18, 2 + rng() % 4);
    const auto v = static_cast<VertexId>(rng() % g.size());
    const auto ref = oracle::bfs(g, v);
    CHECK(bfs_distances(g, v) == ref);
    for (std::size_t k = 0; k <= 4; ++k) {
      std::vector<VertexId> exact, within;
      for (VertexId w = 0; w < g.size(); ++w) {
        if (ref[w] == k) exact.push_back(w);
        if (ref[w] <= k) within.push_back(w);
      }
      auto got_exact = neighborhood(g, v, k);
      auto got_within = ball(g, v, k);
      std::sort(got_exact.begin(), got_exact.end());
      std::sort(got_within.begin(), got_within.end());
      CHECK(got_exact == exact);
      CHECK(got_within == within);
    }
  }
}

TEST_CASE("path_set matches brute-force path enumeration") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 150; ++t) {
    const auto g = oracle::random_graph(rng, 2 + rng() % 9, 2 + rng() % 3, 0.4);
    const auto u = static_cast<VertexId>(rng() % g.size());
    const auto w = static_cast<VertexId>(rng() % g.size());
    const std::size_t k = 1 + rng() % 5;
    auto got = path_set(g, u, w, k);
    std::sort(got.begin(), got.end());
    CHECK(got == oracle::brute_path_set(g, u, w, k));
  }
}

TEST_CASE("is_free looks only at neighbours") {
  const auto g = oracle::path_graph(4);
  std::vector<bool> occ{true, false, false, false};
  CHECK_FALSE(is_free(g, occ, 1));
  CHECK(is_free(g, occ, 2));
  CHECK(is_free(g, occ, 0));
}

TEST_CASE("random_connected_graph is connected, bounded and deterministic") {
  for (std::size_t n = 1; n <= 30; ++n)
    for (std::size_t d = 2; d <= 5; ++d)
      for (std::uint64_t s = 0; s < 3; ++s) {
        const auto g = random_connected_graph(n, d, s);
        CHECK(g.size() == n);
        CHECK(g.max_degree() <= d);
        const auto dist = oracle::bfs(g, 0);
        CHECK(std::none_of(dist.begin(), dist.end(), [](auto x) { return x == SIZE_MAX; }));
        CHECK(g == random_connected_graph(n, d, s));
      }
  CHECK_THROWS_AS(random_connected_graph(5, 1, 0), GraphError);
}

TEST_CASE("graph text round trip and parse errors") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const auto g = oracle::random_graph(rng, 2 + rng() % 10, 4);
    const auto anchors = oracle::random_anchors(rng, g.size(), 1 + rng() % 2);
    const auto file = parse_graph_text(to_graph_text(g, anchors));
    CHECK(file.original == g);
    CHECK(file.anchors == anchors);
  }
  const auto f = parse_graph_text("graph 2 # two\nedge 0 1 1 1\ndoor 1 0\nset sched async\n");
  REQUIRE(f.settings.size() == 1);
  CHECK(f.settings[0].first == "sched");
  CHECK(f.settings[0].second == "async");

  for (const char* bad : {"edge 0 1 1 1\n", "graph 2\nedge 0 1 1\n", "graph 2\nfoo\n",
                          "graph 2\nedge 0 1 1 1\ndoor 2 0\n", "graph 2\nedge 0 1 1 1 9\n"}) {
    CAPTURE(bad);
    try {
      parse_graph_text(bad);
      FAIL("parsed");
    } catch (const GraphError& e) {
      CHECK(e.code() == GraphErrc::ParseError);
    }
  }
}
