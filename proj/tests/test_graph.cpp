#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "perclab/edge_list_io.hpp"
#include "perclab/generators.hpp"
#include "perclab/graph.hpp"
#include "perclab/rng.hpp"
#include "support.hpp"

using namespace perclab;

TEST_CASE("build_graph accepts a triangle") {
  const Graph g = build_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  for (VertexId v = 0; v < 3; ++v) CHECK(g.degree(v) == 2);
  CHECK(g.has_edge(2, 0));
}

TEST_CASE("build_graph rejects malformed input with distinct errors") {
  CHECK_THROWS_AS(build_graph(2, {{0, 0}}), self_loop_error);
  CHECK_THROWS_AS(build_graph(4, {{0, 1}, {1, 0}}), duplicate_edge_error);
  CHECK_THROWS_AS(build_graph(4, {{0, 1}, {0, 1}}), duplicate_edge_error);
  CHECK_THROWS_AS(build_graph(3, {{0, 3}}), vertex_range_error);
}

TEST_CASE("adjacency lists are strictly ascending and degrees sum to 2m") {
  const Graph g = build_graph(5, {{4, 0}, {2, 1}, {0, 2}, {3, 0}});
  size_t total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto nb = g.neighbors(v);
    for (size_t i = 1; i < nb.size(); ++i) REQUIRE(nb[i - 1] < nb[i]);
    total += g.degree(v);
  }
  CHECK(total == 2 * g.edge_count());
}

TEST_CASE("induced subgraph of K4 on three vertices is K3") {
  const Graph k4 = complete_graph(4);
  const auto sub = induced_subgraph(k4, VertexSet::of(4, {0, 1, 2}));
  CHECK(sub.graph.vertex_count() == 3);
  CHECK(sub.graph.edge_count() == 3);
  CHECK(sub.new_to_old == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("induced subgraph on all vertices is an identity relabel") {
  const Graph g = cycle_graph(7);
  const auto sub = induced_subgraph(g, VertexSet::full(7));
  CHECK(sub.graph.edge_count() == g.edge_count());
  for (VertexId v = 0; v < 7; ++v) CHECK(sub.old_to_new[v] == v);
}

TEST_CASE("induced subgraph of C5 on {0,1,3} has exactly the edge (0,1)") {
  const Graph c5 = cycle_graph(5);
  const auto sub = induced_subgraph(c5, VertexSet::of(5, {0, 1, 3}));
  CHECK(sub.graph.vertex_count() == 3);
  CHECK(sub.graph.edge_count() == 1);
  CHECK(sub.graph.has_edge(0, 1));
  CHECK(sub.graph.degree(2) == 0);  // vertex 3 relabels to 2 and is isolated
}

TEST_CASE("directed pair count on K5 matches enumeration") {
  const Graph k5 = complete_graph(5);
  CHECK(directed_pair_count(k5, VertexSet::of(5, {0, 1}), VertexSet::of(5, {1, 2})) == 3);
  CHECK(directed_pair_count(k5, VertexSet::full(5), VertexSet::full(5)) == 2 * k5.edge_count());
  CHECK(directed_pair_count(k5, VertexSet(5), VertexSet::full(5)) == 0);
}

TEST_CASE("boundary edge counts on K4") {
  const Graph k4 = complete_graph(4);
  CHECK(boundary_edge_count(k4, VertexSet::of(4, {0})) == 3);
  CHECK(boundary_edge_count(k4, VertexSet::of(4, {0, 1})) == 4);
  CHECK(boundary_edge_count(k4, VertexSet::full(4)) == 0);
}

TEST_CASE("graph invariants hold on random graphs") {
  // test-side G(n, p) sampler, independent of the library's percolation
  Xoshiro256pp rng(1234);
  for (int round = 0; round < 30; ++round) {
    const size_t n = 2 + rng.next_below(20);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (rng.next_unit() < 0.3) edges.emplace_back(u, v);
    const Graph g = build_graph(n, edges);

    VertexSet s(n), t(n);
    for (VertexId v = 0; v < n; ++v) {
      if (rng.next_unit() < 0.5) s.insert(v);
      if (rng.next_unit() < 0.5) t.insert(v);
    }
    const uint64_t selfpairs = directed_pair_count(g, s, s);
    CHECK(selfpairs % 2 == 0);  // twice the internal edge count
    CHECK(boundary_edge_count(g, s) == boundary_edge_count(g, s.complement()));
    CHECK(directed_pair_count(g, s, t) == directed_pair_count(g, t, s));
    CHECK(boundary_edge_count(g, s) == directed_pair_count(g, s, s.complement()));

    const auto comps = connected_components(g);
    size_t covered = 0;
    for (const auto& comp : comps) covered += comp.count();
    CHECK(covered == n);
    for (size_t i = 1; i < comps.size(); ++i) CHECK(comps[i - 1].count() >= comps[i].count());

    // un-relabeling an induced subgraph gives a subset of the original edges
    const auto sub = induced_subgraph(g, s);
    sub.graph.for_each_edge([&](VertexId u, VertexId v) {
      REQUIRE(g.has_edge(sub.new_to_old[u], sub.new_to_old[v]));
    });
  }
}

TEST_CASE("connected components on fixed shapes") {
  CHECK(connected_components(cycle_graph(6)).size() == 1);
  const Graph edgeless = build_graph(4, {});
  const auto comps = connected_components(edgeless);
  REQUIRE(comps.size() == 4);
  for (const auto& comp : comps) CHECK(comp.count() == 1);

  // two disjoint triangles, ordered by smallest contained vertex id
  const Graph two = build_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  const auto tc = connected_components(two);
  REQUIRE(tc.size() == 2);
  CHECK(tc[0].contains(0));
  CHECK(tc[1].contains(3));
}

TEST_CASE("edge list round trip is bit-exact") {
  const Graph g = build_graph(4, {{0, 1}, {0, 3}, {1, 2}});
  std::ostringstream os;
  write_edge_list(g, os);
  CHECK(os.str() == "4 3\n0 1\n0 3\n1 2\n");
  std::istringstream is(os.str());
  const Graph back = read_edge_list(is);
  CHECK(back.vertex_count() == 4);
  CHECK(back.has_edge(0, 3));
  CHECK(back.edge_count() == 3);
}

TEST_CASE("edge list parser rejects bad input") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_edge_list(is);
  };
  CHECK_THROWS(parse(""));
  CHECK_THROWS(parse("2 1\n1 0\n"));          // u >= v
  CHECK_THROWS(parse("3 2\n1 2\n0 1\n"));     // out of order
  CHECK_THROWS(parse("3 2\n0 1\n"));          // missing edge
  CHECK_THROWS(parse("2 1\n0 5\n"));          // endpoint range
}

TEST_CASE("vertex set basics") {
  VertexSet s(10);
  s.insert(3);
  s.insert(7);
  s.insert(3);
  CHECK(s.count() == 2);
  CHECK(s.contains(3));
  CHECK(!s.contains(4));
  CHECK_THROWS_AS(s.insert(10), vertex_range_error);
  CHECK(s.complement().count() == 8);
  CHECK(s.to_vector() == std::vector<VertexId>{3, 7});
  s.erase(3);
  CHECK(s.count() == 1);
}
