#pragma once

// Shared fixture graphs and independent oracles for the test suites. The
// oracles here deliberately avoid the library's implementation paths: peels
// are replayed with alternative removal orders, trees come from Prüfer
// sequences, and small-graph quantities are recomputed by enumeration.

#include <algorithm>
#include <set>
#include <vector>

#include "perclab/perclab.hpp"

namespace testsupport {

using namespace perclab;

inline Graph petersen() {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);           // outer cycle
    edges.emplace_back(i, i + 5);                 // spokes
    edges.emplace_back(i + 5, 5 + (i + 2) % 5);   // inner pentagram
  }
  std::vector<std::pair<VertexId, VertexId>> normalized;
  for (auto [u, v] : edges) normalized.emplace_back(std::min(u, v), std::max(u, v));
  return build_graph(10, normalized);
}

inline Graph path_graph(size_t n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return build_graph(n, edges);
}

/// Two cliques of size `clique` joined by one bridge edge.
inline Graph dumbbell(size_t clique) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto add_clique = [&](VertexId base) {
    for (VertexId u = 0; u < clique; ++u)
      for (VertexId v = u + 1; v < clique; ++v) edges.emplace_back(base + u, base + v);
  };
  add_clique(0);
  add_clique(static_cast<VertexId>(clique));
  edges.emplace_back(static_cast<VertexId>(clique - 1), static_cast<VertexId>(clique));
  return build_graph(2 * clique, edges);
}

/// Batch peel: removes every below-threshold vertex of each round at once.
/// Independent oracle for the order-invariance property.
inline VertexSet batch_peel_survivors(const Graph& gp, const RetentionProb& p, size_t d) {
  const size_t n = gp.vertex_count();
  const VertexSet s0 = compute_s0(gp, p, d);
  std::vector<bool> removed(n, false);
  std::vector<uint32_t> deg(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (s0.contains(v)) {
      removed[v] = true;
      continue;
    }
    for (VertexId w : gp.neighbors(v)) deg[v] += !s0.contains(w);
  }
  for (;;) {
    std::vector<VertexId> round;
    for (VertexId v = 0; v < n; ++v)
      if (!removed[v] && below_peel_threshold(deg[v], p, d)) round.push_back(v);
    if (round.empty()) break;
    for (VertexId v : round) removed[v] = true;
    for (VertexId v : round)
      for (VertexId w : gp.neighbors(v))
        if (!removed[w]) --deg[w];
  }
  VertexSet survivors(n);
  for (VertexId v = 0; v < n; ++v)
    if (!removed[v]) survivors.insert(v);
  return survivors;
}

/// Random-order peel: removes a uniformly random below-threshold vertex
/// each step.
inline VertexSet random_order_peel_survivors(const Graph& gp, const RetentionProb& p, size_t d,
                                             uint64_t seed) {
  const size_t n = gp.vertex_count();
  const VertexSet s0 = compute_s0(gp, p, d);
  std::vector<bool> removed(n, false);
  std::vector<uint32_t> deg(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (s0.contains(v)) {
      removed[v] = true;
      continue;
    }
    for (VertexId w : gp.neighbors(v)) deg[v] += !s0.contains(w);
  }
  Xoshiro256pp rng(seed);
  std::vector<VertexId> pending;
  std::vector<bool> queued(n, false);
  for (VertexId v = 0; v < n; ++v)
    if (!removed[v] && below_peel_threshold(deg[v], p, d)) {
      pending.push_back(v);
      queued[v] = true;
    }
  while (!pending.empty()) {
    const size_t idx = rng.next_below(pending.size());
    const VertexId v = pending[idx];
    pending[idx] = pending.back();
    pending.pop_back();
    removed[v] = true;
    for (VertexId w : gp.neighbors(v)) {
      if (removed[w]) continue;
      --deg[w];
      if (!queued[w] && below_peel_threshold(deg[w], p, d)) {
        pending.push_back(w);
        queued[w] = true;
      }
    }
  }
  VertexSet survivors(n);
  for (VertexId v = 0; v < n; ++v)
    if (!removed[v]) survivors.insert(v);
  return survivors;
}

/// Prüfer decode: every sequence over [0,n)^(n-2) yields a distinct labeled
/// tree, so iterating sequences enumerates all labeled trees.
inline std::vector<std::pair<VertexId, VertexId>> prufer_decode(size_t n,
                                                                const std::vector<uint32_t>& seq) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  if (n <= 1) return edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
    return edges;
  }
  std::vector<uint32_t> degree(n, 1);
  for (uint32_t x : seq) ++degree[x];
  std::vector<bool> used(n, false);
  for (uint32_t x : seq) {
    uint32_t leaf = 0;
    while (leaf < n && (used[leaf] || degree[leaf] != 1)) ++leaf;
    edges.emplace_back(std::min<VertexId>(leaf, x), std::max<VertexId>(leaf, x));
    used[leaf] = true;
    --degree[x];
  }
  std::vector<VertexId> last;
  for (uint32_t v = 0; v < n; ++v)
    if (!used[v] && degree[v] == 1) last.push_back(v);
  edges.emplace_back(std::min(last[0], last[1]), std::max(last[0], last[1]));
  return edges;
}

/// LabeledTree from explicit tree edges and an S set, rooted at 0 by BFS.
inline LabeledTree make_labeled_tree(size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges,
                                     const std::set<VertexId>& s_vertices) {
  const Graph g = build_graph(n, edges);
  VertexSet all = VertexSet::full(n);
  VertexSet labels(n);
  for (VertexId v : s_vertices) labels.insert(v);
  return spanning_tree(g, all, labels);
}

/// Checks that `sub` is a genuine subtree of the tree `g` (vertices exist,
/// connected, parent edges are tree edges).
inline bool is_subtree_of(const LabeledTree& sub, const Graph& tree_graph) {
  for (uint32_t i = 0; i < sub.size(); ++i) {
    if (sub.parent[i] == i) continue;
    if (!tree_graph.has_edge(sub.vertices[i], sub.vertices[sub.parent[i]])) return false;
  }
  // connectivity: parent structure with a single root
  size_t roots = 0;
  for (uint32_t i = 0; i < sub.size(); ++i) roots += sub.parent[i] == i;
  return roots == 1;
}

}  // namespace testsupport
