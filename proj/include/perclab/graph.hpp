#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace perclab {

using VertexId = uint32_t;
constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

struct self_loop_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct duplicate_edge_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct vertex_range_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Membership over vertices 0..n-1 with bitset semantics.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSet of(size_t universe, std::initializer_list<VertexId> members) {
    VertexSet s(universe);
    for (VertexId v : members) s.insert(v);
    return s;
  }

  static VertexSet full(size_t universe) {
    VertexSet s(universe);
    for (size_t v = 0; v < universe; ++v) s.insert(static_cast<VertexId>(v));
    return s;
  }

  size_t universe() const { return universe_; }
  size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(VertexId v) const {
    return v < universe_ && (words_[v >> 6] >> (v & 63)) & 1u;
  }

  void insert(VertexId v) {
    check(v);
    uint64_t& w = words_[v >> 6];
    const uint64_t bit = 1ULL << (v & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }

  void erase(VertexId v) {
    check(v);
    uint64_t& w = words_[v >> 6];
    const uint64_t bit = 1ULL << (v & 63);
    if (w & bit) {
      w &= ~bit;
      --count_;
    }
  }

  VertexSet complement() const {
    VertexSet s(universe_);
    for (size_t v = 0; v < universe_; ++v)
      if (!contains(static_cast<VertexId>(v))) s.insert(static_cast<VertexId>(v));
    return s;
  }

  /// Members in ascending order.
  std::vector<VertexId> to_vector() const {
    std::vector<VertexId> out;
    out.reserve(count_);
    for (size_t v = 0; v < universe_; ++v)
      if (contains(static_cast<VertexId>(v))) out.push_back(static_cast<VertexId>(v));
    return out;
  }

  bool operator==(const VertexSet& other) const {
    return universe_ == other.universe_ && words_ == other.words_;
  }

 private:
  void check(VertexId v) const {
    if (v >= universe_) throw vertex_range_error("vertex " + std::to_string(v) + " outside universe");
  }
  size_t universe_ = 0;
  size_t count_ = 0;
  std::vector<uint64_t> words_;
};

/// Immutable simple undirected graph. Vertices are dense ids 0..n-1,
/// adjacency lists are strictly ascending, isolated vertices are kept.
class Graph {
 public:
  Graph() = default;

  size_t vertex_count() const { return adj_.size(); }
  size_t edge_count() const { return m_; }
  size_t degree(VertexId v) const { return adj_[v].size(); }
  std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }

  bool has_edge(VertexId u, VertexId v) const {
    if (u >= adj_.size() || v >= adj_.size()) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// Edges as ascending (u, v) pairs with u < v; this order is the one
  /// percolation consumes, so it is part of the reproducibility contract.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (VertexId u = 0; u < adj_.size(); ++u)
      for (VertexId v : adj_[u])
        if (v > u) fn(u, v);
  }

  friend Graph build_graph(size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges);

 private:
  std::vector<std::vector<VertexId>> adj_;
  size_t m_ = 0;
};

inline Graph build_graph(size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  Graph g;
  g.adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw vertex_range_error("edge endpoint out of range: (" + std::to_string(u) + "," +
                               std::to_string(v) + ") with n=" + std::to_string(n));
    if (u == v) throw self_loop_error("self-loop at vertex " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (VertexId v = 0; v < n; ++v) {
    auto& a = g.adj_[v];
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw duplicate_edge_error("duplicate edge at vertex " + std::to_string(v));
  }
  g.m_ = edges.size();
  return g;
}

struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> old_to_new;  // kNoVertex for dropped vertices
  std::vector<VertexId> new_to_old;  // ascending, a bijection onto 0..k-1
};

/// Subgraph induced on `keep`, relabeled onto 0..|keep|-1 preserving
/// ascending vertex order.
inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  const size_t n = g.vertex_count();
  InducedSubgraph out;
  out.old_to_new.assign(n, kNoVertex);
  out.new_to_old.reserve(keep.count());
  for (VertexId v = 0; v < n; ++v) {
    if (keep.contains(v)) {
      out.old_to_new[v] = static_cast<VertexId>(out.new_to_old.size());
      out.new_to_old.push_back(v);
    }
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId old_u : out.new_to_old) {
    for (VertexId old_v : g.neighbors(old_u)) {
      if (old_v > old_u && keep.contains(old_v))
        edges.emplace_back(out.old_to_new[old_u], out.old_to_new[old_v]);
    }
  }
  out.graph = build_graph(out.new_to_old.size(), edges);
  return out;
}

/// Number of ordered pairs (u, v) with u in S, v in T and uv an edge.
/// Equals edges from S\T to T plus twice the edges inside S∩T.
inline uint64_t directed_pair_count(const Graph& g, const VertexSet& S, const VertexSet& T) {
  uint64_t count = 0;
  for (size_t u = 0; u < g.vertex_count(); ++u) {
    if (!S.contains(static_cast<VertexId>(u))) continue;
    for (VertexId v : g.neighbors(static_cast<VertexId>(u)))
      if (T.contains(v)) ++count;
  }
  return count;
}

/// |∂_E S|: edges with exactly one endpoint in S.
inline uint64_t boundary_edge_count(const Graph& g, const VertexSet& S) {
  uint64_t count = 0;
  for (size_t u = 0; u < g.vertex_count(); ++u) {
    if (!S.contains(static_cast<VertexId>(u))) continue;
    for (VertexId v : g.neighbors(static_cast<VertexId>(u)))
      if (!S.contains(v)) ++count;
  }
  return count;
}

/// Maximal connected components, largest first; ties broken by the
/// smallest contained vertex id. The first entry is the giant candidate.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  const size_t n = g.vertex_count();
  std::vector<VertexId> comp_of(n, kNoVertex);
  std::vector<std::vector<VertexId>> comps;
  std::vector<VertexId> stack;
  for (VertexId start = 0; start < n; ++start) {
    if (comp_of[start] != kNoVertex) continue;
    const auto id = static_cast<VertexId>(comps.size());
    comps.emplace_back();
    comp_of[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      comps[id].push_back(u);
      for (VertexId v : g.neighbors(u)) {
        if (comp_of[v] == kNoVertex) {
          comp_of[v] = id;
          stack.push_back(v);
        }
      }
    }
  }
  // min contained id is the discovery vertex since starts scan ascending
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
  });
  std::vector<VertexSet> out;
  out.reserve(comps.size());
  for (const auto& members : comps) {
    VertexSet s(n);
    for (VertexId v : members) s.insert(v);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace perclab
