#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "perclab/graph.hpp"

namespace perclab {

/// Rooted tree over original graph ids with a binary S/I label per vertex.
/// parent[] holds local indices; the root points at itself.
struct LabeledTree {
  std::vector<VertexId> vertices;  // original ids
  std::vector<uint32_t> parent;    // local index of parent; root: parent[i] == i
  std::vector<uint8_t> is_s;       // 1 = S, 0 = I

  size_t size() const { return vertices.size(); }

  size_t s_count() const {
    size_t c = 0;
    for (uint8_t b : is_s) c += b;
    return c;
  }

  /// fraction of S vertices >= 1/k, compared exactly.
  bool fraction_at_least(size_t k) const { return s_count() * k >= size(); }

  /// Undirected adjacency in local indices.
  std::vector<std::vector<uint32_t>> adjacency() const {
    std::vector<std::vector<uint32_t>> adj(size());
    for (uint32_t i = 0; i < size(); ++i) {
      if (parent[i] != i) {
        adj[i].push_back(parent[i]);
        adj[parent[i]].push_back(i);
      }
    }
    return adj;
  }
};

/// Deterministic spanning tree of a connected component: BFS from the
/// lowest-id member, neighbors visited in ascending order. Labels come
/// from s_labels.
inline LabeledTree spanning_tree(const Graph& g, const VertexSet& component,
                                 const VertexSet& s_labels) {
  if (component.empty()) throw std::invalid_argument("spanning_tree: empty component");
  const auto members = component.to_vector();
  LabeledTree tree;
  std::vector<uint32_t> local_of(g.vertex_count(), kNoVertex);
  std::deque<VertexId> queue;
  auto add = [&](VertexId v, uint32_t parent_local) {
    const auto local = static_cast<uint32_t>(tree.vertices.size());
    local_of[v] = local;
    tree.vertices.push_back(v);
    tree.parent.push_back(parent_local == kNoVertex ? local : parent_local);
    tree.is_s.push_back(s_labels.contains(v) ? 1 : 0);
  };
  add(members.front(), kNoVertex);
  queue.push_back(members.front());
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : g.neighbors(u)) {
      if (!component.contains(w) || local_of[w] != kNoVertex) continue;
      add(w, local_of[u]);
      queue.push_back(w);
    }
  }
  if (tree.vertices.size() != component.count())
    throw std::invalid_argument("spanning_tree: component is not connected");
  return tree;
}

namespace detail {

/// Subtree sizes and max-component-on-removal for a tree given by local
/// adjacency, rooted at `root`. Returns the centroid (local index):
/// the vertex minimizing the largest component of t - v, ties broken by
/// lowest original id.
inline uint32_t centroid_local(const std::vector<std::vector<uint32_t>>& adj,
                               const std::vector<VertexId>& original, uint32_t root) {
  const size_t n = adj.size();
  std::vector<uint32_t> order, parent(n, root);
  order.reserve(n);
  std::vector<uint8_t> visited(n, 0);
  order.push_back(root);
  visited[root] = 1;
  parent[root] = root;
  for (size_t i = 0; i < order.size(); ++i) {
    const uint32_t u = order[i];
    for (uint32_t w : adj[u]) {
      if (!visited[w]) {
        visited[w] = 1;
        parent[w] = u;
        order.push_back(w);
      }
    }
  }
  std::vector<uint32_t> subtree(n, 1);
  for (size_t i = order.size(); i-- > 1;) subtree[parent[order[i]]] += subtree[order[i]];
  uint32_t best = root;
  size_t best_max = n;
  for (uint32_t v : order) {
    size_t max_comp = n - subtree[v];
    for (uint32_t w : adj[v])
      if (w != parent[v]) max_comp = std::max<size_t>(max_comp, subtree[w]);
    if (max_comp < best_max ||
        (max_comp == best_max && original[v] < original[best])) {
      best_max = max_comp;
      best = v;
    }
  }
  return best;
}

}  // namespace detail

/// Centroid: the vertex minimizing the maximum component size of t - v.
/// Ties broken by lowest original id. The max component is always <= ⌊n/2⌋.
inline VertexId tree_centroid(const LabeledTree& t) {
  if (t.size() == 0) throw std::invalid_argument("tree_centroid: empty tree");
  const auto adj = t.adjacency();
  return t.vertices[detail::centroid_local(adj, t.vertices, 0)];
}

namespace detail {

struct LocalTree {
  // Local working copy: adjacency over member slots, original ids, labels.
  std::vector<std::vector<uint32_t>> adj;
  std::vector<VertexId> original;
  std::vector<uint8_t> is_s;

  size_t size() const { return original.size(); }

  size_t s_count(const std::vector<uint32_t>& subset) const {
    size_t c = 0;
    for (uint32_t v : subset) c += is_s[v];
    return c;
  }

  LocalTree induced(const std::vector<uint32_t>& subset) const {
    LocalTree out;
    std::vector<uint32_t> local_of(adj.size(), kNoVertex);
    out.original.reserve(subset.size());
    for (uint32_t v : subset) {
      local_of[v] = static_cast<uint32_t>(out.original.size());
      out.original.push_back(original[v]);
      out.is_s.push_back(is_s[v]);
    }
    out.adj.resize(subset.size());
    for (uint32_t v : subset)
      for (uint32_t w : adj[v])
        if (local_of[w] != kNoVertex && local_of[v] < local_of[w]) {
          out.adj[local_of[v]].push_back(local_of[w]);
          out.adj[local_of[w]].push_back(local_of[v]);
        }
    return out;
  }

  /// Vertices of the subtree hanging off `child` when the edge
  /// (centroid, child) is cut.
  std::vector<uint32_t> hanging_subtree(uint32_t centroid, uint32_t child) const {
    std::vector<uint32_t> members{child};
    std::vector<uint8_t> visited(adj.size(), 0);
    visited[centroid] = 1;
    visited[child] = 1;
    for (size_t i = 0; i < members.size(); ++i)
      for (uint32_t w : adj[members[i]])
        if (!visited[w]) {
          visited[w] = 1;
          members.push_back(w);
        }
    return members;
  }
};

inline LabeledTree to_labeled_tree(const LocalTree& t) {
  // Re-root at the slot with the smallest original id.
  uint32_t root = 0;
  for (uint32_t v = 1; v < t.size(); ++v)
    if (t.original[v] < t.original[root]) root = v;
  LabeledTree out;
  out.vertices = t.original;
  out.is_s = t.is_s;
  out.parent.assign(t.size(), root);
  std::vector<uint8_t> visited(t.size(), 0);
  std::vector<uint32_t> stack{root};
  visited[root] = 1;
  out.parent[root] = root;
  while (!stack.empty()) {
    const uint32_t u = stack.back();
    stack.pop_back();
    for (uint32_t w : t.adj[u])
      if (!visited[w]) {
        visited[w] = 1;
        out.parent[w] = u;
        stack.push_back(w);
      }
  }
  return out;
}

inline LabeledTree extract_balanced_subtree_impl(LocalTree t, size_t t_target, size_t k) {
  // Invariants on entry: |t| >= 2*t_target, s_count(t)*k >= |t|.
  for (;;) {
    const uint32_t centroid = centroid_local(t.adj, t.original, 0);
    // Children of the centroid in ascending original-id order.
    std::vector<uint32_t> children(t.adj[centroid].begin(), t.adj[centroid].end());
    std::sort(children.begin(), children.end(),
              [&](uint32_t a, uint32_t b) { return t.original[a] < t.original[b]; });
    std::vector<std::vector<uint32_t>> subtrees;
    subtrees.reserve(children.size());
    for (uint32_t c : children) subtrees.push_back(t.hanging_subtree(centroid, c));

    // Case 1: some subtree already has >= t_target vertices. Recurse into
    // it or its complement, whichever keeps the S fraction >= 1/k.
    bool recursed = false;
    for (size_t j = 0; j < subtrees.size(); ++j) {
      if (subtrees[j].size() < t_target) continue;
      const size_t s_in = t.s_count(subtrees[j]);
      std::vector<uint32_t> chosen;
      if (s_in * k >= subtrees[j].size()) {
        chosen = subtrees[j];
      } else {
        std::vector<uint8_t> in_subtree(t.size(), 0);
        for (uint32_t v : subtrees[j]) in_subtree[v] = 1;
        for (uint32_t v = 0; v < t.size(); ++v)
          if (!in_subtree[v]) chosen.push_back(v);
      }
      if (chosen.size() <= 2 * t_target - 1) return to_labeled_tree(t.induced(chosen));
      t = t.induced(chosen);
      recursed = true;
      break;
    }
    if (recursed) continue;

    // Case 2: all subtrees are small and some has S fraction <= 1/k;
    // drop it and continue with the rest.
    bool dropped = false;
    for (size_t j = 0; j < subtrees.size(); ++j) {
      if (t.s_count(subtrees[j]) * k > subtrees[j].size()) continue;
      std::vector<uint8_t> in_subtree(t.size(), 0);
      for (uint32_t v : subtrees[j]) in_subtree[v] = 1;
      std::vector<uint32_t> rest;
      for (uint32_t v = 0; v < t.size(); ++v)
        if (!in_subtree[v]) rest.push_back(v);
      if (rest.size() <= 2 * t_target - 1) return to_labeled_tree(t.induced(rest));
      t = t.induced(rest);
      dropped = true;
      break;
    }
    if (dropped) continue;

    // Case 3: every subtree is small with S fraction strictly above 1/k.
    // Accrete subtrees onto the centroid until the size reaches t_target;
    // integer arithmetic keeps the accreted fraction >= 1/k.
    std::vector<uint32_t> accreted{centroid};
    for (const auto& subtree : subtrees) {
      accreted.insert(accreted.end(), subtree.begin(), subtree.end());
      if (accreted.size() >= t_target) break;
    }
    return to_labeled_tree(t.induced(accreted));
  }
}

}  // namespace detail

/// The tree-sample recursion: given a tree whose S fraction is at least
/// 1/k (k integer) and 1 <= t_target <= |t|/2, returns a subtree with size
/// in [t_target, 2*t_target - 1] and S fraction still >= 1/k.
inline LabeledTree extract_balanced_subtree(const LabeledTree& t, size_t t_target, size_t k) {
  if (k < 1) throw std::invalid_argument("extract_balanced_subtree: k must be >= 1");
  if (t_target < 1 || 2 * t_target > t.size())
    throw std::invalid_argument("extract_balanced_subtree: need 1 <= t_target <= |t|/2");
  if (!t.fraction_at_least(k))
    throw std::invalid_argument("extract_balanced_subtree: S fraction below 1/k");
  detail::LocalTree local;
  local.adj = t.adjacency();
  local.original = t.vertices;
  local.is_s = t.is_s;
  return detail::extract_balanced_subtree_impl(std::move(local), t_target, k);
}

}  // namespace perclab
