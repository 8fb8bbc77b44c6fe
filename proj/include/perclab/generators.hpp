#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "perclab/graph.hpp"
#include "perclab/rng.hpp"

namespace perclab {

enum class GraphFamily { complete, cycle, random_regular, paley };

struct GeneratorSpec {
  GraphFamily family = GraphFamily::random_regular;
  size_t n = 0;      // vertex count (complete, cycle, random-regular)
  size_t d = 0;      // degree (random-regular)
  uint64_t q = 0;    // prime, q ≡ 1 (mod 4) (paley)
  uint64_t seed = 0; // random-regular only
};

inline Graph complete_graph(size_t n) {
  if (n < 2) throw std::invalid_argument("complete_graph: n must be >= 2");
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(n * (n - 1) / 2);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return build_graph(n, edges);
}

inline Graph cycle_graph(size_t n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: n must be >= 3");
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(n);
  for (VertexId u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  edges.emplace_back(0, static_cast<VertexId>(n - 1));
  return build_graph(n, edges);
}

namespace detail {

struct PairHash {
  size_t operator()(uint64_t key) const { return splitmix64(key); }
};

inline uint64_t edge_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(u) << 32) | v;
}

inline void fisher_yates(std::vector<VertexId>& a, Xoshiro256pp& rng) {
  if (a.size() < 2) return;
  for (size_t i = a.size() - 1; i >= 1; --i) {
    const size_t j = rng.next_below(i + 1);
    std::swap(a[i], a[j]);
  }
}

}  // namespace detail

/// Configuration-model sampler for simple d-regular graphs. Each round
/// shuffles the unpaired half-edge array (Fisher-Yates on the xoshiro
/// stream), pairs consecutive slots, keeps the suitable pairs and requeues
/// the stubs of self-loops and repeated edges. A round that makes no
/// progress discards everything and restarts from the full stub array;
/// the restart budget is 10,000 attempts.
inline Graph random_regular(size_t n, size_t d, uint64_t seed) {
  if (d < 3 || d >= n)
    throw std::invalid_argument("random_regular: need 3 <= d < n");
  if ((n * d) % 2 != 0)
    throw std::invalid_argument("random_regular: n*d must be even");
  constexpr int kRestartBudget = 10000;
  Xoshiro256pp rng(seed);
  for (int attempt = 1; attempt <= kRestartBudget; ++attempt) {
    std::vector<VertexId> stubs;
    stubs.reserve(n * d);
    for (VertexId v = 0; v < n; ++v)
      for (size_t i = 0; i < d; ++i) stubs.push_back(v);
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(n * d / 2);
    std::unordered_set<uint64_t, detail::PairHash> seen;
    seen.reserve(n * d);
    bool stalled = false;
    while (!stubs.empty()) {
      detail::fisher_yates(stubs, rng);
      std::vector<VertexId> requeued;
      for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const VertexId u = stubs[i], v = stubs[i + 1];
        if (u == v || !seen.insert(detail::edge_key(u, v)).second) {
          requeued.push_back(u);
          requeued.push_back(v);
        } else {
          edges.emplace_back(u, v);
        }
      }
      if (requeued.size() == stubs.size()) {
        stalled = true;
        break;
      }
      stubs = std::move(requeued);
    }
    if (!stalled) return build_graph(n, edges);
  }
  throw std::runtime_error("random_regular: restart budget exhausted after " +
                           std::to_string(kRestartBudget) + " attempts");
}

namespace detail {
inline bool is_prime(uint64_t q) {
  if (q < 2) return false;
  for (uint64_t f = 2; f * f <= q; ++f)
    if (q % f == 0) return false;
  return true;
}
}  // namespace detail

/// Paley graph on Z_q: u ~ v iff u-v is a nonzero quadratic residue.
/// q ≡ 1 (mod 4) makes -1 a residue, so the relation is symmetric.
inline Graph paley_graph(uint64_t q) {
  if (!detail::is_prime(q) || q % 4 != 1)
    throw std::invalid_argument("paley_graph: q must be prime with q ≡ 1 (mod 4)");
  std::vector<bool> residue(q, false);
  for (uint64_t x = 1; x < q; ++x) residue[(x * x) % q] = true;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (uint64_t u = 0; u < q; ++u)
    for (uint64_t v = u + 1; v < q; ++v)
      if (residue[(v - u) % q]) edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  return build_graph(q, edges);
}

/// Regularity degree for each family (n-1, 2, d, (q-1)/2).
inline size_t family_degree(const GeneratorSpec& spec) {
  switch (spec.family) {
    case GraphFamily::complete: return spec.n - 1;
    case GraphFamily::cycle: return 2;
    case GraphFamily::random_regular: return spec.d;
    case GraphFamily::paley: return (spec.q - 1) / 2;
  }
  throw std::logic_error("unknown family");
}

inline Graph generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case GraphFamily::complete: return complete_graph(spec.n);
    case GraphFamily::cycle: return cycle_graph(spec.n);
    case GraphFamily::random_regular: return random_regular(spec.n, spec.d, spec.seed);
    case GraphFamily::paley: return paley_graph(spec.q);
  }
  throw std::logic_error("unknown family");
}

inline std::string family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::complete: return "complete";
    case GraphFamily::cycle: return "cycle";
    case GraphFamily::random_regular: return "random-regular";
    case GraphFamily::paley: return "paley";
  }
  return "?";
}

inline GraphFamily family_from_name(const std::string& name) {
  if (name == "complete") return GraphFamily::complete;
  if (name == "cycle") return GraphFamily::cycle;
  if (name == "random-regular") return GraphFamily::random_regular;
  if (name == "paley") return GraphFamily::paley;
  throw std::invalid_argument("unknown graph family: " + name);
}

}  // namespace perclab
