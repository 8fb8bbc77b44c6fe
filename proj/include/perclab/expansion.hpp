#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "perclab/graph.hpp"
#include "perclab/prob.hpp"
#include "perclab/rng.hpp"
#include "perclab/spectral.hpp"

namespace perclab {

enum class SubsetRule { at_most_half, strict_half };

struct ExpansionReport {
  bool exact = false;
  double value = 0.0;        // exact c_E when exact
  double lower_bound = 0.0;  // (d - lambda)/2 for regular graphs, else 0
  double upper_bound = 0.0;  // |∂W|/|W| of the best witness found
  std::vector<VertexId> witness;
  SubsetRule subset_rule = SubsetRule::at_most_half;
  bool connected = true;
};

namespace detail {

inline bool ratio_less(uint64_t b1, uint64_t s1, uint64_t b2, uint64_t s2) {
  // b1/s1 < b2/s2 cross-multiplied
  return static_cast<unsigned __int128>(b1) * s2 < static_cast<unsigned __int128>(b2) * s1;
}

inline std::vector<VertexId> mask_to_vertices(uint32_t mask) {
  std::vector<VertexId> out;
  for (uint32_t v = 0; mask; ++v, mask >>= 1)
    if (mask & 1) out.push_back(v);
  return out;
}

inline bool lex_less(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

constexpr size_t kExactExpansionCap = 24;

/// Exact edge expansion by enumerating all 2^n subsets. Admissible sets are
/// nonempty with |S| <= ⌊n/2⌋ (at-most-half) or |S| < n/2 (strict-half).
/// The witness is the lexicographically smallest minimizer. A disconnected
/// graph reports expansion 0 with its smallest component as witness.
inline ExpansionReport exact_edge_expansion(const Graph& g,
                                            SubsetRule rule = SubsetRule::at_most_half) {
  const size_t n = g.vertex_count();
  if (n < 2 || n > kExactExpansionCap)
    throw std::invalid_argument("exact_edge_expansion: need 2 <= n <= 24");
  ExpansionReport report;
  report.exact = true;
  report.subset_rule = rule;

  const auto comps = connected_components(g);
  if (comps.size() > 1) {
    report.connected = false;
    report.value = 0.0;
    report.upper_bound = 0.0;
    const VertexSet* smallest = &comps.back();
    for (const auto& c : comps)
      if (c.count() < smallest->count() ||
          (c.count() == smallest->count() &&
           detail::lex_less(c.to_vector(), smallest->to_vector())))
        smallest = &c;
    report.witness = smallest->to_vector();
    return report;
  }

  std::vector<uint32_t> adj_mask(n, 0);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v : g.neighbors(u)) adj_mask[u] |= 1u << v;

  const size_t max_size = rule == SubsetRule::at_most_half ? n / 2 : (n - 1) / 2;
  uint64_t best_boundary = 0, best_size = 0;
  uint32_t best_mask = 0;
  bool have_best = false;
  const uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  for (uint32_t mask = 1; mask <= full; ++mask) {
    const auto size = static_cast<size_t>(std::popcount(mask));
    if (size > max_size) continue;
    uint64_t boundary = 0;
    uint32_t rest = mask;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      boundary += std::popcount(adj_mask[v] & ~mask);
    }
    if (!have_best || detail::ratio_less(boundary, size, best_boundary, best_size) ||
        (!detail::ratio_less(best_boundary, best_size, boundary, size) &&
         detail::lex_less(detail::mask_to_vertices(mask), detail::mask_to_vertices(best_mask)))) {
      best_boundary = boundary;
      best_size = size;
      best_mask = mask;
      have_best = true;
    }
  }
  report.value = static_cast<double>(best_boundary) / static_cast<double>(best_size);
  report.upper_bound = report.value;
  report.lower_bound = report.value;
  report.witness = detail::mask_to_vertices(best_mask);
  return report;
}

namespace detail {

/// Incremental cut tracker: add vertices one at a time, boundary and size
/// maintained in O(deg) per addition.
struct CutTracker {
  const Graph& g;
  std::vector<uint8_t> member;
  uint64_t boundary = 0;
  uint64_t size = 0;

  explicit CutTracker(const Graph& graph) : g(graph), member(graph.vertex_count(), 0) {}

  void add(VertexId v) {
    uint64_t inside = 0;
    for (VertexId w : g.neighbors(v)) inside += member[w];
    boundary += g.degree(v) - 2 * inside;
    member[v] = 1;
    ++size;
  }

  void remove(VertexId v) {
    member[v] = 0;
    uint64_t inside = 0;
    for (VertexId w : g.neighbors(v)) inside += member[w];
    boundary -= g.degree(v) - 2 * inside;
    --size;
  }

  double ratio() const {
    return size == 0 ? std::numeric_limits<double>::infinity()
                     : static_cast<double>(boundary) / static_cast<double>(size);
  }
};

struct BestCut {
  double ratio = std::numeric_limits<double>::infinity();
  std::vector<VertexId> witness;

  void offer(const CutTracker& cut) {
    const double r = cut.ratio();
    if (r < ratio) {
      ratio = r;
      witness.clear();
      for (VertexId v = 0; v < cut.member.size(); ++v)
        if (cut.member[v]) witness.push_back(v);
    }
  }
};

/// Evaluates every prefix of the given vertex order with size <= cap.
inline void sweep_prefixes(const Graph& g, const std::vector<VertexId>& order, size_t cap,
                           BestCut& best) {
  CutTracker cut(g);
  for (VertexId v : order) {
    cut.add(v);
    if (cut.size > cap) break;
    best.offer(cut);
  }
}

inline std::vector<VertexId> bfs_order(const Graph& g, VertexId root) {
  std::vector<VertexId> order;
  std::vector<uint8_t> visited(g.vertex_count(), 0);
  order.push_back(root);
  visited[root] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (VertexId w : g.neighbors(order[i]))
      if (!visited[w]) {
        visited[w] = 1;
        order.push_back(w);
      }
  return order;
}

}  // namespace detail

/// Witness search for the edge expansion of large graphs: BFS-ball prefixes
/// from random roots, a sweep cut of an approximate second eigenvector, and
/// randomized local moves from the best cut found. Every candidate set
/// yields a sound upper bound; the lower bound is the spectral one when the
/// graph is regular.
inline ExpansionReport expansion_upper_bound(const Graph& g, size_t trials, uint64_t seed) {
  const size_t n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("expansion_upper_bound: need n >= 2");
  ExpansionReport report;
  report.exact = false;
  report.subset_rule = SubsetRule::at_most_half;
  const size_t cap = n / 2;
  detail::BestCut best;

  const auto comps = connected_components(g);
  if (comps.size() > 1) {
    report.connected = false;
    const auto& smallest = comps.back();
    best.ratio = 0.0;
    best.witness = smallest.to_vector();
  }

  // (i) BFS prefixes from deterministic root 0 plus random roots.
  detail::sweep_prefixes(g, detail::bfs_order(g, 0), cap, best);
  Xoshiro256pp rng(seed);
  for (size_t t = 0; t < trials; ++t) {
    const auto root = static_cast<VertexId>(rng.next_below(n));
    detail::sweep_prefixes(g, detail::bfs_order(g, root), cap, best);
  }

  // (ii) Sweep cut of an approximate second eigenvector: iterate A + dI on
  // the complement of the all-ones vector, then order by component value.
  {
    size_t dmax = 0;
    for (VertexId v = 0; v < n; ++v) dmax = std::max(dmax, g.degree(v));
    std::vector<double> x(n), y(n);
    Xoshiro256pp vec_rng(splitmix64(seed ^ 0x5eedULL));
    for (double& xi : x) xi = vec_rng.next_unit() - 0.5;
    for (int it = 0; it < 200; ++it) {
      detail::project_out_ones_and_normalize(x);
      for (VertexId v = 0; v < n; ++v) {
        double acc = static_cast<double>(dmax) * x[v];
        for (VertexId w : g.neighbors(v)) acc += x[w];
        y[v] = acc;
      }
      std::swap(x, y);
    }
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      if (x[a] != x[b]) return x[a] > x[b];
      return a < b;
    });
    detail::sweep_prefixes(g, order, cap, best);
    std::reverse(order.begin(), order.end());
    detail::sweep_prefixes(g, order, cap, best);
  }

  // (iii) Randomized local moves from the best cut so far.
  if (!best.witness.empty() && best.ratio > 0.0) {
    detail::CutTracker cut(g);
    for (VertexId v : best.witness) cut.add(v);
    Xoshiro256pp move_rng(splitmix64(seed ^ 0x10caULL));
    const size_t moves = 50 * n;
    for (size_t i = 0; i < moves; ++i) {
      const auto v = static_cast<VertexId>(move_rng.next_below(n));
      const double before = cut.ratio();
      if (cut.member[v]) {
        if (cut.size <= 1) continue;
        cut.remove(v);
        if (cut.ratio() <= before) best.offer(cut);
        else cut.add(v);
      } else {
        if (cut.size >= cap) continue;
        cut.add(v);
        if (cut.ratio() <= before) best.offer(cut);
        else cut.remove(v);
      }
    }
  }

  report.upper_bound = best.ratio;
  report.witness = best.witness;
  report.value = best.ratio;
  // Spectral lower bound when regular (measure lambda here).
  bool regular = true;
  for (VertexId v = 1; v < n; ++v)
    if (g.degree(v) != g.degree(0)) {
      regular = false;
      break;
    }
  if (regular && report.connected) {
    const auto spectrum = second_eigenvalue_abs(g);
    report.lower_bound = std::max(0.0, spectral_expansion_lower_bound(g.degree(0), spectrum.lambda));
  } else {
    report.lower_bound = 0.0;
  }
  return report;
}

struct CoreExpansionSample {
  size_t size = 0;
  uint64_t boundary = 0;
  double ratio = 0.0;
  bool meets_bound = true;  // boundary/size >= pd/13, compared exactly
};

struct CoreExpansionReport {
  size_t samples = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double bound = 0.0;  // pd/13
  bool all_meet_bound = true;
  std::optional<CoreExpansionSample> worst;
  std::vector<VertexId> worst_witness;
};

/// Evidence (not proof) for the pd/13 edge expansion of the peeled core:
/// grows random connected subsets by BFS with a random frontier, sizes
/// log-uniform up to n/2, and compares each |∂S|/|S| against pd/13 with
/// exact arithmetic.
inline CoreExpansionReport sampled_core_expansion(const Graph& gpk, const RetentionProb& p,
                                                  size_t d, size_t samples, uint64_t seed) {
  CoreExpansionReport report;
  report.bound = p.value() * static_cast<double>(d) / 13.0;
  const size_t n = gpk.vertex_count();
  if (n == 0) return report;
  const size_t cap = std::max<size_t>(1, n / 2);

  std::vector<uint8_t> member(n, 0);
  std::vector<VertexId> added;
  std::vector<VertexId> frontier;
  for (uint64_t i = 0; i < samples; ++i) {
    Xoshiro256pp rng(sample_seed(seed, i));
    const auto root = static_cast<VertexId>(rng.next_below(n));
    const size_t target = log_uniform_size(rng, cap);
    added.clear();
    frontier.clear();
    uint64_t boundary = 0;
    auto add = [&](VertexId v) {
      uint64_t inside = 0;
      for (VertexId w : gpk.neighbors(v)) {
        inside += member[w];
        if (!member[w]) frontier.push_back(w);
      }
      boundary += gpk.degree(v) - 2 * inside;
      member[v] = 1;
      added.push_back(v);
    };
    add(root);
    while (added.size() < target && !frontier.empty()) {
      const size_t idx = rng.next_below(frontier.size());
      const VertexId v = frontier[idx];
      frontier[idx] = frontier.back();
      frontier.pop_back();
      if (member[v]) continue;
      add(v);
    }
    CoreExpansionSample sample;
    sample.size = added.size();
    sample.boundary = boundary;
    sample.ratio = static_cast<double>(boundary) / static_cast<double>(added.size());
    sample.meets_bound = meets_core_expansion(boundary, added.size(), p, d);
    ++report.samples;
    if (sample.ratio < report.min_ratio) {
      report.min_ratio = sample.ratio;
      report.worst = sample;
      report.worst_witness = added;
    }
    if (!sample.meets_bound) report.all_meet_bound = false;
    for (VertexId v : added) member[v] = 0;
  }
  return report;
}

}  // namespace perclab
