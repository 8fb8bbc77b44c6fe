#pragma once

#include <cstdint>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "perclab/graph.hpp"
#include "perclab/prob.hpp"
#include "perclab/rng.hpp"

namespace perclab {

struct PercolationParams {
  RetentionProb p;
  uint64_t seed = 0;
  size_t d = 0;  // regularity degree of the host graph

  /// Outside the theorem hypothesis (p < 5c/√d or c >= √d/5); advisory only.
  bool outside_theorem_regime(double c) const {
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    return p.value() < 5.0 * c / sqrt_d || c >= sqrt_d / 5.0;
  }
};

/// Keeps each edge independently with probability p. Edges are examined in
/// ascending (u,v) order with one 64-bit draw per edge, kept iff
/// draw < floor(p * 2^64); exact in 128-bit arithmetic, so the output is
/// bit-reproducible for a given seed.
inline Graph percolate(const Graph& g, const RetentionProb& p, uint64_t seed) {
  Xoshiro256pp rng(seed);
  using u128 = unsigned __int128;
  const u128 threshold = (u128(p.num) << 64) / p.den;
  std::vector<std::pair<VertexId, VertexId>> kept;
  g.for_each_edge([&](VertexId u, VertexId v) {
    if (u128(rng.next()) < threshold) kept.emplace_back(u, v);
  });
  return build_graph(g.vertex_count(), kept);
}

/// S_0: vertices of the percolated graph whose degree falls outside
/// [4pd/5, 6pd/5]. Comparisons are exact.
inline VertexSet compute_s0(const Graph& gp, const RetentionProb& p, size_t d) {
  VertexSet s0(gp.vertex_count());
  for (VertexId v = 0; v < gp.vertex_count(); ++v)
    if (!in_s0_window(gp.degree(v), p, d)) s0.insert(v);
  return s0;
}

struct Removal {
  VertexId vertex = 0;
  uint32_t iteration = 0;       // 1-based; one vertex per iteration
  uint32_t degree = 0;          // degree in the remaining graph at removal
  uint32_t edges_into_removed = 0;  // edges into S_0 ∪ previously removed
};

struct PruneTrace {
  VertexSet s0;
  std::vector<Removal> removals;
  VertexSet survivors;  // V(G_p^k)
  VertexSet out;        // V \ survivors = s0 ∪ removed
  PercolationParams params;
};

/// The two-phase pruning: delete S_0, then repeatedly remove the lowest-id
/// vertex whose current degree is < 3pd/5, one vertex per iteration, until
/// the remaining graph has minimal degree >= 3pd/5. Total work O(m + n log n):
/// a vertex's degree only decreases, so it enters the pending queue once.
inline PruneTrace peel(const Graph& gp, const RetentionProb& p, size_t d) {
  if (p.is_zero()) throw std::invalid_argument("peel: p must be positive for peeling");
  const size_t n = gp.vertex_count();
  PruneTrace trace;
  trace.params.p = p;
  trace.params.d = d;
  trace.s0 = compute_s0(gp, p, d);

  std::vector<bool> removed(n, false);
  std::vector<uint32_t> cur_deg(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (trace.s0.contains(v)) {
      removed[v] = true;
      continue;
    }
    uint32_t deg = 0;
    for (VertexId w : gp.neighbors(v))
      if (!trace.s0.contains(w)) ++deg;
    cur_deg[v] = deg;
  }

  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> pending;
  for (VertexId v = 0; v < n; ++v)
    if (!removed[v] && below_peel_threshold(cur_deg[v], p, d)) pending.push(v);

  uint32_t iteration = 0;
  while (!pending.empty()) {
    const VertexId v = pending.top();
    pending.pop();
    ++iteration;
    trace.removals.push_back(
        {v, iteration, cur_deg[v], static_cast<uint32_t>(gp.degree(v) - cur_deg[v])});
    removed[v] = true;
    for (VertexId w : gp.neighbors(v)) {
      if (removed[w]) continue;
      const uint32_t was = cur_deg[w]--;
      if (!below_peel_threshold(was, p, d) && below_peel_threshold(was - 1, p, d))
        pending.push(w);
    }
  }

  trace.survivors = VertexSet(n);
  trace.out = VertexSet(n);
  for (VertexId v = 0; v < n; ++v)
    (removed[v] ? trace.out : trace.survivors).insert(v);
  return trace;
}

struct TraceViolation {
  std::string what;
  VertexId vertex = kNoVertex;
};

/// Replays a trace against the percolated graph and checks every invariant:
/// the out/survivor partition, the S_0 degree window, the per-removal degree
/// and edges-into-removed records (degree < 3pd/5, edges >= pd/5), and the
/// final min-degree condition on the survivors. Violations are data.
inline std::vector<TraceViolation> verify_trace(const Graph& gp, const PruneTrace& trace) {
  std::vector<TraceViolation> violations;
  const size_t n = gp.vertex_count();
  const RetentionProb& p = trace.params.p;
  const size_t d = trace.params.d;
  auto flag = [&](const std::string& what, VertexId v) { violations.push_back({what, v}); };

  if (trace.s0.universe() != n || trace.survivors.universe() != n || trace.out.universe() != n) {
    flag("trace universes do not match graph", kNoVertex);
    return violations;
  }
  for (VertexId v = 0; v < n; ++v) {
    const bool in_out = trace.out.contains(v);
    if (in_out == trace.survivors.contains(v)) flag("out is not the complement of survivors", v);
    if (trace.s0.contains(v)) {
      if (!in_out) flag("s0 vertex not in out", v);
      if (in_s0_window(gp.degree(v), p, d)) flag("s0 vertex is inside the degree window", v);
    } else if (!in_s0_window(gp.degree(v), p, d)) {
      flag("window violator missing from s0", v);
    }
  }
  if (trace.s0.count() + trace.removals.size() != trace.out.count())
    flag("out size does not equal |s0| + |removals|", kNoVertex);

  // Replay the iterative phase.
  std::vector<bool> removed(n, false);
  std::vector<uint32_t> cur_deg(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (trace.s0.contains(v)) {
      removed[v] = true;
      continue;
    }
    uint32_t deg = 0;
    for (VertexId w : gp.neighbors(v))
      if (!trace.s0.contains(w)) ++deg;
    cur_deg[v] = deg;
  }
  uint32_t prev_iteration = 0;
  for (const Removal& r : trace.removals) {
    if (r.vertex >= n) {
      flag("removal vertex out of range", r.vertex);
      continue;
    }
    if (r.iteration <= prev_iteration) flag("iteration indices not strictly increasing", r.vertex);
    prev_iteration = r.iteration;
    if (removed[r.vertex]) {
      flag("vertex removed twice (or is in s0)", r.vertex);
      continue;
    }
    if (cur_deg[r.vertex] != r.degree) flag("recorded degree differs from replay", r.vertex);
    if (!below_peel_threshold(r.degree, p, d)) flag("removed vertex not below 3pd/5", r.vertex);
    const auto into_removed = static_cast<uint32_t>(gp.degree(r.vertex) - cur_deg[r.vertex]);
    if (into_removed != r.edges_into_removed)
      flag("recorded edges-into-removed differs from replay", r.vertex);
    if (!meets_fifth_pd(r.edges_into_removed, p, d))
      flag("removed non-s0 vertex has fewer than pd/5 edges into removed set", r.vertex);
    removed[r.vertex] = true;
    for (VertexId w : gp.neighbors(r.vertex))
      if (!removed[w]) --cur_deg[w];
  }
  for (VertexId v = 0; v < n; ++v) {
    if (removed[v] != trace.out.contains(v))
      flag("removal log does not produce the recorded out set", v);
  }
  // Final state: every survivor meets the 3pd/5 floor inside G_p[survivors].
  for (VertexId v = 0; v < n; ++v) {
    if (removed[v]) continue;
    if (below_peel_threshold(cur_deg[v], p, d)) flag("survivor below 3pd/5", v);
  }
  return violations;
}

/// Trace file format, line oriented:
///   S0: v1 v2 ...
///   REM <iter> <vertex> <deg> <edges-into-removed>
///   SURVIVORS: v1 v2 ...
inline void write_trace(const PruneTrace& trace, std::ostream& os) {
  os << "S0:";
  for (VertexId v : trace.s0.to_vector()) os << ' ' << v;
  os << '\n';
  for (const Removal& r : trace.removals)
    os << "REM " << r.iteration << ' ' << r.vertex << ' ' << r.degree << ' '
       << r.edges_into_removed << '\n';
  os << "SURVIVORS:";
  for (VertexId v : trace.survivors.to_vector()) os << ' ' << v;
  os << '\n';
}

inline void write_trace_file(const PruneTrace& trace, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_trace(trace, os);
}

/// Reads a trace written by write_trace. The universe size n and the
/// percolation parameters are supplied by the caller (the file does not
/// carry them).
inline PruneTrace read_trace(std::istream& is, size_t n, const RetentionProb& p, size_t d) {
  PruneTrace trace;
  trace.params.p = p;
  trace.params.d = d;
  trace.s0 = VertexSet(n);
  trace.survivors = VertexSet(n);
  trace.out = VertexSet(n);
  std::string line;
  bool saw_s0 = false, saw_survivors = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "S0:") {
      uint64_t v;
      while (ls >> v) trace.s0.insert(static_cast<VertexId>(v));
      saw_s0 = true;
    } else if (tag == "REM") {
      Removal r;
      uint64_t iter, vertex, deg, into;
      if (!(ls >> iter >> vertex >> deg >> into))
        throw std::runtime_error("trace: malformed REM line: " + line);
      r.iteration = static_cast<uint32_t>(iter);
      r.vertex = static_cast<VertexId>(vertex);
      r.degree = static_cast<uint32_t>(deg);
      r.edges_into_removed = static_cast<uint32_t>(into);
      trace.removals.push_back(r);
    } else if (tag == "SURVIVORS:") {
      uint64_t v;
      while (ls >> v) trace.survivors.insert(static_cast<VertexId>(v));
      saw_survivors = true;
    } else {
      throw std::runtime_error("trace: unknown line tag: " + tag);
    }
  }
  if (!saw_s0 || !saw_survivors) throw std::runtime_error("trace: missing S0 or SURVIVORS line");
  for (VertexId v = 0; v < n; ++v)
    if (!trace.survivors.contains(v)) trace.out.insert(v);
  return trace;
}

inline PruneTrace read_trace_file(const std::string& path, size_t n, const RetentionProb& p,
                                  size_t d) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_trace(is, n, p, d);
}

}  // namespace perclab
