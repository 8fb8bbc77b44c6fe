#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "perclab/expansion.hpp"
#include "perclab/graph.hpp"
#include "perclab/percolation.hpp"

namespace perclab {

/// Tunable constants of the structural checks. The defaults are the ones
/// the bounds are usually quoted with; both log readings of the size bound
/// are always emitted.
struct StructureParams {
  uint64_t balance_num = 1;   // a component is balanced when
  uint64_t balance_den = 3;   //   s0_count * balance_den >= size * balance_num
  double size_bound_constant = 61.0;
};

struct OutComponent {
  size_t size = 0;
  size_t s0_count = 0;
  double s0_fraction = 0.0;
  bool has_edge_to_giant = false;
  VertexId min_vertex = kNoVertex;
  bool is_balanced = true;  // against the report's balance threshold

  bool balanced() const { return is_balanced; }
};

struct OutReport {
  std::vector<OutComponent> components;  // sorted by size desc, then min id
  size_t max_component_size = 0;
  bool all_balanced = true;
  double balance_threshold = 1.0 / 3.0;
  double size_bound_log2 = 0.0;  // 61 log2(n) / (c sqrt(d))
  double size_bound_ln = 0.0;    // same with the natural log reading
};

/// Components of G_p[OUT] with their S_0 fractions, flagged against the
/// 61 log2(n)/(c sqrt(d)) size bound (the natural-log variant is emitted
/// alongside) and the balance threshold.
inline OutReport out_component_report(const Graph& gp, const PruneTrace& trace, double c,
                                      size_t d, const StructureParams& params = {}) {
  const size_t n = gp.vertex_count();
  OutReport report;
  report.balance_threshold =
      static_cast<double>(params.balance_num) / static_cast<double>(params.balance_den);
  const double c_sqrt_d = c * std::sqrt(static_cast<double>(d));
  if (c_sqrt_d > 0 && n >= 2) {
    report.size_bound_log2 =
        params.size_bound_constant * std::log2(static_cast<double>(n)) / c_sqrt_d;
    report.size_bound_ln =
        params.size_bound_constant * std::log(static_cast<double>(n)) / c_sqrt_d;
  }
  if (trace.out.empty()) return report;

  const auto gp_components = connected_components(gp);
  const VertexSet& giant = gp_components.front();

  std::vector<uint8_t> seen(n, 0);
  std::vector<VertexId> stack;
  for (VertexId start = 0; start < n; ++start) {
    if (!trace.out.contains(start) || seen[start]) continue;
    OutComponent comp;
    comp.min_vertex = start;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      ++comp.size;
      if (trace.s0.contains(u)) ++comp.s0_count;
      for (VertexId w : gp.neighbors(u)) {
        if (trace.out.contains(w)) {
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        } else if (giant.contains(w)) {
          comp.has_edge_to_giant = true;
        }
      }
    }
    comp.s0_fraction = static_cast<double>(comp.s0_count) / static_cast<double>(comp.size);
    comp.is_balanced = comp.s0_count * params.balance_den >= comp.size * params.balance_num;
    report.components.push_back(comp);
  }
  std::sort(report.components.begin(), report.components.end(),
            [](const OutComponent& a, const OutComponent& b) {
              if (a.size != b.size) return a.size > b.size;
              return a.min_vertex < b.min_vertex;
            });
  for (const auto& comp : report.components) {
    report.max_component_size = std::max(report.max_component_size, comp.size);
    if (!comp.balanced()) report.all_balanced = false;
  }
  return report;
}

struct CertificateCondition {
  std::string name;
  bool pass = true;
  double measured = 0.0;
  double bound = 0.0;
};

struct CertificateReport {
  // (a) min degree of G_p^k >= 3pd/5
  // (b) every survivor has <= 6pd/5 neighbors in OUT
  // (c) max OUT component <= 61 log2(n) / (c sqrt(d))
  // (d) every OUT component is 1/3-balanced
  // (e) sampled core expansion >= pd/13
  std::vector<CertificateCondition> conditions;
  bool survivors_in_giant = true;  // giant component of G_p contains all survivors
  bool core_connected = true;
  size_t giant_size = 0;
  size_t second_component_size = 0;
  double implied_bound_log2 = 0.0;  // c sqrt(d) / (61 log2 n)
  double implied_bound_ln = 0.0;
  OutReport out;
  CoreExpansionReport core_expansion;

  bool all_conditions_pass() const {
    for (const auto& cond : conditions)
      if (!cond.pass) return false;
    return true;
  }

  /// The row-level verdict: the five structural conditions plus the
  /// survivors-inside-the-giant containment.
  bool pass() const { return all_conditions_pass() && survivors_in_giant; }
};

/// Evaluates the structural conditions behind the giant-component expansion
/// bound on one percolation outcome. lambda is the measured second
/// eigenvalue of the d-regular host.
inline CertificateReport giant_expansion_certificate(const Graph& gp, const PruneTrace& trace,
                                                     double lambda, size_t d,
                                                     const RetentionProb& p, size_t samples,
                                                     uint64_t seed,
                                                     const StructureParams& params = {}) {
  const size_t n = gp.vertex_count();
  const double c = lambda / std::sqrt(static_cast<double>(d));
  CertificateReport report;
  const double log2n = n >= 2 ? std::log2(static_cast<double>(n)) : 1.0;
  const double ln_n = n >= 2 ? std::log(static_cast<double>(n)) : 1.0;
  report.implied_bound_log2 = lambda / (params.size_bound_constant * log2n);
  report.implied_bound_ln = lambda / (params.size_bound_constant * ln_n);
  report.out = out_component_report(gp, trace, c, d, params);

  const double pd = p.value() * static_cast<double>(d);

  // (a) survivor minimum degree inside the core
  {
    CertificateCondition cond;
    cond.name = "min-core-degree";
    cond.bound = 3.0 * pd / 5.0;
    uint64_t min_deg = UINT64_MAX;
    bool any = false;
    for (VertexId v = 0; v < n; ++v) {
      if (!trace.survivors.contains(v)) continue;
      any = true;
      uint64_t deg = 0;
      for (VertexId w : gp.neighbors(v)) deg += trace.survivors.contains(w);
      min_deg = std::min(min_deg, deg);
      if (below_peel_threshold(deg, p, d)) cond.pass = false;
    }
    cond.measured = any ? static_cast<double>(min_deg) : -1.0;
    report.conditions.push_back(cond);
  }

  // (b) survivor neighbors in OUT
  {
    CertificateCondition cond;
    cond.name = "survivor-out-neighbors";
    cond.bound = 6.0 * pd / 5.0;
    uint64_t max_out = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (!trace.survivors.contains(v)) continue;
      uint64_t deg = 0;
      for (VertexId w : gp.neighbors(v)) deg += trace.out.contains(w);
      max_out = std::max(max_out, deg);
      if (!within_out_neighbor_cap(deg, p, d)) cond.pass = false;
    }
    cond.measured = static_cast<double>(max_out);
    report.conditions.push_back(cond);
  }

  // (c) largest OUT component
  {
    CertificateCondition cond;
    cond.name = "max-out-component";
    cond.bound = report.out.size_bound_log2;
    cond.measured = static_cast<double>(report.out.max_component_size);
    cond.pass = cond.measured <= cond.bound;
    report.conditions.push_back(cond);
  }

  // (d) balance of OUT components
  {
    CertificateCondition cond;
    cond.name = "out-balance";
    cond.bound = report.out.balance_threshold;
    double worst = 1.0;
    for (const auto& comp : report.out.components) worst = std::min(worst, comp.s0_fraction);
    cond.measured = report.out.components.empty() ? 1.0 : worst;
    cond.pass = report.out.all_balanced;
    report.conditions.push_back(cond);
  }

  // (e) sampled expansion of the core
  {
    CertificateCondition cond;
    cond.name = "core-expansion";
    cond.bound = pd / 13.0;
    if (trace.survivors.empty()) {
      cond.measured = -1.0;
      cond.pass = true;  // vacuous: no core to sample
    } else {
      const auto core = induced_subgraph(gp, trace.survivors);
      report.core_expansion = sampled_core_expansion(core.graph, p, d, samples, seed);
      cond.measured = report.core_expansion.samples
                          ? report.core_expansion.min_ratio
                          : -1.0;
      cond.pass = report.core_expansion.all_meet_bound;
      report.core_connected = connected_components(core.graph).size() <= 1;
    }
    report.conditions.push_back(cond);
  }

  // Context: component sizes and survivor containment.
  const auto comps = connected_components(gp);
  report.giant_size = comps.empty() ? 0 : comps.front().count();
  report.second_component_size = comps.size() > 1 ? comps[1].count() : 0;
  if (!trace.survivors.empty() && !comps.empty()) {
    const VertexSet& giant = comps.front();
    for (VertexId v : trace.survivors.to_vector())
      if (!giant.contains(v)) {
        report.survivors_in_giant = false;
        break;
      }
  }
  return report;
}

}  // namespace perclab
