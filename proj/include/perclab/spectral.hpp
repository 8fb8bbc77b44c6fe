#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "perclab/graph.hpp"
#include "perclab/rng.hpp"

namespace perclab {

struct SpectralSummary {
  size_t d = 0;          // regularity degree
  double lambda = 0.0;   // second largest |eigenvalue| of the adjacency
  double c = 0.0;        // lambda / sqrt(d)
  double mu2 = std::numeric_limits<double>::quiet_NaN();     // second largest signed (dense only)
  double mu_min = std::numeric_limits<double>::quiet_NaN();  // smallest (dense only)
  std::string method;    // "dense-eigensolve" | "power-iteration"
  double residual = 0.0;
  size_t iterations = 0;
  bool converged = true;
};

namespace detail {

inline size_t regular_degree_or_throw(const Graph& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("spectral: empty graph");
  const size_t d = g.degree(0);
  for (size_t v = 1; v < g.vertex_count(); ++v)
    if (g.degree(static_cast<VertexId>(v)) != d)
      throw std::invalid_argument("spectral: graph is not regular");
  return d;
}

/// Flat CSR copy for fast repeated matvecs.
struct Csr {
  std::vector<uint32_t> offsets;
  std::vector<uint32_t> targets;

  explicit Csr(const Graph& g) {
    const size_t n = g.vertex_count();
    offsets.reserve(n + 1);
    offsets.push_back(0);
    targets.reserve(2 * g.edge_count());
    for (VertexId v = 0; v < n; ++v) {
      for (VertexId w : g.neighbors(v)) targets.push_back(w);
      offsets.push_back(static_cast<uint32_t>(targets.size()));
    }
  }

  void multiply(const std::vector<double>& x, std::vector<double>& y) const {
    const size_t n = offsets.size() - 1;
    for (size_t v = 0; v < n; ++v) {
      double acc = 0.0;
      for (uint32_t i = offsets[v]; i < offsets[v + 1]; ++i) acc += x[targets[i]];
      y[v] = acc;
    }
  }
};

inline void project_out_ones_and_normalize(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double norm_sq = 0.0;
  for (double& x : v) {
    x -= mean;
    norm_sq += x * x;
  }
  const double norm = std::sqrt(norm_sq);
  if (norm > 0)
    for (double& x : v) x /= norm;
}

}  // namespace detail

constexpr size_t kDenseSpectralCutoff = 512;
constexpr double kDefaultSpectralTol = 1e-9;
constexpr size_t kDefaultSpectralMaxIter = 100000;
constexpr uint64_t kPowerStartSeed = 0xA11CE;

enum class SpectralMethod { automatic, dense, power };

/// Second largest absolute adjacency eigenvalue of a d-regular graph.
///
/// n <= 512: exact dense symmetric eigensolve; lambda = max(|mu_2|, |mu_n|)
/// and the signed extremes are reported too.
/// n > 512: power iteration on A^2 restricted to the complement of the
/// all-ones vector (valid for regular graphs; squaring makes the iteration
/// insensitive to eigenvalue sign). theta estimates lambda^2 and the
/// reported residual is ||A^2 v - theta v|| of the normalized iterate.
/// The start vector comes from a fixed splitmix64 seed, so runs are
/// reproducible. On hitting max_iter the best estimate is returned with
/// converged = false.
inline SpectralSummary second_eigenvalue_abs(const Graph& g,
                                             double tol = kDefaultSpectralTol,
                                             size_t max_iter = kDefaultSpectralMaxIter,
                                             SpectralMethod method = SpectralMethod::automatic) {
  SpectralSummary out;
  out.d = detail::regular_degree_or_throw(g);
  const size_t n = g.vertex_count();
  const bool use_dense = method == SpectralMethod::dense ||
                         (method == SpectralMethod::automatic && n <= kDenseSpectralCutoff);
  if (use_dense) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v : g.neighbors(u)) a(u, v) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();  // ascending
    out.mu_min = ev(0);
    out.mu2 = n >= 2 ? ev(n - 2) : ev(0);
    out.lambda = std::max(std::abs(out.mu2), std::abs(out.mu_min));
    out.method = "dense-eigensolve";
    out.residual = 0.0;
    out.iterations = 0;
    out.converged = true;
  } else {
    detail::Csr csr(g);
    std::vector<double> v(n), av(n), aav(n);
    uint64_t state = kPowerStartSeed;
    for (double& x : v) x = static_cast<double>(splitmix64_next(state) >> 11) * 0x1.0p-53 - 0.5;
    detail::project_out_ones_and_normalize(v);
    double theta = 0.0, residual = std::numeric_limits<double>::infinity();
    size_t iter = 0;
    while (iter < max_iter) {
      ++iter;
      csr.multiply(v, av);
      csr.multiply(av, aav);
      double mean = 0.0;
      for (double x : aav) mean += x;
      mean /= static_cast<double>(n);
      for (double& x : aav) x -= mean;
      theta = 0.0;
      for (size_t i = 0; i < n; ++i) theta += v[i] * aav[i];
      double res_sq = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double r = aav[i] - theta * v[i];
        res_sq += r * r;
      }
      residual = std::sqrt(res_sq);
      double norm_sq = 0.0;
      for (double x : aav) norm_sq += x * x;
      const double norm = std::sqrt(norm_sq);
      if (norm == 0.0) {
        theta = 0.0;
        residual = 0.0;
        break;  // adjacency annihilates the complement (edgeless-like)
      }
      for (size_t i = 0; i < n; ++i) v[i] = aav[i] / norm;
      if (residual <= tol) break;
    }
    out.lambda = std::sqrt(std::max(theta, 0.0));
    out.method = "power-iteration";
    out.residual = residual;
    out.iterations = iter;
    out.converged = residual <= tol;
  }
  out.c = out.lambda / std::sqrt(static_cast<double>(out.d));
  return out;
}

/// Tanner / Alon–Milman: for a d-regular graph with second eigenvalue
/// lambda, the edge expansion is at least (d - lambda)/2.
inline double spectral_expansion_lower_bound(size_t d, double lambda) {
  return (static_cast<double>(d) - lambda) / 2.0;
}

/// |e(S,T) - (d/n)|S||T|| / (lambda sqrt(|S||T|)); the mixing lemma says
/// this is < 1 for every pair when lambda is correct.
inline double mixing_slack(const Graph& g, size_t d, double lambda, const VertexSet& S,
                           const VertexSet& T) {
  if (S.count() == 0 || T.count() == 0) return 0.0;
  const double n = static_cast<double>(g.vertex_count());
  const double est = static_cast<double>(directed_pair_count(g, S, T));
  const double expected =
      static_cast<double>(d) / n * static_cast<double>(S.count()) * static_cast<double>(T.count());
  const double allowance =
      lambda * std::sqrt(static_cast<double>(S.count()) * static_cast<double>(T.count()));
  if (allowance == 0.0) return std::abs(est - expected) > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  return std::abs(est - expected) / allowance;
}

struct MixingViolation {
  size_t s_size = 0;
  size_t t_size = 0;
  double slack = 0.0;
  uint64_t sample_index = 0;
};

struct MixingAuditReport {
  size_t samples = 0;
  double max_normalized_slack = 0.0;
  std::vector<MixingViolation> violations;
};

namespace detail {

/// Random subset of the given size via a partial Fisher–Yates on a scratch
/// index array; swaps are undone afterwards so the scratch stays identity.
inline VertexSet random_subset(std::vector<VertexId>& scratch, size_t size, Xoshiro256pp& rng) {
  const size_t n = scratch.size();
  VertexSet s(n);
  std::vector<std::pair<size_t, size_t>> swaps;
  swaps.reserve(size);
  for (size_t i = 0; i < size; ++i) {
    const size_t j = i + rng.next_below(n - i);
    std::swap(scratch[i], scratch[j]);
    swaps.emplace_back(i, j);
    s.insert(scratch[i]);
  }
  for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) std::swap(scratch[it->first], scratch[it->second]);
  return s;
}

}  // namespace detail

/// Samples (S,T) pairs with log-uniform sizes plus the deterministic pairs
/// (V,V) and ({0},{0}) and reports the worst normalized mixing slack.
inline MixingAuditReport mixing_lemma_audit(const Graph& g, double lambda, size_t num_samples,
                                            uint64_t seed) {
  const size_t d = detail::regular_degree_or_throw(g);
  const size_t n = g.vertex_count();
  MixingAuditReport report;
  std::vector<VertexId> scratch(n);
  for (size_t i = 0; i < n; ++i) scratch[i] = static_cast<VertexId>(i);

  auto record = [&](const VertexSet& S, const VertexSet& T, uint64_t index) {
    const double slack = mixing_slack(g, d, lambda, S, T);
    report.max_normalized_slack = std::max(report.max_normalized_slack, slack);
    if (slack > 1.0) report.violations.push_back({S.count(), T.count(), slack, index});
    ++report.samples;
  };

  record(VertexSet::full(n), VertexSet::full(n), 0);
  record(VertexSet::of(n, {0}), VertexSet::of(n, {0}), 1);
  for (uint64_t i = 0; i < num_samples; ++i) {
    Xoshiro256pp rng(sample_seed(seed, i));
    const size_t s_size = log_uniform_size(rng, n);
    const size_t t_size = log_uniform_size(rng, n);
    const VertexSet S = detail::random_subset(scratch, s_size, rng);
    const VertexSet T = detail::random_subset(scratch, t_size, rng);
    record(S, T, i + 2);
  }
  return report;
}

struct DensityReport {
  bool skipped = false;     // bound vacuous: cn/(k√d) < 1
  size_t size_cap = 0;      // floor(cn/(k√d))
  size_t samples = 0;
  double bound = 0.0;       // c√d (1 + 1/k)
  double worst_ratio = 0.0; // max over sampled U of avg_deg(U) / bound
  std::vector<VertexId> worst_set;
};

/// Audits the small-set density bound: every U with |U| <= cn/(k√d) has average
/// degree at most c√d (1 + 1/k). Random subsets plus greedily densified
/// ones (grow by the outside vertex with the most neighbors inside).
inline DensityReport density_bound_check(const Graph& g, double lambda, size_t k, size_t trials,
                                         uint64_t seed) {
  const size_t d = detail::regular_degree_or_throw(g);
  const size_t n = g.vertex_count();
  if (k < 1) throw std::invalid_argument("density_bound_check: k must be >= 1");
  DensityReport report;
  const double c = lambda / std::sqrt(static_cast<double>(d));
  report.bound = lambda * (1.0 + 1.0 / static_cast<double>(k));
  const double cap_real = c * static_cast<double>(n) /
                          (static_cast<double>(k) * std::sqrt(static_cast<double>(d)));
  if (cap_real < 1.0) {
    report.skipped = true;
    return report;
  }
  report.size_cap = std::min<size_t>(n, static_cast<size_t>(cap_real));

  std::vector<VertexId> scratch(n);
  for (size_t i = 0; i < n; ++i) scratch[i] = static_cast<VertexId>(i);

  auto evaluate = [&](const VertexSet& U) {
    if (U.count() == 0) return;
    const uint64_t twice_internal = directed_pair_count(g, U, U);
    const double avg = static_cast<double>(twice_internal) / static_cast<double>(U.count());
    const double ratio = report.bound > 0 ? avg / report.bound : (avg > 0 ? 1e300 : 0.0);
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_set = U.to_vector();
    }
    ++report.samples;
  };

  for (uint64_t t = 0; t < trials; ++t) {
    Xoshiro256pp rng(sample_seed(seed, t));
    const size_t size = 1 + rng.next_below(report.size_cap);
    evaluate(detail::random_subset(scratch, size, rng));
  }
  // Greedy densification from a few random roots.
  const size_t greedy_runs = std::min<uint64_t>(8, trials);
  for (uint64_t t = 0; t < greedy_runs; ++t) {
    Xoshiro256pp rng(sample_seed(seed ^ 0x6eedULL, t));
    VertexSet U(n);
    const auto root = static_cast<VertexId>(rng.next_below(n));
    U.insert(root);
    std::vector<uint32_t> inside(n, 0);
    for (VertexId w : g.neighbors(root)) inside[w] = 1;
    while (U.count() < report.size_cap) {
      VertexId best = kNoVertex;
      uint32_t best_inside = 0;
      for (VertexId v = 0; v < n; ++v) {
        if (U.contains(v)) continue;
        if (inside[v] > best_inside) {
          best_inside = inside[v];
          best = v;
        }
      }
      if (best == kNoVertex) best = static_cast<VertexId>(rng.next_below(n));
      while (U.contains(best)) best = static_cast<VertexId>((best + 1) % n);
      U.insert(best);
      for (VertexId w : g.neighbors(best))
        if (!U.contains(w)) ++inside[w];
      evaluate(U);
    }
  }
  return report;
}

}  // namespace perclab
