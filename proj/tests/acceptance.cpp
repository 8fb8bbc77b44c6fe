// Acceptance suite: one integration check per release criterion, each
// printed as a single PASS/FAIL line with its runtime. Run with no
// arguments for all criteria, or pass criterion numbers to select.

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "perclab/perclab.hpp"
#include "support.hpp"

#ifndef PERCLAB_FIXTURE_DIR
#define PERCLAB_FIXTURE_DIR "."
#endif

namespace {

using namespace perclab;

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Shared artifacts between criteria 5 and 7 (the theorem-regime run).
struct Context {
  std::optional<ExperimentSummary> theorem_run;  // threads = 4

  const ExperimentSummary& theorem(unsigned threads = 4) {
    if (!theorem_run) theorem_run = run_experiment(preset("random-regular-main"), threads);
    return *theorem_run;
  }
};

// ---------------------------------------------------------------- criterion 1

void criterion_1(Context&) {
  struct Case {
    std::string name;
    Graph g;
    double lambda;
  };
  std::vector<Case> cases;
  cases.push_back({"K5", complete_graph(5), 1.0});
  cases.push_back({"K50", complete_graph(50), 1.0});
  cases.push_back({"K200", complete_graph(200), 1.0});
  cases.push_back({"C1000", cycle_graph(1000), 2.0 * std::cos(2.0 * M_PI / 1000.0)});
  cases.push_back({"Petersen", testsupport::petersen(), 2.0});
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    Graph g = random_regular(4096, 16, seed);
    const auto s = second_eigenvalue_abs(g, 1e-9, 20000);
    cases.push_back({"RR4096-16-seed" + std::to_string(seed), std::move(g), s.lambda});
  }
  for (const auto& c : cases) {
    const auto audit = mixing_lemma_audit(c.g, c.lambda, 10000, 0xa0d17 + c.g.vertex_count());
    require(audit.violations.empty(),
            c.name + ": " + std::to_string(audit.violations.size()) +
                " mixing violations, max slack " + fmt(audit.max_normalized_slack));
    require(audit.samples >= 10000, c.name + ": sample count");
  }
}

// ---------------------------------------------------------------- criterion 2

void criterion_2(Context&) {
  for (size_t n : {5, 50, 200}) {
    const auto s = second_eigenvalue_abs(complete_graph(n));
    require(std::abs(s.lambda - 1.0) <= 1e-9,
            "lambda(K" + std::to_string(n) + ") = " + fmt(s.lambda) + " != 1");
  }
  for (size_t n : {4, 5, 100}) {
    const auto s = second_eigenvalue_abs(cycle_graph(n));
    const double expect = 2.0 * std::cos(2.0 * M_PI / static_cast<double>(n));
    require(std::abs(s.mu2 - expect) <= 1e-9,
            "second eigenvalue of C" + std::to_string(n) + " = " + fmt(s.mu2) +
                " != 2cos(2pi/n) = " + fmt(expect));
  }
  // power iteration vs dense eigensolve on the n <= 512 corpus
  struct Case {
    std::string name;
    Graph g;
  };
  std::vector<Case> corpus;
  corpus.push_back({"K5", complete_graph(5)});
  corpus.push_back({"K50", complete_graph(50)});
  corpus.push_back({"K200", complete_graph(200)});
  corpus.push_back({"C4", cycle_graph(4)});
  corpus.push_back({"C5", cycle_graph(5)});
  corpus.push_back({"C100", cycle_graph(100)});
  corpus.push_back({"Petersen", testsupport::petersen()});
  corpus.push_back({"Paley13", paley_graph(13)});
  corpus.push_back({"Paley17", paley_graph(17)});
  corpus.push_back({"RR256-8", random_regular(256, 8, 1)});
  corpus.push_back({"RR500-16", random_regular(500, 16, 2)});
  for (const auto& c : corpus) {
    const auto dense = second_eigenvalue_abs(c.g, 1e-9, 0, SpectralMethod::dense);
    const auto power = second_eigenvalue_abs(c.g, 1e-9, 100000, SpectralMethod::power);
    require(std::abs(dense.lambda - power.lambda) <= 1e-8,
            c.name + ": dense " + fmt(dense.lambda) + " vs power " + fmt(power.lambda) +
                " differ by " + fmt(std::abs(dense.lambda - power.lambda)));
  }
}

// ---------------------------------------------------------------- criterion 3

void criterion_3(Context&) {
  struct Case {
    std::string name;
    Graph g;
    bool expect_equality;  // upper-bound search must be tight here
  };
  std::vector<Case> cases;
  for (size_t n = 2; n <= 16; ++n)
    cases.push_back({"K" + std::to_string(n), complete_graph(n), true});
  for (size_t n = 3; n <= 16; ++n)
    cases.push_back({"C" + std::to_string(n), cycle_graph(n), true});
  cases.push_back({"Petersen", testsupport::petersen(), false});
  size_t cubic = 0;
  for (size_t n : {8, 10, 12, 14, 16})
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      cases.push_back({"cubic-n" + std::to_string(n) + "-s" + std::to_string(seed),
                       random_regular(n, 3, seed), false});
      ++cubic;
    }
  require(cubic == 50, "expected 50 random cubic graphs");

  for (const auto& c : cases) {
    const size_t d = c.g.degree(0);
    const auto s = second_eigenvalue_abs(c.g);
    const auto exact = exact_edge_expansion(c.g);
    if (!exact.connected) continue;  // expansion 0; the spectral bound is vacuous
    require(exact.value >= spectral_expansion_lower_bound(d, s.lambda) - 1e-9,
            c.name + ": exact " + fmt(exact.value) + " below (d-lambda)/2 = " +
                fmt(spectral_expansion_lower_bound(d, s.lambda)));
    require(exact.value >= spectral_expansion_lower_bound(d, s.mu2) - 1e-9,
            c.name + ": exact below the signed-eigenvalue bound");
    const auto ub = expansion_upper_bound(c.g, 8, 0x3aab + c.g.vertex_count());
    require(ub.upper_bound >= exact.value - 1e-9,
            c.name + ": upper bound " + fmt(ub.upper_bound) + " below exact " + fmt(exact.value));
    if (c.expect_equality)
      require(std::abs(ub.upper_bound - exact.value) <= 1e-9,
              c.name + ": upper bound " + fmt(ub.upper_bound) + " != exact " + fmt(exact.value));
  }
}

// ---------------------------------------------------------------- criterion 4

void criterion_4(Context&) {
  // (i) p = 1 on regular hosts leaves OUT empty
  {
    std::vector<std::pair<std::string, Graph>> hosts;
    hosts.emplace_back("K50", complete_graph(50));
    hosts.emplace_back("C100", cycle_graph(100));
    hosts.emplace_back("RR500-16", random_regular(500, 16, 3));
    hosts.emplace_back("Paley13", paley_graph(13));
    for (const auto& [name, host] : hosts) {
      const PruneTrace trace = peel(host, parse_prob("1"), host.degree(0));
      require(trace.out.empty(), name + ": OUT not empty at p=1");
      require(verify_trace(host, trace).empty(), name + ": trace violations at p=1");
    }
  }
  // (ii) order invariance on 100 seeded instances; (iii) trace verification
  size_t instances = 0;
  for (const char* p_text : {"0.5", "0.8"}) {
    const RetentionProb p = parse_prob(p_text);
    for (uint64_t seed = 1; seed <= 50; ++seed) {
      const Graph host = random_regular(500, 16, seed);
      const Graph gp = percolate(host, p, splitmix64(seed ^ 0x9e0fULL));
      const PruneTrace trace = peel(gp, p, 16);
      ++instances;

      const auto violations = verify_trace(gp, trace);
      require(violations.empty(), "instance seed " + std::to_string(seed) + " p=" + p_text + ": " +
                                      std::to_string(violations.size()) + " trace violations");
      for (const auto& r : trace.removals)
        require(meets_fifth_pd(r.edges_into_removed, p, 16),
                "removed vertex " + std::to_string(r.vertex) + " has < pd/5 edges into removed");

      const VertexSet& sequential = trace.survivors;
      require(sequential == testsupport::batch_peel_survivors(gp, p, 16),
              "batch peel differs, seed " + std::to_string(seed) + " p=" + p_text);
      for (uint64_t r = 0; r < 10; ++r)
        require(sequential == testsupport::random_order_peel_survivors(gp, p, 16, r * 97 + seed),
                "random-order peel differs, seed " + std::to_string(seed) + " p=" + p_text);
    }
  }
  require(instances == 100, "expected 100 order-invariance instances");
}

// ---------------------------------------------------------------- criterion 5

void criterion_5(Context& ctx) {
  const ExperimentSummary& summary = ctx.theorem();
  require(summary.records.size() == 10, "expected 10 trials");
  for (const auto& row : summary.records) {
    const std::string tag = "trial " + std::to_string(row.trial);
    require(row.status == "ok", tag + ": status " + row.status);
    require(row.c >= 1.7 && row.c <= 2.3, tag + ": c = " + fmt(row.c) + " outside 2 +- 0.3");
    const double out_cap = std::exp(-row.lambda / 12.0) * static_cast<double>(row.n);
    require(static_cast<double>(row.out_size) <= out_cap,
            tag + ": |OUT| = " + std::to_string(row.out_size) + " above " + fmt(out_cap));
    require(static_cast<double>(row.max_out_comp) <= row.out_comp_bound,
            tag + ": max OUT component " + std::to_string(row.max_out_comp) + " above " +
                fmt(row.out_comp_bound));
    require(row.all_out_balanced, tag + ": unbalanced OUT component");
    require(row.min_sampled_core_expansion < 0 ||
                row.min_sampled_core_expansion >= row.core_bound_pd13,
            tag + ": sampled core expansion " + fmt(row.min_sampled_core_expansion) +
                " below pd/13 = " + fmt(row.core_bound_pd13));
    require(row.certificate_pass, tag + ": certificate failed");
    require(row.survivor_count <= row.giant_size,
            tag + ": survivors cannot exceed the giant component");
  }
  for (const auto& [name, counts] : summary.check_pass_counts)
    require(counts.first == counts.second,
            "check " + name + ": " + std::to_string(counts.first) + "/" +
                std::to_string(counts.second));
}

// ---------------------------------------------------------------- criterion 6

void criterion_6(Context&) {
  // exhaustive: every labeled tree with <= 7 vertices (Prüfer enumeration),
  // every S labeling with fraction >= 1/k, every valid t_target
  for (size_t n = 2; n <= 7; ++n) {
    const size_t seq_len = n - 2;
    size_t total = 1;
    for (size_t i = 0; i < seq_len; ++i) total *= n;
    for (size_t code = 0; code < total; ++code) {
      std::vector<uint32_t> seq(seq_len);
      size_t rem = code;
      for (size_t i = 0; i < seq_len; ++i) {
        seq[i] = static_cast<uint32_t>(rem % n);
        rem /= n;
      }
      const auto edges = testsupport::prufer_decode(n, seq);
      const Graph tree_graph = build_graph(n, edges);
      LabeledTree tree = spanning_tree(tree_graph, VertexSet::full(n), VertexSet(n));
      for (size_t k = 1; k <= 3; ++k) {
        for (uint32_t labels = 0; labels < (1u << n); ++labels) {
          const auto s_count = static_cast<size_t>(std::popcount(labels));
          if (s_count * k < n) continue;
          for (uint32_t i = 0; i < n; ++i)
            tree.is_s[i] = (labels >> tree.vertices[i]) & 1u;
          for (size_t t_target = 1; 2 * t_target <= n; ++t_target) {
            const LabeledTree sub = extract_balanced_subtree(tree, t_target, k);
            require(sub.size() >= t_target && sub.size() <= 2 * t_target - 1,
                    "size out of [t, 2t-1]: n=" + std::to_string(n) +
                        " code=" + std::to_string(code) + " labels=" + std::to_string(labels) +
                        " k=" + std::to_string(k) + " t=" + std::to_string(t_target));
            require(sub.s_count() * k >= sub.size(), "fraction below 1/k");
            require(testsupport::is_subtree_of(sub, tree_graph), "not a subtree");
          }
        }
      }
    }
  }
  // randomized: 10^4 random trees up to 200 vertices
  Xoshiro256pp rng(0x7ee5);
  for (int round = 0; round < 10000; ++round) {
    const size_t n = 2 + rng.next_below(199);
    std::vector<uint32_t> seq(n >= 2 ? n - 2 : 0);
    for (auto& x : seq) x = static_cast<uint32_t>(rng.next_below(n));
    const auto edges = testsupport::prufer_decode(n, seq);
    const size_t k = 1 + rng.next_below(3);
    const size_t s_needed = (n + k - 1) / k;
    std::set<VertexId> labels;
    while (labels.size() < s_needed) labels.insert(static_cast<VertexId>(rng.next_below(n)));
    const LabeledTree tree = testsupport::make_labeled_tree(n, edges, labels);
    const size_t t_target = 1 + rng.next_below(n / 2);
    const LabeledTree sub = extract_balanced_subtree(tree, t_target, k);
    require(sub.size() >= t_target && sub.size() <= 2 * t_target - 1, "random tree: size");
    require(sub.s_count() * k >= sub.size(), "random tree: fraction");
  }
}

// ---------------------------------------------------------------- criterion 7

void criterion_7(Context& ctx) {
  const ExperimentSummary& a = ctx.theorem(4);  // parallel
  const ExperimentSummary b = run_experiment(preset("random-regular-main"), 4);
  require(a.csv == b.csv, "two parallel runs differ");
  const ExperimentSummary serial = run_experiment(preset("random-regular-main"), 1);
  require(a.csv == serial.csv, "serial and parallel runs differ");
  std::ifstream fixture(std::string(PERCLAB_FIXTURE_DIR) + "/random_regular_main.csv",
                        std::ios::binary);
  require(fixture.good(), "fixture random_regular_main.csv missing");
  std::ostringstream recorded;
  recorded << fixture.rdbuf();
  require(a.csv == recorded.str(), "run differs from the recorded fixture CSV");
}

// ---------------------------------------------------------------- criterion 8

void criterion_8(Context&) {
  const ExperimentSummary summary = run_experiment(preset("cycle-negative-control"), 4);
  require(summary.records.size() == 10, "expected 10 control trials");
  size_t failed = 0;
  for (const auto& row : summary.records) {
    require(row.status == "ok", "control trial errored: " + row.status);
    if (!row.certificate_pass) ++failed;
  }
  require(failed >= 8, "only " + std::to_string(failed) + "/10 control trials failed a condition");
}

struct Criterion {
  int id;
  std::string label;
  double time_limit_s;  // 0: unbounded
  std::function<void(Context&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "mixing-lemma audit, zero violations", 60, criterion_1},
      {2, "spectral correctness and dense/power agreement", 0, criterion_2},
      {3, "expansion oracle coherence", 120, criterion_3},
      {4, "peeling correctness and order invariance", 120, criterion_4},
      {5, "theorem-regime structural run", 600, criterion_5},
      {6, "balanced-subtree lemma, exhaustive and random", 120, criterion_6},
      {7, "experiment CSV reproducibility", 0, criterion_7},
      {8, "cycle negative control", 0, criterion_8},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  Context ctx;
  bool all_pass = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      c.run(ctx);
    } catch (const Failure& f) {
      failure = f.what;
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty() && c.time_limit_s > 0 && elapsed > c.time_limit_s)
      failure = "runtime " + fmt(elapsed) + "s exceeds " + fmt(c.time_limit_s) + "s";
    if (failure.empty()) {
      std::cout << "[PASS] criterion " << c.id << " (" << c.label << ") " << fmt(elapsed) << "s\n";
    } else {
      std::cout << "[FAIL] criterion " << c.id << " (" << c.label << ") " << fmt(elapsed)
                << "s: " << failure << "\n";
      all_pass = false;
    }
    std::cout.flush();
  }
  return all_pass ? 0 : 1;
}
