// perclab command line: generate, percolate, peel and analyze expander
// percolation experiments. See README.md for the file formats.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "perclab/perclab.hpp"

namespace {

using namespace perclab;

std::string join_ids(const std::vector<VertexId>& ids) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << '=' << value << '\n';
}

void print_kv(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  print_kv(key, std::string(buf));
}

void print_kv(const std::string& key, size_t value) { print_kv(key, std::to_string(value)); }

int cmd_gen(const std::string& family, size_t n, size_t d, uint64_t q, uint64_t seed,
            const std::string& out_path) {
  GeneratorSpec spec;
  spec.family = family_from_name(family);
  spec.n = n;
  spec.d = d;
  spec.q = q;
  spec.seed = seed;
  const Graph g = generate(spec);
  write_edge_list_file(g, out_path);
  print_kv("family", family);
  print_kv("n", g.vertex_count());
  print_kv("m", g.edge_count());
  print_kv("out", out_path);
  return 0;
}

int cmd_spectrum(const std::string& graph_path, double tol, size_t max_iter, size_t samples,
                 uint64_t seed, const std::string& csv_path) {
  const Graph g = read_edge_list_file(graph_path);
  const SpectralSummary s = second_eigenvalue_abs(g, tol, max_iter);
  print_kv("n", g.vertex_count());
  print_kv("d", s.d);
  print_kv("lambda", s.lambda);
  print_kv("c", s.c);
  if (s.method == "dense-eigensolve") {
    print_kv("mu2", s.mu2);
    print_kv("mu_min", s.mu_min);
  }
  print_kv("method", s.method);
  print_kv("residual", s.residual);
  print_kv("iterations", s.iterations);
  print_kv("converged", std::string(s.converged ? "1" : "0"));
  print_kv("spectral_expansion_lower_bound", spectral_expansion_lower_bound(s.d, s.lambda));
  if (samples > 0) {
    const MixingAuditReport audit = mixing_lemma_audit(g, s.lambda, samples, seed);
    print_kv("mixing_samples", audit.samples);
    print_kv("mixing_max_normalized_slack", audit.max_normalized_slack);
    print_kv("mixing_violations", audit.violations.size());
    if (!csv_path.empty()) {
      std::ofstream os(csv_path, std::ios::binary);
      os << "s_size,t_size,slack\n";
      for (const auto& v : audit.violations)
        os << v.s_size << ',' << v.t_size << ',' << v.slack << '\n';
    }
  }
  return 0;
}

int cmd_percolate(const std::string& graph_path, const std::string& p_text, uint64_t seed,
                  const std::string& out_path) {
  const Graph g = read_edge_list_file(graph_path);
  const RetentionProb p = parse_prob(p_text);
  const Graph gp = percolate(g, p, seed);
  write_edge_list_file(gp, out_path);
  print_kv("n", gp.vertex_count());
  print_kv("kept_edges", gp.edge_count());
  print_kv("host_edges", g.edge_count());
  print_kv("out", out_path);
  return 0;
}

int cmd_peel(const std::string& host_path, const std::string& percolated_path,
             const std::string& p_text, size_t d, const std::string& out_path) {
  const Graph host = read_edge_list_file(host_path);
  const Graph gp = read_edge_list_file(percolated_path);
  if (host.vertex_count() != gp.vertex_count())
    throw std::runtime_error("host and percolated graph have different vertex counts");
  const RetentionProb p = parse_prob(p_text);
  const PruneTrace trace = peel(gp, p, d);
  if (out_path.empty()) {
    write_trace(trace, std::cout);
  } else {
    write_trace_file(trace, out_path);
  }
  std::cerr << "s0=" << trace.s0.count() << " removals=" << trace.removals.size()
            << " survivors=" << trace.survivors.count() << '\n';
  return 0;
}

int cmd_expansion(const std::string& graph_path, bool exact, bool bounded,
                  const std::string& rule_text, size_t trials, uint64_t seed) {
  const Graph g = read_edge_list_file(graph_path);
  const SubsetRule rule = rule_text == "strict" ? SubsetRule::strict_half : SubsetRule::at_most_half;
  const bool use_exact = exact || (!bounded && g.vertex_count() <= kExactExpansionCap);
  ExpansionReport report =
      use_exact ? exact_edge_expansion(g, rule) : expansion_upper_bound(g, trials, seed);
  print_kv("mode", std::string(report.exact ? "exact" : "bounded"));
  print_kv("rule", std::string(report.subset_rule == SubsetRule::strict_half ? "strict" : "atmost"));
  print_kv("connected", std::string(report.connected ? "1" : "0"));
  if (report.exact) {
    print_kv("value", report.value);
  } else {
    print_kv("lower_bound", report.lower_bound);
    print_kv("upper_bound", report.upper_bound);
  }
  print_kv("witness_size", report.witness.size());
  print_kv("witness", join_ids(report.witness));
  return 0;
}

int cmd_analyze(const std::string& host_path, const std::string& percolated_path,
                const std::string& trace_path, const std::string& p_text, size_t d,
                size_t samples, uint64_t seed, double tol, size_t max_iter,
                const std::string& csv_path) {
  const Graph host = read_edge_list_file(host_path);
  const Graph gp = read_edge_list_file(percolated_path);
  const RetentionProb p = parse_prob(p_text);
  const PruneTrace trace = read_trace_file(trace_path, gp.vertex_count(), p, d);
  const auto violations = verify_trace(gp, trace);
  const SpectralSummary spectrum = second_eigenvalue_abs(host, tol, max_iter);
  const CertificateReport cert =
      giant_expansion_certificate(gp, trace, spectrum.lambda, d, p, samples, seed);

  print_kv("n", gp.vertex_count());
  print_kv("lambda", spectrum.lambda);
  print_kv("c", spectrum.c);
  print_kv("trace_violations", violations.size());
  for (const auto& v : violations) print_kv("trace_violation", v.what);
  print_kv("s0_size", trace.s0.count());
  print_kv("out_size", trace.out.count());
  print_kv("survivor_count", trace.survivors.count());
  print_kv("giant_size", cert.giant_size);
  print_kv("second_comp_size", cert.second_component_size);
  print_kv("max_out_comp", cert.out.max_component_size);
  print_kv("out_comp_bound_log2", cert.out.size_bound_log2);
  print_kv("out_comp_bound_ln", cert.out.size_bound_ln);
  print_kv("all_out_balanced", std::string(cert.out.all_balanced ? "1" : "0"));
  print_kv("min_sampled_core_expansion",
           cert.core_expansion.samples ? cert.core_expansion.min_ratio : -1.0);
  print_kv("core_bound_pd13", p.value() * static_cast<double>(d) / 13.0);
  print_kv("implied_bound_log2", cert.implied_bound_log2);
  print_kv("implied_bound_ln", cert.implied_bound_ln);
  print_kv("survivors_in_giant", std::string(cert.survivors_in_giant ? "1" : "0"));
  print_kv("core_connected", std::string(cert.core_connected ? "1" : "0"));
  PercolationParams params{p, 0, d};
  print_kv("outside_theorem_regime", std::string(params.outside_theorem_regime(spectrum.c) ? "1" : "0"));
  for (const auto& cond : cert.conditions) {
    print_kv("condition." + cond.name,
             std::string(cond.pass ? "pass" : "fail") + " measured=" + std::to_string(cond.measured) +
                 " bound=" + std::to_string(cond.bound));
  }
  print_kv("certificate_pass", std::string(cert.pass() ? "1" : "0"));
  if (!csv_path.empty()) {
    std::ofstream os(csv_path, std::ios::binary);
    os << "component,size,s0_count,s0_fraction,has_edge_to_giant,balanced\n";
    for (size_t i = 0; i < cert.out.components.size(); ++i) {
      const auto& comp = cert.out.components[i];
      os << i << ',' << comp.size << ',' << comp.s0_count << ',' << comp.s0_fraction << ','
         << (comp.has_edge_to_giant ? 1 : 0) << ',' << (comp.balanced() ? 1 : 0) << '\n';
    }
  }
  return cert.pass() ? 0 : 1;
}

int cmd_experiment(const std::string& config_path, const std::string& preset_name,
                   std::optional<size_t> trials, std::optional<uint64_t> seed,
                   const std::string& out_path) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = parse_config_file(config_path);
  } else if (!preset_name.empty()) {
    cfg = preset(preset_name);
  } else {
    throw std::runtime_error("experiment: need --config or --preset");
  }
  if (trials) cfg.trials = *trials;
  if (seed) cfg.base_seed = *seed;
  if (!out_path.empty()) cfg.output_path = out_path;
  const ExperimentSummary summary = run_experiment(cfg);
  if (cfg.output_path.empty()) std::cout << summary.csv;
  std::cerr << "experiment " << cfg.name << ": " << summary.records.size() << " rows\n";
  for (const auto& [name, counts] : summary.check_pass_counts)
    std::cerr << "check " << name << ": " << counts.first << "/" << counts.second << " pass\n";
  if (summary.check_pass_counts.count("s0-concentration"))
    std::cerr << "s0 mean=" << summary.s0_mean << " stddev=" << summary.s0_stddev
              << " (sanity band, not a paper bound)\n";
  std::cerr << (summary.all_pass ? "ALL CHECKS PASS" : "CHECK FAILURES PRESENT") << '\n';
  return summary.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percolated expander structure lab"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph and write its edge list");
  std::string gen_family, gen_out;
  size_t gen_n = 0, gen_d = 0;
  uint64_t gen_q = 0, gen_seed = 0;
  gen->add_option("--family", gen_family, "complete | cycle | random-regular | paley")->required();
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--d", gen_d, "degree (random-regular)");
  gen->add_option("--q", gen_q, "prime q ≡ 1 mod 4 (paley)");
  gen->add_option("--seed", gen_seed, "generator seed")->default_val(0);
  gen->add_option("--out", gen_out, "edge list output path")->required();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "second eigenvalue and mixing audit");
  std::string sp_graph, sp_csv;
  double sp_tol = kDefaultSpectralTol;
  size_t sp_max_iter = kDefaultSpectralMaxIter, sp_samples = 1000;
  uint64_t sp_seed = 0;
  spectrum->add_option("--graph", sp_graph, "edge list path")->required();
  spectrum->add_option("--tol", sp_tol, "power iteration residual tolerance");
  spectrum->add_option("--max-iter", sp_max_iter, "power iteration cap");
  spectrum->add_option("--samples", sp_samples, "mixing audit sample count (0 skips)");
  spectrum->add_option("--seed", sp_seed, "audit sampling seed");
  spectrum->add_option("--csv", sp_csv, "write mixing violations as CSV");

  // percolate
  auto* perc = app.add_subcommand("percolate", "sample G_p from a host graph");
  std::string pc_graph, pc_p, pc_out;
  uint64_t pc_seed = 0;
  perc->add_option("--graph", pc_graph, "host edge list")->required();
  perc->add_option("--p", pc_p, "retention probability (decimal string)")->required();
  perc->add_option("--seed", pc_seed, "percolation seed")->required();
  perc->add_option("--out", pc_out, "output edge list")->required();

  // peel
  auto* peel_cmd = app.add_subcommand("peel", "run the two-phase pruning, emit a trace");
  std::string pl_host, pl_gp, pl_p, pl_out;
  size_t pl_d = 0;
  peel_cmd->add_option("--graph", pl_host, "host edge list")->required();
  peel_cmd->add_option("--percolated", pl_gp, "percolated edge list")->required();
  peel_cmd->add_option("--p", pl_p, "retention probability used")->required();
  peel_cmd->add_option("--d", pl_d, "host regularity degree")->required();
  peel_cmd->add_option("--out", pl_out, "trace output path (default stdout)");

  // expansion
  auto* exp_cmd = app.add_subcommand("expansion", "edge expansion, exact or bounded");
  std::string ex_graph, ex_rule = "atmost";
  bool ex_exact = false, ex_bounded = false;
  size_t ex_trials = 32;
  uint64_t ex_seed = 0;
  exp_cmd->add_option("--graph", ex_graph, "edge list path")->required();
  exp_cmd->add_flag("--exact", ex_exact, "force exhaustive enumeration (n <= 24)");
  exp_cmd->add_flag("--bounded", ex_bounded, "force the witness search");
  exp_cmd->add_option("--rule", ex_rule, "strict | atmost")->check(CLI::IsMember({"strict", "atmost"}));
  exp_cmd->add_option("--trials", ex_trials, "witness search restarts");
  exp_cmd->add_option("--seed", ex_seed, "witness search seed");

  // analyze
  auto* an = app.add_subcommand("analyze", "OUT structure and expansion certificate");
  std::string an_host, an_gp, an_trace, an_p, an_csv;
  size_t an_d = 0, an_samples = 10000, an_max_iter = kDefaultSpectralMaxIter;
  uint64_t an_seed = 0;
  double an_tol = kDefaultSpectralTol;
  an->add_option("--graph", an_host, "host edge list")->required();
  an->add_option("--percolated", an_gp, "percolated edge list")->required();
  an->add_option("--trace", an_trace, "peel trace path")->required();
  an->add_option("--p", an_p, "retention probability used")->required();
  an->add_option("--d", an_d, "host regularity degree")->required();
  an->add_option("--samples", an_samples, "core expansion samples");
  an->add_option("--seed", an_seed, "sampling seed");
  an->add_option("--tol", an_tol, "spectral tolerance");
  an->add_option("--max-iter", an_max_iter, "spectral iteration cap");
  an->add_option("--csv", an_csv, "write OUT components as CSV");

  // experiment
  auto* ex = app.add_subcommand("experiment", "Monte Carlo harness over all modules");
  std::string cfg_path, preset_name, out_csv;
  std::optional<size_t> ov_trials;
  std::optional<uint64_t> ov_seed;
  ex->add_option("--config", cfg_path, "config file (key = value lines)");
  ex->add_option("--preset", preset_name, "kn-boundary | random-regular-main | cycle-negative-control");
  ex->add_option("--trials", ov_trials, "override trial count");
  ex->add_option("--seed", ov_seed, "override base seed");
  ex->add_option("--out", out_csv, "CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_family, gen_n, gen_d, gen_q, gen_seed, gen_out);
    if (spectrum->parsed())
      return cmd_spectrum(sp_graph, sp_tol, sp_max_iter, sp_samples, sp_seed, sp_csv);
    if (perc->parsed()) return cmd_percolate(pc_graph, pc_p, pc_seed, pc_out);
    if (peel_cmd->parsed()) return cmd_peel(pl_host, pl_gp, pl_p, pl_d, pl_out);
    if (exp_cmd->parsed())
      return cmd_expansion(ex_graph, ex_exact, ex_bounded, ex_rule, ex_trials, ex_seed);
    if (an->parsed())
      return cmd_analyze(an_host, an_gp, an_trace, an_p, an_d, an_samples, an_seed, an_tol,
                         an_max_iter, an_csv);
    if (ex->parsed()) return cmd_experiment(cfg_path, preset_name, ov_trials, ov_seed, out_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
