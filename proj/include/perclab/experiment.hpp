#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "perclab/generators.hpp"
#include "perclab/percolation.hpp"
#include "perclab/spectral.hpp"
#include "perclab/structure.hpp"

namespace perclab {

enum class Check { out_size, out_components, balance, core_expansion, certificate, s0_concentration };

inline std::string check_name(Check c) {
  switch (c) {
    case Check::out_size: return "out-size";
    case Check::out_components: return "out-components";
    case Check::balance: return "balance";
    case Check::core_expansion: return "core-expansion";
    case Check::certificate: return "certificate";
    case Check::s0_concentration: return "s0-concentration";
  }
  return "?";
}

inline Check check_from_name(const std::string& name) {
  for (Check c : {Check::out_size, Check::out_components, Check::balance, Check::core_expansion,
                  Check::certificate, Check::s0_concentration})
    if (check_name(c) == name) return c;
  throw std::invalid_argument("unknown check: " + name);
}

struct ExperimentConfig {
  std::string name;  // experiment_id column; defaults to a family/size slug
  GeneratorSpec generator;
  std::vector<std::string> p_values;  // decimal strings, or the single entry "auto"
  size_t trials = 0;
  uint64_t base_seed = 0;
  std::vector<Check> checks = {Check::out_size, Check::out_components, Check::balance,
                               Check::core_expansion, Check::certificate};
  std::string output_path;
  size_t samples = 10000;         // core-expansion subsets per trial
  double lambda_tol = 1e-9;       // spectral stopping tolerance
  size_t lambda_max_iter = 0;     // 0: library default (dense cutoff decides)

  bool has_check(Check c) const {
    return std::find(checks.begin(), checks.end(), c) != checks.end();
  }
};

/// One CSV row. p is carried as its decimal string; floats print with 9
/// significant digits.
struct ExperimentRecord {
  std::string experiment_id;
  size_t trial = 0;
  uint64_t seed = 0;
  size_t n = 0;
  size_t d = 0;
  double lambda = 0.0;
  double c = 0.0;
  std::string p;
  size_t s0_size = 0;
  size_t out_size = 0;
  size_t peel_iterations = 0;
  size_t survivor_count = 0;
  size_t giant_size = 0;
  size_t second_comp_size = 0;
  size_t max_out_comp = 0;
  double out_comp_bound = 0.0;
  bool all_out_balanced = true;
  double min_sampled_core_expansion = -1.0;  // -1: no samples (empty core)
  double core_bound_pd13 = 0.0;
  double theorem_bound = 0.0;
  bool certificate_pass = true;
  std::string status = "ok";

  // per-row check outcomes (not CSV columns)
  bool out_size_ok = true;
  bool out_components_ok = true;
  bool balance_ok = true;
  bool core_expansion_ok = true;
};

inline const char* kCsvHeader =
    "experiment_id,trial,seed,n,d,lambda,c,p,s0_size,out_size,peel_iterations,"
    "survivor_count,giant_size,second_comp_size,max_out_comp,out_comp_bound,"
    "all_out_balanced,min_sampled_core_expansion,core_bound_pd13,theorem_bound,"
    "certificate_pass,status";

namespace detail {

inline std::string fmt_g9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

inline std::string csv_row(const ExperimentRecord& r) {
  std::ostringstream os;
  os << r.experiment_id << ',' << r.trial << ',' << r.seed << ',' << r.n << ',' << r.d << ','
     << detail::fmt_g9(r.lambda) << ',' << detail::fmt_g9(r.c) << ',' << r.p << ',' << r.s0_size
     << ',' << r.out_size << ',' << r.peel_iterations << ',' << r.survivor_count << ','
     << r.giant_size << ',' << r.second_comp_size << ',' << r.max_out_comp << ','
     << detail::fmt_g9(r.out_comp_bound) << ',' << (r.all_out_balanced ? 1 : 0) << ','
     << detail::fmt_g9(r.min_sampled_core_expansion) << ',' << detail::fmt_g9(r.core_bound_pd13)
     << ',' << detail::fmt_g9(r.theorem_bound) << ',' << (r.certificate_pass ? 1 : 0) << ','
     << r.status;
  return os.str();
}

/// Built-in experiment presets.
inline ExperimentConfig preset(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  if (name == "kn-boundary") {
    cfg.generator.family = GraphFamily::complete;
    cfg.generator.n = 200;
    cfg.trials = 10;
    cfg.base_seed = 1;
    cfg.samples = 2000;
    // sweep around c/sqrt(d) = 1/(n-1)
    const double base = 1.0 / static_cast<double>(cfg.generator.n - 1);
    for (double factor : {0.2, 1.0, 5.0, 25.0}) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", factor * base);
      cfg.p_values.emplace_back(buf);
    }
  } else if (name == "random-regular-main") {
    cfg.generator.family = GraphFamily::random_regular;
    cfg.generator.n = 20000;
    cfg.generator.d = 256;
    cfg.trials = 10;
    cfg.base_seed = 1;
    cfg.samples = 10000;
    cfg.p_values = {"auto"};
    cfg.lambda_tol = 1e-7;
    cfg.lambda_max_iter = 120;
  } else if (name == "cycle-negative-control") {
    cfg.generator.family = GraphFamily::cycle;
    cfg.generator.n = 1000;
    cfg.trials = 10;
    cfg.base_seed = 1;
    cfg.samples = 10000;
    cfg.p_values = {"0.6"};
    cfg.lambda_tol = 1e-7;
    cfg.lambda_max_iter = 20000;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return cfg;
}

/// Line-oriented `key = value` config with `#` comments. Unknown keys,
/// malformed values and missing required keys are errors carrying the
/// line number.
inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  bool family_set = false, n_set = false, d_set = false, q_set = false, trials_set = false,
       seed_set = false, p_set = false;
  std::istringstream is(text);
  std::string raw;
  size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = raw;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) fail("expected `key = value`: " + raw);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (value.empty()) fail("empty value for key `" + key + "`");
    auto parse_u64 = [&](const std::string& v) -> uint64_t {
      try {
        size_t pos = 0;
        const uint64_t out = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
      } catch (const std::exception&) {
        fail("malformed integer `" + v + "` for key `" + key + "`");
        return 0;
      }
    };
    if (key == "preset") {
      ExperimentConfig base = preset(value);
      // Keep anything already parsed? Presets are a base layer: apply
      // first, later keys override. Enforce by requiring preset first.
      if (family_set || n_set || trials_set || seed_set || p_set)
        fail("preset must come before other keys");
      cfg = base;
      family_set = n_set = trials_set = seed_set = p_set = true;
      d_set = cfg.generator.family == GraphFamily::random_regular;
    } else if (key == "name") {
      cfg.name = value;
    } else if (key == "family") {
      try {
        cfg.generator.family = family_from_name(value);
      } catch (const std::exception& e) {
        fail(e.what());
      }
      family_set = true;
    } else if (key == "n") {
      cfg.generator.n = parse_u64(value);
      n_set = true;
    } else if (key == "d") {
      cfg.generator.d = parse_u64(value);
      d_set = true;
    } else if (key == "q") {
      cfg.generator.q = parse_u64(value);
      q_set = true;
    } else if (key == "p") {
      cfg.p_values = detail::split_commas(value);
      if (cfg.p_values.empty()) fail("empty p list");
      for (const auto& pv : cfg.p_values) {
        if (pv == "auto") continue;
        try {
          parse_prob(pv);
        } catch (const std::exception& e) {
          fail(e.what());
        }
      }
      p_set = true;
    } else if (key == "trials") {
      cfg.trials = parse_u64(value);
      if (cfg.trials < 1) fail("trials must be >= 1");
      trials_set = true;
    } else if (key == "seed") {
      cfg.base_seed = parse_u64(value);
      seed_set = true;
    } else if (key == "checks") {
      cfg.checks.clear();
      for (const auto& token : detail::split_commas(value)) {
        try {
          cfg.checks.push_back(check_from_name(token));
        } catch (const std::exception& e) {
          fail(e.what());
        }
      }
    } else if (key == "samples") {
      cfg.samples = parse_u64(value);
    } else if (key == "out") {
      cfg.output_path = value;
    } else if (key == "lambda_tol") {
      try {
        size_t pos = 0;
        cfg.lambda_tol = std::stod(value, &pos);
        if (pos != value.size() || cfg.lambda_tol <= 0) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        fail("malformed lambda_tol `" + value + "`");
      }
    } else if (key == "lambda_max_iter") {
      cfg.lambda_max_iter = parse_u64(value);
    } else {
      fail("unknown key `" + key + "`");
    }
  }
  line_no = 0;  // errors below are file-level
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("config: missing required key `" + what + "`");
  };
  require(family_set, "family");
  require(trials_set, "trials");
  require(seed_set, "seed");
  if (cfg.generator.family == GraphFamily::paley) {
    require(q_set, "q");
    cfg.generator.n = cfg.generator.q;
  } else {
    require(n_set, "n");
  }
  if (cfg.generator.family == GraphFamily::random_regular) require(d_set, "d");
  if (!p_set && cfg.p_values.empty()) cfg.p_values = {"auto"};
  if (cfg.name.empty()) {
    std::ostringstream slug;
    slug << family_name(cfg.generator.family) << "-n" << cfg.generator.n;
    if (cfg.generator.family == GraphFamily::random_regular) slug << "-d" << cfg.generator.d;
    cfg.name = slug.str();
  }
  return cfg;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return parse_config(buffer.str());
}

struct ExperimentSummary {
  std::vector<ExperimentRecord> records;
  std::map<std::string, std::pair<size_t, size_t>> check_pass_counts;  // name -> (pass, total)
  bool s0_concentration_ok = true;
  double s0_mean = 0.0;
  double s0_stddev = 0.0;
  bool all_pass = true;
  std::string csv;  // full CSV bytes, LF endings
};

namespace detail {

struct TrialTask {
  size_t p_index;
  size_t trial;
};

inline ExperimentRecord run_trial(const ExperimentConfig& cfg, size_t p_index, size_t trial) {
  ExperimentRecord row;
  row.experiment_id = cfg.name;
  row.trial = trial;
  const uint64_t trial_seed = splitmix64(cfg.base_seed ^ static_cast<uint64_t>(trial));
  row.seed = trial_seed;
  try {
    GeneratorSpec spec = cfg.generator;
    spec.seed = stream_seed(trial_seed, 0);
    const Graph host = generate(spec);
    const size_t d = family_degree(spec);
    row.n = host.vertex_count();
    row.d = d;

    const size_t max_iter = cfg.lambda_max_iter ? cfg.lambda_max_iter : kDefaultSpectralMaxIter;
    const SpectralSummary spectrum = second_eigenvalue_abs(host, cfg.lambda_tol, max_iter);
    row.lambda = spectrum.lambda;
    row.c = spectrum.c;

    std::string p_text = cfg.p_values[p_index];
    if (p_text == "auto") {
      double p_auto = 5.0 * spectrum.c / std::sqrt(static_cast<double>(d));
      if (p_auto > 1.0) p_auto = 1.0;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", p_auto);
      p_text = buf;
    }
    const RetentionProb p = parse_prob(p_text);
    row.p = p.text;

    const Graph gp = percolate(host, p, stream_seed(trial_seed, 1));
    const PruneTrace trace = peel(gp, p, d);
    row.s0_size = trace.s0.count();
    row.out_size = trace.out.count();
    row.peel_iterations = trace.removals.size();
    row.survivor_count = trace.survivors.count();

    const CertificateReport cert = giant_expansion_certificate(
        gp, trace, spectrum.lambda, d, p, cfg.samples, stream_seed(trial_seed, 2));
    row.giant_size = cert.giant_size;
    row.second_comp_size = cert.second_component_size;
    row.max_out_comp = cert.out.max_component_size;
    row.out_comp_bound = cert.out.size_bound_log2;
    row.all_out_balanced = cert.out.all_balanced;
    row.min_sampled_core_expansion =
        cert.core_expansion.samples ? cert.core_expansion.min_ratio : -1.0;
    row.core_bound_pd13 = p.value() * static_cast<double>(d) / 13.0;
    row.theorem_bound = cert.implied_bound_log2;
    row.certificate_pass = cert.pass();

    row.out_size_ok =
        static_cast<double>(row.out_size) <= std::exp(-row.lambda / 12.0) * static_cast<double>(row.n);
    row.out_components_ok =
        static_cast<double>(row.max_out_comp) <= row.out_comp_bound;
    row.balance_ok = row.all_out_balanced;
    row.core_expansion_ok = cert.core_expansion.samples == 0 || cert.core_expansion.all_meet_bound;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& ch : msg)
      if (ch == ',' || ch == '\n') ch = ';';
    row.status = "error:" + msg;
    row.certificate_pass = false;
    row.out_size_ok = row.out_components_ok = row.balance_ok = row.core_expansion_ok = false;
  }
  return row;
}

}  // namespace detail

/// Runs the full experiment: every (p, trial) cell generates a seeded host,
/// measures lambda, percolates, peels and evaluates the enabled checks.
/// Rows are emitted in (p, trial) order regardless of thread count, so the
/// CSV is byte-identical for serial and parallel execution.
inline ExperimentSummary run_experiment(const ExperimentConfig& cfg, unsigned threads = 0) {
  if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (cfg.p_values.empty()) throw std::invalid_argument("run_experiment: no p values");
  if (threads == 0) {
    if (const char* env = std::getenv("PERC_LAB_THREADS")) {
      const long parsed = std::strtol(env, nullptr, 10);
      if (parsed >= 1) threads = static_cast<unsigned>(parsed);
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<detail::TrialTask> tasks;
  for (size_t pi = 0; pi < cfg.p_values.size(); ++pi)
    for (size_t t = 0; t < cfg.trials; ++t) tasks.push_back({pi, t});

  ExperimentSummary summary;
  summary.records.resize(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      summary.records[i] = detail::run_trial(cfg, tasks[i].p_index, tasks[i].trial);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(threads, tasks.size());
    pool.reserve(count);
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // CSV bytes
  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  for (const auto& row : summary.records) csv << csv_row(row) << '\n';
  summary.csv = csv.str();
  if (!cfg.output_path.empty()) {
    std::ofstream os(cfg.output_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + cfg.output_path);
    os << summary.csv;
  }

  // Check aggregation
  auto tally = [&](Check c, auto&& per_row) {
    if (!cfg.has_check(c)) return;
    size_t pass = 0;
    for (const auto& row : summary.records) pass += per_row(row) ? 1 : 0;
    summary.check_pass_counts[check_name(c)] = {pass, summary.records.size()};
    if (pass != summary.records.size()) summary.all_pass = false;
  };
  tally(Check::out_size, [](const ExperimentRecord& r) { return r.out_size_ok; });
  tally(Check::out_components, [](const ExperimentRecord& r) { return r.out_components_ok; });
  tally(Check::balance, [](const ExperimentRecord& r) { return r.balance_ok; });
  tally(Check::core_expansion, [](const ExperimentRecord& r) { return r.core_expansion_ok; });
  tally(Check::certificate, [](const ExperimentRecord& r) { return r.certificate_pass; });
  for (const auto& row : summary.records)
    if (row.status != "ok") summary.all_pass = false;

  if (cfg.has_check(Check::s0_concentration)) {
    double mean = 0.0;
    for (const auto& row : summary.records) mean += static_cast<double>(row.s0_size);
    mean /= static_cast<double>(summary.records.size());
    double var = 0.0;
    for (const auto& row : summary.records) {
      const double dev = static_cast<double>(row.s0_size) - mean;
      var += dev * dev;
    }
    var /= static_cast<double>(summary.records.size());
    summary.s0_mean = mean;
    summary.s0_stddev = std::sqrt(var);
    // harness sanity band, not a paper quantity
    summary.s0_concentration_ok = summary.s0_stddev <= 3.0 * std::sqrt(mean) + 1e-12;
    summary.check_pass_counts[check_name(Check::s0_concentration)] = {
        summary.s0_concentration_ok ? 1u : 0u, 1u};
    if (!summary.s0_concentration_ok) summary.all_pass = false;
  }
  return summary;
}

}  // namespace perclab
