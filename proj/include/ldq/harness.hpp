// Experiment harness behind the CLI: dataset ingestion, protocol trials,
// parameter sweeps, metric computation, simulator driving, CSV emission.
#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldq/distance.hpp"
#include "ldq/gen.hpp"
#include "ldq/graph.hpp"
#include "ldq/graph_agg.hpp"
#include "ldq/mechanisms.hpp"
#include "ldq/metrics.hpp"
#include "ldq/neigh_agg.hpp"
#include "ldq/rng.hpp"
#include "ldq/simulation.hpp"

namespace ldq {

enum class Method { kGraphAggAnd, kGraphAggAndOr, kRNL, kNeighAggLaplace, kNeighAggRR };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::kGraphAggAnd: return "GraphAggAnd";
    case Method::kGraphAggAndOr: return "GraphAggAndOr";
    case Method::kRNL: return "RNL";
    case Method::kNeighAggLaplace: return "NeighAggLaplace";
    case Method::kNeighAggRR: return "NeighAggRR";
  }
  return "?";
}

inline Method parse_method(const std::string& name) {
  if (name == "GraphAggAnd") return Method::kGraphAggAnd;
  if (name == "GraphAggAndOr") return Method::kGraphAggAndOr;
  if (name == "RNL") return Method::kRNL;
  if (name == "NeighAggLaplace") return Method::kNeighAggLaplace;
  if (name == "NeighAggRR") return Method::kNeighAggRR;
  throw std::invalid_argument("unknown method: " + name);
}

struct ExperimentConfig {
  std::string dataset_path;
  std::string dataset_name;  // defaults to the path's stem
  bool directed = false;
  bool complement = false;
  bool largest_component = false;
  Method method = Method::kNeighAggRR;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps = 0.0;
  int threshold = 6;
  std::uint64_t seed = 1;
  std::size_t repeats = 1;
  UnreachablePolicy unreachable = UnreachablePolicy::kCap;
  bool include_timing = true;
  std::string cache_dir = ".ldq_cache";  // empty disables the truth cache
};

struct ResultRecord {
  std::string dataset;
  std::string method;
  double eps_total = 0.0;
  int threshold = 6;
  std::uint64_t seed = 0;
  std::string trial;  // trial index, or "mean"/"std" for sweep summary rows
  double rmae = std::numeric_limits<double>::quiet_NaN();
  double mre = std::numeric_limits<double>::quiet_NaN();
  double runtime_ms = std::numeric_limits<double>::quiet_NaN();
  double gamma_hat = std::numeric_limits<double>::quiet_NaN();
  double gamma_bar = std::numeric_limits<double>::quiet_NaN();
  double p = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline std::string format_field(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

inline void write_csv_header(std::ostream& os, bool include_timing) {
  os << "dataset,method,epsilon_total,T,seed,trial,rmae,mre";
  if (include_timing) os << ",runtime_ms";
  os << ",gamma_hat,gamma_bar,p,alpha\n";
}

inline void write_csv_row(std::ostream& os, const ResultRecord& r, bool include_timing) {
  os << r.dataset << ',' << r.method << ',' << detail::format_field(r.eps_total)
     << ',' << r.threshold << ',' << r.seed << ',' << r.trial << ','
     << detail::format_field(r.rmae) << ',' << detail::format_field(r.mre);
  if (include_timing) os << ',' << detail::format_field(r.runtime_ms);
  os << ',' << detail::format_field(r.gamma_hat) << ','
     << detail::format_field(r.gamma_bar) << ',' << detail::format_field(r.p)
     << ',' << detail::format_field(r.alpha) << '\n';
}

// Loads the configured dataset, printing the one-line ingestion report to
// standard error.
inline Graph load_dataset(const ExperimentConfig& config) {
  std::ifstream in(config.dataset_path);
  if (!in) throw std::runtime_error("cannot open dataset: " + config.dataset_path);
  LoadOptions opts;
  opts.directed = config.directed;
  opts.take_complement = config.complement;
  opts.largest_component = config.largest_component;
  LoadResult loaded = load_edge_list(in, opts);
  std::cerr << loaded.report.summary() << '\n';
  return std::move(loaded.graph);
}

// Exact truth matrix, cached on disk keyed by dataset content and load
// options so sweeps do not repeat the BFS work.
inline DistanceMatrix truth_matrix(const ExperimentConfig& config, const Graph& g) {
  if (config.cache_dir.empty() || config.dataset_path.empty())
    return exact_all_pairs(g);

  std::uint64_t h = 0xcbf29ce484222325ULL;
  {
    std::ifstream in(config.dataset_path, std::ios::binary);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    h = detail::fnv1a(bytes.str(), h);
  }
  const std::string tag = std::string(config.directed ? "d1" : "d0") +
                          (config.complement ? "c1" : "c0") +
                          (config.largest_component ? "l1" : "l0");
  h = detail::fnv1a(tag, h);

  namespace fs = std::filesystem;
  fs::create_directories(config.cache_dir);
  char name[32];
  std::snprintf(name, sizeof(name), "%016llx.dmat",
                static_cast<unsigned long long>(h));
  const fs::path path = fs::path(config.cache_dir) / name;

  const std::size_t n = g.vertex_count();
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t stored_n = 0;
    in.read(reinterpret_cast<char*>(&stored_n), sizeof(stored_n));
    if (in && stored_n == n) {
      DistanceMatrix m(n);
      in.read(reinterpret_cast<char*>(m.entries().data()),
              static_cast<std::streamsize>(n * n * sizeof(double)));
      if (in) return m;
    }
  }
  DistanceMatrix m = exact_all_pairs(g);
  std::ofstream out(path, std::ios::binary);
  const std::uint64_t n64 = n;
  out.write(reinterpret_cast<const char*>(&n64), sizeof(n64));
  out.write(reinterpret_cast<const char*>(m.entries().data()),
            static_cast<std::streamsize>(n * n * sizeof(double)));
  return m;
}

namespace detail {

inline void validate_budgets(const ExperimentConfig& config) {
  switch (config.method) {
    case Method::kGraphAggAnd:
      if (!(config.eps1 > 0.0)) throw std::invalid_argument("GraphAggAnd requires --eps1 > 0");
      break;
    case Method::kGraphAggAndOr:
      if (!(config.eps1 > 0.0) || !(config.eps2 > 0.0))
        throw std::invalid_argument("GraphAggAndOr requires --eps1 and --eps2 > 0");
      break;
    case Method::kRNL:
      if (!(config.eps > 0.0)) throw std::invalid_argument("RNL requires --eps > 0");
      break;
    case Method::kNeighAggLaplace:
    case Method::kNeighAggRR:
      if (!(config.eps > 0.0)) throw std::invalid_argument("NeighAgg requires --eps > 0");
      break;
  }
  if (config.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
}

}  // namespace detail

// One protocol trial against a precomputed truth matrix.
inline ResultRecord run_trial(const Graph& g, const DistanceMatrix& truth,
                              const ExperimentConfig& config, std::size_t trial,
                              RngStream trial_rng) {
  const auto start = std::chrono::steady_clock::now();
  const double cap = static_cast<double>(config.threshold);

  ResultRecord rec;
  rec.dataset = config.dataset_name;
  rec.method = method_name(config.method);
  rec.threshold = config.threshold;
  rec.seed = config.seed;
  rec.trial = std::to_string(trial);

  PrivacyParams params;
  params.eps1 = config.eps1;
  params.eps2 = config.eps2;
  params.eps = config.eps;
  params.threshold = config.threshold;

  DistanceMatrix noisy;
  switch (config.method) {
    case Method::kGraphAggAnd:
    case Method::kGraphAggAndOr: {
      const auto variant = config.method == Method::kGraphAggAnd
                               ? GraphAggVariant::kAndOnly
                               : GraphAggVariant::kAndOr;
      SyntheticGraph synth = run_graph_agg(g, params, variant, trial_rng);
      noisy = exact_all_pairs(synth.adjacency.to_graph(), cap);
      rec.gamma_hat = synth.gamma_hat;
      rec.gamma_bar = synth.gamma_bar;
      rec.p = synth.calibration.p;
      rec.alpha = synth.calibration.alpha;
      PrivacyParams total;
      total.eps1 = params.eps1;
      total.eps2 = synth.calibration.eps2;
      rec.eps_total = total_budget(Protocol::kGraphAgg, total);
      break;
    }
    case Method::kRNL: {
      SyntheticGraph synth = run_rnl_baseline(g, config.eps, trial_rng);
      noisy = exact_all_pairs(synth.adjacency.to_graph(), cap);
      rec.gamma_bar = synth.gamma_bar;
      rec.p = synth.calibration.p;
      rec.eps_total = config.eps;  // single report per edge
      break;
    }
    case Method::kNeighAggLaplace:
    case Method::kNeighAggRR: {
      params.mechanism = config.method == Method::kNeighAggLaplace
                             ? Mechanism::kLaplace
                             : Mechanism::kRR;
      noisy = run_neigh_agg(g, params, trial_rng);
      rec.eps_total = total_budget(Protocol::kNeighAgg, params);
      break;
    }
  }

  const MetricReport metrics = compute_metrics(truth, noisy, cap, config.unreachable);
  rec.rmae = metrics.rmae;
  rec.mre = metrics.mre;
  const auto stop = std::chrono::steady_clock::now();
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return rec;
}

// All trials for one configuration. `cell` isolates the RNG sub-stream of a
// sweep cell; standalone runs use cell 0.
inline std::vector<ResultRecord> run_trials(const Graph& g, const DistanceMatrix& truth,
                                            const ExperimentConfig& config,
                                            std::uint64_t cell = 0) {
  detail::validate_budgets(config);
  RngStream root(config.seed);
  RngStream cell_stream = root.derive(cell);
  std::vector<ResultRecord> records;
  records.reserve(config.repeats);
  for (std::size_t trial = 0; trial < config.repeats; ++trial)
    records.push_back(run_trial(g, truth, config, trial, cell_stream.derive(trial)));
  return records;
}

// Load + truth + trials; the full `run` flow.
inline std::vector<ResultRecord> run_experiment(ExperimentConfig config) {
  if (config.dataset_name.empty())
    config.dataset_name = std::filesystem::path(config.dataset_path).stem().string();
  const Graph g = load_dataset(config);
  const DistanceMatrix truth = truth_matrix(config, g);
  return run_trials(g, truth, config);
}

namespace detail {

inline ResultRecord summary_record(const std::vector<ResultRecord>& cell,
                                   const char* label) {
  ResultRecord s = cell.front();
  s.trial = label;
  s.runtime_ms = std::numeric_limits<double>::quiet_NaN();
  s.gamma_hat = s.gamma_bar = s.p = s.alpha = std::numeric_limits<double>::quiet_NaN();
  const auto stat = [&](auto get) {
    double mean = 0.0;
    for (const auto& r : cell) mean += get(r);
    mean /= static_cast<double>(cell.size());
    double ss = 0.0;
    for (const auto& r : cell) ss += (get(r) - mean) * (get(r) - mean);
    const double sd = cell.size() > 1
                          ? std::sqrt(ss / static_cast<double>(cell.size() - 1))
                          : 0.0;
    return std::make_pair(mean, sd);
  };
  const auto [rmae_mean, rmae_sd] = stat([](const ResultRecord& r) { return r.rmae; });
  const auto [mre_mean, mre_sd] = stat([](const ResultRecord& r) { return r.mre; });
  const bool is_mean = std::string(label) == "mean";
  s.rmae = is_mean ? rmae_mean : rmae_sd;
  s.mre = is_mean ? mre_mean : mre_sd;
  return s;
}

}  // namespace detail

// Cross product of the budget grid and the optional T grid, repeats trials
// per cell, then appends mean/std summary rows per cell.
inline std::vector<ResultRecord> run_sweep(const Graph& g, const DistanceMatrix& truth,
                                           ExperimentConfig config,
                                           const std::vector<double>& budget_grid,
                                           const std::vector<int>& t_grid_in) {
  if (budget_grid.empty()) throw std::invalid_argument("sweep: empty budget grid");
  std::vector<int> t_grid = t_grid_in;
  if (t_grid.empty()) t_grid.push_back(config.threshold);
  const bool explicit_eps2 = config.eps2 > 0.0;

  std::vector<ResultRecord> all;
  std::uint64_t cell = 0;
  for (int T : t_grid) {
    for (double budget : budget_grid) {
      ExperimentConfig c = config;
      c.threshold = T;
      switch (c.method) {
        case Method::kGraphAggAnd:
          c.eps1 = budget;
          break;
        case Method::kGraphAggAndOr:
          c.eps1 = budget;
          if (!explicit_eps2) c.eps2 = budget;
          break;
        default:
          c.eps = budget;
          break;
      }
      auto records = run_trials(g, truth, c, cell++);
      const ResultRecord mean = detail::summary_record(records, "mean");
      const ResultRecord sd = detail::summary_record(records, "std");
      all.insert(all.end(), records.begin(), records.end());
      all.push_back(mean);
      all.push_back(sd);
    }
  }
  return all;
}

enum class SimulateMode { kY1, kY2, kMinLaplace };

struct SimulateOptions {
  SimulateMode mode = SimulateMode::kY2;
  SimulationSpec spec;
  std::vector<double> eps_grid = {1, 2, 3, 4, 5, 6, 7, 8};
  std::uint64_t seed = 1;
  // MinLaplace mode:
  std::vector<std::size_t> widths = {2, 3, 5};
  double scale = 1.0;
  std::size_t draws = 1000000;
};

// Per-eps summary rows for the Y simulators, or the three-method comparison
// table for the min-of-Laplace expectation.
inline void cmd_simulate(const SimulateOptions& options, std::ostream& os) {
  if (options.mode == SimulateMode::kMinLaplace) {
    os << "n,b,exact_series,monte_carlo,mc_std_error,log_closed_form\n";
    RngStream root(options.seed);
    std::uint64_t stream = 0;
    for (std::size_t n : options.widths) {
      RngStream rng = root.derive(stream++);
      const auto exact =
          min_laplace_expectation(n, options.scale, MinLaplaceMethod::kExactSeries, rng);
      const auto mc = min_laplace_expectation(n, options.scale,
                                              MinLaplaceMethod::kMonteCarlo, rng,
                                              options.draws);
      const double closed =
          n > 1 ? min_laplace_expectation(n, options.scale,
                                          MinLaplaceMethod::kLogClosedForm, rng)
                      .value
                : std::numeric_limits<double>::quiet_NaN();
      os << n << ',' << detail::format_field(options.scale) << ','
         << detail::format_field(exact.value) << ',' << detail::format_field(mc.value)
         << ',' << detail::format_field(mc.std_error) << ','
         << detail::format_field(closed) << '\n';
    }
    return;
  }

  os << "mode,n,t,T,eps,repeats,mean,stddev,p5,p95,clamped_mean\n";
  RngStream root(options.seed);
  std::uint64_t stream = 0;
  for (double eps : options.eps_grid) {
    SimulationSpec spec = options.spec;
    spec.eps = eps;
    RngStream rng = root.derive(stream++);
    std::string clamped_field;
    SampleSummary summary;
    if (options.mode == SimulateMode::kY1) {
      summary = summarize(simulate_y1(spec, rng, false));
      RngStream rng_clamped = root.derive(stream - 1);  // same draws, clamped
      const auto clamped = summarize(simulate_y1(spec, rng_clamped, true));
      clamped_field = detail::format_field(clamped.mean);
    } else {
      summary = summarize(simulate_y2(spec, rng));
    }
    os << (options.mode == SimulateMode::kY1 ? "y1" : "y2") << ','
       << spec.population << ',' << spec.true_distance << ',' << spec.threshold
       << ',' << detail::format_field(eps) << ',' << spec.repeats << ','
       << detail::format_field(summary.mean) << ','
       << detail::format_field(summary.stddev) << ','
       << detail::format_field(summary.p5) << ','
       << detail::format_field(summary.p95) << ',' << clamped_field << '\n';
  }
}

// Dataset summary line: n, m, density, minimum degree, distinct degree
// values, and the degree-based diameter bound.
inline void cmd_stats(const Graph& g, std::ostream& os) {
  os << "n=" << g.vertex_count() << " m=" << g.edge_count()
     << " density=" << detail::format_field(density(g))
     << " min_degree=" << min_degree(g)
     << " distinct_degrees=" << distinct_degree_count(g)
     << " diameter_bound=" << diameter_upper_bound(g) << '\n';
}

}  // namespace ldq
