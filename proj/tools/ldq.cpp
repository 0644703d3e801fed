// ldq: locally differentially private distance-query experiments.
//
// Subcommands:
//   run       one configuration, per-trial CSV rows
//   sweep     cross-product of a budget grid and an optional T grid
//   simulate  Y1 / Y2 / min-of-Laplace numerical simulations
//   stats     dataset summary (n, m, density, min degree, diameter bound)
//   gen       write a seeded random graph as an edge list

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldq/gen.hpp"
#include "ldq/harness.hpp"

namespace {

struct CommonOpts {
  ldq::ExperimentConfig config;
  std::string method = "NeighAggRR";
  std::string unreachable = "cap";
  std::string out;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--dataset", opts.config.dataset_path, "edge-list file")->required();
  cmd->add_option("--name", opts.config.dataset_name, "dataset name for CSV rows");
  cmd->add_flag("--directed", opts.config.directed, "symmetrize a directed edge list");
  cmd->add_flag("--complement", opts.config.complement, "use the complement graph");
  cmd->add_flag("--largest-component", opts.config.largest_component,
                "keep only the largest connected component");
  cmd->add_option("--method", opts.method,
                  "GraphAggAnd | GraphAggAndOr | RNL | NeighAggLaplace | NeighAggRR");
  cmd->add_option("--eps1", opts.config.eps1, "first-round budget (GraphAgg)");
  cmd->add_option("--eps2", opts.config.eps2, "second-round budget (GraphAggAndOr)");
  cmd->add_option("--eps", opts.config.eps, "per-report budget (NeighAgg, RNL)");
  cmd->add_option("--T", opts.config.threshold, "distance threshold")->default_val(6);
  cmd->add_option("--seed", opts.config.seed, "master seed")->default_val(1);
  cmd->add_option("--repeats", opts.config.repeats, "trials per cell")->default_val(1);
  cmd->add_option("--unreachable", opts.unreachable, "cap | exclude")->default_val("cap");
  cmd->add_option("--out", opts.out, "output CSV path (default stdout)");
  cmd->add_flag("--no-timing", opts.no_timing, "omit the runtime_ms column");
  cmd->add_option("--cache-dir", opts.config.cache_dir,
                  "truth-matrix cache directory ('' disables)");
}

void finish_common(CommonOpts& opts) {
  opts.config.method = ldq::parse_method(opts.method);
  if (opts.unreachable == "cap")
    opts.config.unreachable = ldq::UnreachablePolicy::kCap;
  else if (opts.unreachable == "exclude")
    opts.config.unreachable = ldq::UnreachablePolicy::kExclude;
  else
    throw CLI::ValidationError("--unreachable must be 'cap' or 'exclude'");
  opts.config.include_timing = !opts.no_timing;
}

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const std::vector<ldq::ResultRecord>& records, const CommonOpts& opts) {
  OutputStream out(opts.out);
  ldq::write_csv_header(out.get(), opts.config.include_timing);
  for (const auto& rec : records)
    ldq::write_csv_row(out.get(), rec, opts.config.include_timing);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locally differentially private distance queries"};
  app.set_config("--config", "", "read options from a config file");
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment configuration");
  add_common(run_cmd, run_opts);

  CommonOpts sweep_opts;
  std::vector<double> budget_grid;
  std::vector<int> t_grid;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "budget/threshold parameter sweep");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--eps-grid", budget_grid, "budget grid values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--t-grid", t_grid, "threshold grid values")->delimiter(',');

  ldq::SimulateOptions sim;
  std::string sim_mode = "y2";
  std::string sim_out;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Y1/Y2/min-Laplace simulations");
  sim_cmd->add_option("--mode", sim_mode, "y1 | y2 | minlaplace")->default_val("y2");
  sim_cmd->add_option("--n", sim.spec.population, "population size")->default_val(10000);
  sim_cmd->add_option("--t", sim.spec.true_distance, "true distance")->default_val(4);
  sim_cmd->add_option("--T", sim.spec.threshold, "distance threshold")->default_val(6);
  sim_cmd->add_option("--repeats", sim.spec.repeats, "trials per eps")->default_val(1000);
  sim_cmd->add_option("--eps-grid", sim.eps_grid, "eps grid")->delimiter(',');
  sim_cmd->add_option("--seed", sim.seed, "master seed")->default_val(1);
  sim_cmd->add_option("--widths", sim.widths, "min widths (minlaplace)")->delimiter(',');
  sim_cmd->add_option("--b", sim.scale, "Laplace scale (minlaplace)")->default_val(1.0);
  sim_cmd->add_option("--draws", sim.draws, "Monte Carlo draws (minlaplace)")
      ->default_val(1000000);
  sim_cmd->add_option("--out", sim_out, "output CSV path (default stdout)");

  CommonOpts stats_opts;
  CLI::App* stats_cmd = app.add_subcommand("stats", "dataset summary");
  stats_cmd->add_option("--dataset", stats_opts.config.dataset_path, "edge-list file")
      ->required();
  stats_cmd->add_flag("--directed", stats_opts.config.directed, "");
  stats_cmd->add_flag("--complement", stats_opts.config.complement, "");
  stats_cmd->add_flag("--largest-component", stats_opts.config.largest_component, "");

  std::string gen_model = "gnm";
  std::size_t gen_n = 0, gen_m = 0;
  double gen_p = 0.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  CLI::App* gen_cmd = app.add_subcommand("gen", "write a seeded random graph");
  gen_cmd->add_option("--model", gen_model, "gnm | gnp | ego")->default_val("gnm");
  gen_cmd->add_option("--n", gen_n, "vertex count")->required();
  gen_cmd->add_option("--m", gen_m, "edge count (gnm, ego)");
  gen_cmd->add_option("--p", gen_p, "edge probability (gnp)");
  gen_cmd->add_option("--seed", gen_seed, "seed")->default_val(1);
  gen_cmd->add_option("--out", gen_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      finish_common(run_opts);
      emit(ldq::run_experiment(run_opts.config), run_opts);
    } else if (*sweep_cmd) {
      finish_common(sweep_opts);
      auto& config = sweep_opts.config;
      if (config.dataset_name.empty())
        config.dataset_name = std::filesystem::path(config.dataset_path).stem().string();
      const ldq::Graph g = ldq::load_dataset(config);
      const ldq::DistanceMatrix truth = ldq::truth_matrix(config, g);
      emit(ldq::run_sweep(g, truth, config, budget_grid, t_grid), sweep_opts);
    } else if (*sim_cmd) {
      if (sim_mode == "y1")
        sim.mode = ldq::SimulateMode::kY1;
      else if (sim_mode == "y2")
        sim.mode = ldq::SimulateMode::kY2;
      else if (sim_mode == "minlaplace")
        sim.mode = ldq::SimulateMode::kMinLaplace;
      else
        throw std::invalid_argument("--mode must be y1, y2 or minlaplace");
      OutputStream out(sim_out);
      ldq::cmd_simulate(sim, out.get());
    } else if (*stats_cmd) {
      const ldq::Graph g = ldq::load_dataset(stats_opts.config);
      ldq::cmd_stats(g, std::cout);
    } else if (*gen_cmd) {
      ldq::RngStream rng(gen_seed);
      ldq::Graph g;
      if (gen_model == "gnm")
        g = ldq::gen::gnm(gen_n, gen_m, rng);
      else if (gen_model == "gnp")
        g = ldq::gen::gnp(gen_n, gen_p, rng);
      else if (gen_model == "ego")
        g = ldq::gen::ego_network(gen_n, gen_m, rng);
      else
        throw std::invalid_argument("--model must be gnm, gnp or ego");
      OutputStream out(gen_out);
      out.get() << "# model=" << gen_model << " n=" << g.vertex_count()
                << " m=" << g.edge_count() << " seed=" << gen_seed << '\n';
      g.write_edge_list(out.get());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
