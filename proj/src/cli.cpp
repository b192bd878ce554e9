#include "gvflab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gvflab/config.hpp"
#include "gvflab/harness.hpp"
#include "gvflab/oracles.hpp"
#include "gvflab/plot.hpp"
#include "gvflab/rng.hpp"

namespace gvflab {

namespace {

int cmd_oracle(const std::string& name) {
  std::ostringstream out;
  out.precision(15);
  if (name == "pulse-return") {
    PulseConfig cfg;
    const double residual = oracles::pulse_bellman_residual(cfg, 4 * cfg.period);
    out << "pulse-return: max Bellman residual over " << 4 * cfg.period
        << " steps = " << residual << "\n";
  } else if (name == "empirical-return") {
    Rng rng(7);
    const int b = 50;
    std::vector<double> c(b + 1), g(b + 1);
    for (int i = 0; i <= b; ++i) {
      c[i] = 2.0 * rng.uniform() - 1.0;
      g[i] = rng.uniform();
    }
    const double fast = empirical_return(c, g);
    const double brute = oracles::empirical_return_bruteforce(c, g);
    out << "empirical-return: windowed = " << fast << ", brute force = " << brute
        << ", |diff| = " << std::abs(fast - brute) << "\n";
  } else if (name == "chain") {
    const double gamma = 0.9;
    const std::array<double, 3> c{1.0, 0.5, -0.2};
    const auto v = oracles::chain_values(gamma, c);
    out << "chain: gamma = " << gamma << ", v = [" << v[0] << ", " << v[1] << ", " << v[2]
        << "]\n";
  } else if (name == "autostep-fd") {
    const auto check = oracles::meta_gradient_check(std::log(0.05), 1e-4, 200, 0.3, 0.0, 99);
    out << "autostep-fd: omega = " << check.omega << ", finite diff = " << check.finite_diff
        << ", relative error = " << check.relative_error << "\n";
  } else {
    std::cerr << "unknown oracle '" << name
              << "'; available: pulse-return, empirical-return, chain, autostep-fd\n";
    return 1;
  }
  std::cout << out.str();
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"General-value-function learning testbed"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute an experiment from a config file");
  std::string config_path;
  run->add_option("config", config_path, "config file")->required();
  std::uint64_t seed_override = 0;
  run->add_option("--seed", seed_override, "override the master seed");
  std::string out_override;
  run->add_option("--out", out_override, "override the output directory");
  int workers_override = -1;
  run->add_option("--workers", workers_override, "trial worker threads (0 = auto)");
  bool paper_scale = false;
  run->add_flag("--paper-scale", paper_scale, "run 250000 steps and 30 trials");

  // aggregate
  auto* agg = app.add_subcommand("aggregate", "Summarize the trial CSVs of a run directory");
  std::string run_dir;
  agg->add_option("dir", run_dir, "run directory")->required();

  // plot
  auto* plot = app.add_subcommand("plot", "Render a metric of a summary CSV as SVG");
  std::string summary_path;
  plot->add_option("summary", summary_path, "summary.csv produced by aggregate")->required();
  std::string metric;
  plot->add_option("--metric", metric, "metric to draw")->required();
  std::vector<std::string> gvfs;
  plot->add_option("--gvf", gvfs, "restrict to these gvf ids")->delimiter(',');
  std::string plot_out = "plot.svg";
  plot->add_option("--out", plot_out, "output SVG path");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Run a built-in numerical cross-check");
  std::string oracle_name;
  oracle->add_option("name", oracle_name, "pulse-return | empirical-return | chain | autostep-fd")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      ExperimentConfig cfg = load_config(config_path);
      if (run->count("--seed") > 0) cfg.master_seed = seed_override;
      if (!out_override.empty()) cfg.output_dir = out_override;
      if (workers_override >= 0) cfg.workers = workers_override;
      if (paper_scale) {
        cfg.steps = 250000;
        cfg.trials = 30;
      }
      const RunResult result = run_experiment(cfg);
      std::cout << "run complete: " << result.dir.string() << " (" << result.trial_files.size()
                << " trials, config " << cfg.hash() << ")\n";
      return 0;
    }
    if (agg->parsed()) {
      const auto file = write_summary(run_dir);
      std::cout << "wrote " << file.string() << "\n";
      return 0;
    }
    if (plot->parsed()) {
      PlotSpec spec;
      spec.metric = metric;
      spec.gvf_ids = gvfs;
      write_plot_svg(read_summary_csv(summary_path), spec, plot_out);
      std::cout << "wrote " << plot_out << "\n";
      return 0;
    }
    if (oracle->parsed()) return cmd_oracle(oracle_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gvflab
