// simulate: run AoI experiments on the blockchain-enabled network model.
//
//   simulate --config <path> [--scenario <name>] [--sweep <key>=<v1,v2,...>]
//            [--seed <int>] [--reps <int>] [--out <path>] [--trace <path>]
//
// Writes one CSV row per swept value (or a single row for a plain run).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bceaoi/config.hpp"
#include "bceaoi/errors.hpp"
#include "bceaoi/experiments.hpp"
#include "bceaoi/simulation.hpp"

namespace {

int run(const std::string& config_path, const std::string& scenario,
        const std::string& sweep_text, std::optional<std::uint64_t> seed,
        std::optional<std::uint32_t> reps, const std::string& out_path,
        const std::string& trace_path, unsigned threads) {
  using namespace bceaoi;

  SimConfig cfg = config_path.empty() ? paper_default() : load_config(config_path);
  if (seed) cfg.master_seed = *seed;
  if (reps) cfg.replications = *reps;
  cfg.validate();

  if (!scenario.empty() && !sweep_text.empty()) {
    throw ConfigError("sweep", "--scenario and --sweep are mutually exclusive");
  }

  ExperimentResult result;
  if (!scenario.empty()) {
    result = run_scenario(parse_scenario(scenario), cfg, threads);
  } else if (!sweep_text.empty()) {
    result = run_sweep(parse_sweep(sweep_text, cfg), threads);
  } else {
    result = run_single(cfg, threads);
  }

  if (out_path.empty()) {
    write_csv(std::cout, result.rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("out", "cannot open '" + out_path + "' for writing");
    write_csv(out, result.rows);
  }

  if (!trace_path.empty() && !result.points.empty()) {
    // Replication 0 of the first configuration, re-run with tracing on.
    const SimConfig& first = result.points.front().config;
    const RunSummary traced = simulate(first, first.master_seed, RunOptions{.keep_trace = true});
    std::ofstream trace(trace_path);
    if (!trace) throw ConfigError("trace", "cannot open '" + trace_path + "' for writing");
    write_trace_csv(trace, traced.trace);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-of-information simulator for a blockchain-enabled network"};
  app.name("simulate");

  std::string config_path;
  std::string scenario;
  std::string sweep;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> reps;
  std::string out_path;
  std::string trace_path;
  unsigned threads = 0;

  app.add_option("--config", config_path, "Config file with `key = value` lines")
      ->check(CLI::ExistingFile);
  app.add_option("--scenario", scenario, "Preset sweep: fig2, fig3, fig4, fig5, fig6, nodes");
  app.add_option("--sweep", sweep, "Sweep one key: <key>=<v1,v2,...>");
  app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--reps", reps, "Replications per point (overrides the config)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  app.add_option("--trace", trace_path, "Per-transaction debug CSV of the first run");
  app.add_option("--threads", threads, "Worker threads for replications (0 = all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    return run(config_path, scenario, sweep, seed, reps, out_path, trace_path, threads);
  } catch (const bceaoi::ConfigError& e) {
    std::cerr << "simulate: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "simulate: " << e.what() << '\n';
    return 1;
  }
}
