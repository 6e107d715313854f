#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bceaoi/config.hpp"
#include "bceaoi/simulation.hpp"

namespace bceaoi {

// Replication k runs with seed master_seed + k. `threads` == 0 picks the
// hardware concurrency. Results are returned in replication order and do
// not depend on the thread count.
std::vector<RunSummary> run_replications(const SimConfig& cfg, unsigned threads = 0);

struct Sweep {
  std::string parameter;            // a key from config_keys()
  std::vector<std::string> values;  // textual values, validated on use
  SimConfig base;
};

// Parses `key=v1,v2,...`; throws ConfigError for unknown keys or values.
Sweep parse_sweep(std::string_view text, const SimConfig& base);

struct ResultRow {
  std::string swept_param;
  std::string value;  // "NA" for a plain run
  std::uint32_t rep_count = 0;
  std::optional<double> avg_aoi_mean;
  std::optional<double> avg_aoi_std;
  std::optional<double> comm_lat;
  std::optional<double> endorse_lat;
  std::optional<double> order_lat;
  std::optional<double> validate_lat;
  std::optional<double> mvcc_invalid_frac;
  std::optional<double> block_rate;
  std::optional<double> violation_prob;
};

// Aggregates replications into one row. The violation probability is the
// replication mean at `target`, when one is given.
ResultRow summarize(std::string swept_param, std::string value, std::span<const RunSummary> runs,
                    std::optional<double> target);

struct SweepPoint {
  std::string value;
  SimConfig config;
  std::vector<RunSummary> runs;
};

struct ExperimentResult {
  std::vector<SweepPoint> points;
  std::vector<ResultRow> rows;
};

ExperimentResult run_single(const SimConfig& cfg, unsigned threads = 0);
ExperimentResult run_sweep(const Sweep& sweep, unsigned threads = 0);

enum class Scenario { kFig2, kFig3, kFig4, kFig5, kFig6, kNodes };

// Throws ConfigError("scenario", ...) for unknown names.
Scenario parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario s);

// Applies the scenario's fixed parameters on top of `base`.
SimConfig scenario_base(Scenario s, const SimConfig& base);
// The preset sweep grid of a scenario (fig6 sweeps the target AoI).
std::vector<double> scenario_grid(Scenario s);

ExperimentResult run_scenario(Scenario s, const SimConfig& base, unsigned threads = 0);

inline constexpr std::string_view kCsvHeader =
    "swept_param,value,rep_count,avg_aoi_mean,avg_aoi_std,comm_lat,endorse_lat,order_lat,"
    "validate_lat,mvcc_invalid_frac,block_rate,violation_prob";

void write_csv(std::ostream& out, std::span<const ResultRow> rows);
void write_trace_csv(std::ostream& out, std::span<const Transaction> trace);

}  // namespace bceaoi
