#include "bceaoi/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "bceaoi/errors.hpp"
#include "numeric_text.hpp"

namespace bceaoi {

std::vector<RunSummary> run_replications(const SimConfig& cfg, unsigned threads) {
  cfg.validate();
  const std::size_t reps = cfg.replications;
  std::vector<RunSummary> out(reps);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < reps; k = next++) {
      try {
        out[k] = simulate(cfg, cfg.master_seed + k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Sweep parse_sweep(std::string_view text, const SimConfig& base) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("sweep", "expected '<key>=<v1,v2,...>', got '" + std::string(text) + "'");
  }
  Sweep sweep;
  sweep.parameter = std::string(detail::trim(text.substr(0, eq)));
  sweep.base = base;
  std::string_view rest = text.substr(eq + 1);
  while (true) {
    const auto comma = rest.find(',');
    const auto item = detail::trim(rest.substr(0, comma));
    if (item.empty()) throw ConfigError(sweep.parameter, "empty value in sweep list");
    sweep.values.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  // Validate every value up front so a bad entry fails before any run.
  for (const std::string& v : sweep.values) {
    SimConfig probe = base;
    apply_setting(probe, sweep.parameter, v);
    probe.validate();
  }
  return sweep;
}

namespace {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(const std::optional<double>& v) {
    if (!v) return;
    sum += *v;
    sum_sq += *v * *v;
    ++n;
  }
  std::optional<double> mean() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
  std::optional<double> stddev() const {
    if (n == 0) return std::nullopt;
    if (n == 1) return 0.0;
    const double m = sum / static_cast<double>(n);
    const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(0.0, var));
  }
};

}  // namespace

ResultRow summarize(std::string swept_param, std::string value, std::span<const RunSummary> runs,
                    std::optional<double> target) {
  Accumulator aoi, comm, endorse, order, validate, mvcc, blocks, violation;
  for (const RunSummary& r : runs) {
    aoi.add(average_aoi(r.aoi));
    comm.add(r.latency.communication);
    endorse.add(r.latency.endorsing);
    order.add(r.latency.ordering);
    validate.add(r.latency.validation);
    mvcc.add(r.mvcc_invalid_frac);
    blocks.add(r.block_rate);
    if (target) violation.add(violation_probability(r.aoi, *target));
  }
  ResultRow row;
  row.swept_param = std::move(swept_param);
  row.value = std::move(value);
  row.rep_count = static_cast<std::uint32_t>(runs.size());
  row.avg_aoi_mean = aoi.mean();
  row.avg_aoi_std = aoi.stddev();
  row.comm_lat = comm.mean();
  row.endorse_lat = endorse.mean();
  row.order_lat = order.mean();
  row.validate_lat = validate.mean();
  row.mvcc_invalid_frac = mvcc.mean();
  row.block_rate = blocks.mean();
  row.violation_prob = violation.mean();
  return row;
}

ExperimentResult run_single(const SimConfig& cfg, unsigned threads) {
  ExperimentResult result;
  SweepPoint point{"NA", cfg, run_replications(cfg, threads)};
  result.rows.push_back(summarize("none", "NA", point.runs, cfg.target_aoi));
  result.points.push_back(std::move(point));
  return result;
}

ExperimentResult run_sweep(const Sweep& sweep, unsigned threads) {
  ExperimentResult result;
  for (const std::string& value : sweep.values) {
    SimConfig cfg = sweep.base;
    apply_setting(cfg, sweep.parameter, value);
    cfg.validate();
    SweepPoint point{value, cfg, run_replications(cfg, threads)};
    result.rows.push_back(summarize(sweep.parameter, value, point.runs, cfg.target_aoi));
    result.points.push_back(std::move(point));
  }
  return result;
}

Scenario parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::kFig2, Scenario::kFig3, Scenario::kFig4, Scenario::kFig5,
                     Scenario::kFig6, Scenario::kNodes}) {
    if (scenario_name(s) == name) return s;
  }
  throw ConfigError("scenario", "unknown scenario '" + std::string(name) +
                                    "' (expected fig2, fig3, fig4, fig5, fig6 or nodes)");
}

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kFig2: return "fig2";
    case Scenario::kFig3: return "fig3";
    case Scenario::kFig4: return "fig4";
    case Scenario::kFig5: return "fig5";
    case Scenario::kFig6: return "fig6";
    case Scenario::kNodes: return "nodes";
  }
  return "unknown";
}

SimConfig scenario_base(Scenario s, const SimConfig& base) {
  SimConfig cfg = base;
  switch (s) {
    case Scenario::kFig2:
      cfg.source.total_rate = 10.0;
      cfg.source.target_ratio = 0.3;
      cfg.chain.timeout = 2.0;
      break;
    case Scenario::kFig3:
      cfg.source.total_rate = 10.0;
      cfg.source.target_ratio = 0.3;
      cfg.chain.block_size = 10;
      break;
    case Scenario::kFig4:
      cfg.source.total_rate = 10.0;
      cfg.chain.block_size = 10;
      cfg.chain.timeout = 1.0;
      break;
    case Scenario::kFig5:
      // Sources share a lossy wireless channel; packets are generated at
      // random and occupy the channel before crossing the link.
      cfg.source.total_rate = 20.0;
      cfg.source.target_ratio = 0.3;
      cfg.source.generation_mode = GenerationMode::kExponential;
      cfg.source.transmit_time = 0.02;
      cfg.source.comm_latency = Distribution::exponential(0.05);
      cfg.chain.block_size = 10;
      cfg.chain.timeout = 1.0;
      break;
    case Scenario::kFig6:
      cfg.source.total_rate = 10.0;
      cfg.source.target_ratio = 0.3;
      cfg.chain.block_size = 10;
      cfg.chain.timeout = 1.0;
      break;
    case Scenario::kNodes:
      cfg.source.total_rate = 10.0;
      cfg.source.target_ratio = 0.3;
      cfg.chain.block_size = 10;
      cfg.chain.timeout = 1.0;
      break;
  }
  return cfg;
}

std::vector<double> scenario_grid(Scenario s) {
  switch (s) {
    case Scenario::kFig2: {
      std::vector<double> g;
      for (int b = 1; b <= 20; ++b) g.push_back(b);
      return g;
    }
    case Scenario::kFig3:
      return {0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0};
    case Scenario::kFig4: {
      std::vector<double> g;
      for (int i = 1; i <= 19; ++i) g.push_back(i * 0.05);
      return g;
    }
    case Scenario::kFig5: {
      std::vector<double> g;
      for (int i = 1; i <= 10; ++i) g.push_back(i * 0.1);
      return g;
    }
    case Scenario::kFig6: {
      std::vector<double> g;
      for (int i = 0; i <= 10; ++i) g.push_back(0.5 + i * 0.25);
      return g;
    }
    case Scenario::kNodes:
      return {};
  }
  return {};
}

namespace {

std::string grid_value(double v) {
  // Grid values come from i * step; round away binary noise before printing.
  return detail::format_number(std::round(v * 1e9) / 1e9);
}

Sweep grid_sweep(std::string parameter, const std::vector<double>& grid, const SimConfig& base) {
  Sweep sweep;
  sweep.parameter = std::move(parameter);
  sweep.base = base;
  for (double v : grid) sweep.values.push_back(grid_value(v));
  return sweep;
}

void append(ExperimentResult& into, ExperimentResult&& from) {
  for (auto& p : from.points) into.points.push_back(std::move(p));
  for (auto& r : from.rows) into.rows.push_back(std::move(r));
}

}  // namespace

ExperimentResult run_scenario(Scenario s, const SimConfig& base, unsigned threads) {
  const SimConfig cfg = scenario_base(s, base);
  switch (s) {
    case Scenario::kFig2: return run_sweep(grid_sweep("block_size", scenario_grid(s), cfg), threads);
    case Scenario::kFig3: return run_sweep(grid_sweep("timeout", scenario_grid(s), cfg), threads);
    case Scenario::kFig4:
      return run_sweep(grid_sweep("target_ratio", scenario_grid(s), cfg), threads);
    case Scenario::kFig5: return run_sweep(grid_sweep("stp", scenario_grid(s), cfg), threads);
    case Scenario::kFig6: {
      ExperimentResult result;
      const std::vector<RunSummary> runs = run_replications(cfg, threads);
      for (double target : scenario_grid(s)) {
        const std::string value = grid_value(target);
        SimConfig point_cfg = cfg;
        point_cfg.target_aoi = target;
        result.rows.push_back(summarize("target_aoi", value, runs, target));
        result.points.push_back(SweepPoint{value, point_cfg, runs});
      }
      return result;
    }
    case Scenario::kNodes: {
      ExperimentResult result;
      SimConfig endorsers = cfg;
      endorsers.chain.n_kafka = 4;
      append(result, run_sweep(grid_sweep("n_endorsers", {1, 2, 3}, endorsers), threads));
      SimConfig kafka = cfg;
      kafka.chain.n_endorsers = 3;
      append(result, run_sweep(grid_sweep("n_kafka", {4, 5}, kafka), threads));
      return result;
    }
  }
  throw ConfigError("scenario", "unhandled scenario");
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
  using detail::format_optional;
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.swept_param << ',' << r.value << ',' << r.rep_count << ','
        << format_optional(r.avg_aoi_mean) << ',' << format_optional(r.avg_aoi_std) << ','
        << format_optional(r.comm_lat) << ',' << format_optional(r.endorse_lat) << ','
        << format_optional(r.order_lat) << ',' << format_optional(r.validate_lat) << ','
        << format_optional(r.mvcc_invalid_frac) << ',' << format_optional(r.block_rate) << ','
        << format_optional(r.violation_prob) << '\n';
  }
}

void write_trace_csv(std::ostream& out, std::span<const Transaction> trace) {
  using detail::format_number;
  auto time = [](const std::optional<SimTime>& t) {
    return t ? format_number(t->seconds()) : std::string("NA");
  };
  out << "tx_id,channel,key,gen_time,arrive_time,endorse_done,order_done,commit_time,"
         "captured_version,status,block_seq\n";
  for (const Transaction& tx : trace) {
    out << tx.id << ',' << tx.channel << ',' << tx.key.id << ','
        << format_number(tx.gen_time.seconds()) << ',' << time(tx.arrive_time) << ','
        << time(tx.endorse_done) << ',' << time(tx.order_done) << ',' << time(tx.commit_time)
        << ',';
    if (tx.endorse_done) out << tx.captured_version; else out << "NA";
    out << ',' << to_string(tx.status) << ',';
    if (tx.block_seq) out << *tx.block_seq; else out << "NA";
    out << '\n';
  }
}

}  // namespace bceaoi
