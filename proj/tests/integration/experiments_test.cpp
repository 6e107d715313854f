#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "bceaoi/config.hpp"
#include "bceaoi/experiments.hpp"

namespace bceaoi {
namespace {

SimConfig quick() {
  SimConfig cfg = paper_default();
  cfg.horizon = 200.0;
  cfg.warmup = 20.0;
  cfg.replications = 2;
  return cfg;
}

std::string csv(const ExperimentResult& r) {
  std::ostringstream out;
  write_csv(out, r.rows);
  return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

TEST(CsvTest, HeaderIsExact) {
  const std::string text = csv(run_single(quick(), 1));
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "swept_param,value,rep_count,avg_aoi_mean,avg_aoi_std,comm_lat,endorse_lat,"
            "order_lat,validate_lat,mvcc_invalid_frac,block_rate,violation_prob");
}

TEST(CsvTest, EveryNumberIsFiniteOrNA) {
  SimConfig cfg = quick();
  cfg.source.target_ratio = 0.0;  // no target commits: AoI columns become NA
  for (const ExperimentResult& result :
       {run_single(cfg, 1), run_scenario(Scenario::kFig6, quick(), 1)}) {
    std::istringstream in(csv(result));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto fields = split(line, ',');
      ASSERT_EQ(fields.size(), 12u) << line;
      for (std::size_t i = 2; i < fields.size(); ++i) {
        if (fields[i] == "NA") continue;
        std::size_t used = 0;
        const double v = std::stod(fields[i], &used);
        EXPECT_EQ(used, fields[i].size()) << fields[i];
        EXPECT_TRUE(std::isfinite(v)) << fields[i];
      }
    }
  }
  const ResultRow row = run_single(cfg, 1).rows.front();
  EXPECT_FALSE(row.avg_aoi_mean.has_value());
  EXPECT_FALSE(row.violation_prob.has_value());
  EXPECT_EQ(row.value, "NA");
}

TEST(ScenarioRunTest, Fig2HasTwentyRows) {
  SimConfig cfg = quick();
  cfg.replications = 1;
  const std::string text = csv(run_scenario(Scenario::kFig2, cfg, 1));
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, 21u);
}

TEST(ScenarioRunTest, NodesScenarioRows) {
  SimConfig cfg = quick();
  cfg.replications = 1;
  const auto result = run_scenario(Scenario::kNodes, cfg, 1);
  ASSERT_EQ(result.rows.size(), 5u);
  EXPECT_EQ(result.rows[0].swept_param, "n_endorsers");
  EXPECT_EQ(result.points[2].config.chain.n_endorsers, 3u);
  EXPECT_EQ(result.points[2].config.chain.n_kafka, 4u);
  EXPECT_EQ(result.rows[4].swept_param, "n_kafka");
  EXPECT_EQ(result.points[4].config.chain.n_kafka, 5u);
  EXPECT_EQ(result.points[4].config.chain.n_endorsers, 3u);
}

TEST(ScenarioRunTest, Fig6ViolationIsNonIncreasingDownTheSweep) {
  const auto result = run_scenario(Scenario::kFig6, quick(), 1);
  ASSERT_EQ(result.rows.size(), scenario_grid(Scenario::kFig6).size());
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    EXPECT_LE(*result.rows[i].violation_prob, *result.rows[i - 1].violation_prob);
  }
}

TEST(DeterminismTest, SameSeedSameBytesRegardlessOfThreads) {
  const SimConfig cfg = quick();
  const std::string a = csv(run_scenario(Scenario::kFig4, cfg, 1));
  const std::string b = csv(run_scenario(Scenario::kFig4, cfg, 3));
  EXPECT_EQ(a, b);
  SimConfig other = cfg;
  other.master_seed = 2;
  EXPECT_NE(a, csv(run_scenario(Scenario::kFig4, other, 1)));
}

TEST(AggregationTest, ThirtyReplicationsFeedOneRow) {
  SimConfig cfg = quick();
  cfg.horizon = 100.0;
  cfg.replications = 30;
  const auto result = run_single(cfg, 2);
  ASSERT_EQ(result.points.front().runs.size(), 30u);
  const ResultRow& row = result.rows.front();
  EXPECT_EQ(row.rep_count, 30u);
  double sum = 0.0;
  for (const RunSummary& r : result.points.front().runs) sum += *average_aoi(r.aoi);
  EXPECT_NEAR(*row.avg_aoi_mean, sum / 30.0, 1e-12);
  EXPECT_GE(*row.avg_aoi_std, 0.0);
}

TEST(AggregationTest, SingleReplicationHasZeroSpread) {
  SimConfig cfg = quick();
  cfg.replications = 1;
  EXPECT_EQ(*run_single(cfg, 1).rows.front().avg_aoi_std, 0.0);
}

TEST(SweepTest, RowsFollowTheValueList) {
  const Sweep sweep = parse_sweep("discipline=fcfs,lcfs", quick());
  const auto result = run_sweep(sweep, 1);
  ASSERT_EQ(result.rows.size(), 2u);
  EXPECT_EQ(result.rows[1].swept_param, "discipline");
  EXPECT_EQ(result.rows[1].value, "lcfs");
  EXPECT_EQ(result.points[1].config.source.discipline, Discipline::kLcfs);
}

TEST(TraceCsvTest, HeaderAndRowCount) {
  SimConfig cfg = quick();
  const RunSummary r = simulate(cfg, 1, RunOptions{.keep_trace = true});
  std::ostringstream out;
  write_trace_csv(out, r.trace);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "tx_id,channel,key,gen_time,arrive_time,endorse_done,order_done,commit_time,"
            "captured_version,status,block_seq");
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, r.trace.size() + 1);
}

}  // namespace
}  // namespace bceaoi
