#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bceaoi/errors.hpp"
#include "bceaoi/workload.hpp"

namespace bceaoi {
namespace {

SourceConfig periodic(double rate) {
  SourceConfig cfg;
  cfg.total_rate = rate;
  cfg.generation_mode = GenerationMode::kPeriodic;
  return cfg;
}

TEST(GenerationTest, PeriodicGapIsExactlyOneOverRate) {
  RngStream rng(1, streams::kGeneration);
  EXPECT_DOUBLE_EQ(next_generation_time(periodic(10.0), SimTime(0.0), rng).seconds(), 0.1);
  EXPECT_DOUBLE_EQ(next_generation_time(periodic(1.0), SimTime(5.0), rng).seconds(), 6.0);
}

TEST(GenerationTest, ExponentialMeanGap) {
  SourceConfig cfg = periodic(20.0);
  cfg.generation_mode = GenerationMode::kExponential;
  RngStream rng(3, streams::kGeneration);
  SimTime now;
  constexpr int kDraws = 1'000'000;
  for (int i = 0; i < kDraws; ++i) now = next_generation_time(cfg, now, rng);
  EXPECT_NEAR(now.seconds() / kDraws, 0.05, 0.05 * 0.01);
}

TEST(KeyAssignerTest, RatioExtremes) {
  RngStream rng(5, streams::kKeyAssignment);
  SourceConfig cfg;
  KeyAssigner keys;
  cfg.target_ratio = 1.0;
  for (int i = 0; i < 1000; ++i) ASSERT_TRUE(keys.assign_key(cfg, rng).is_target());
  cfg.target_ratio = 0.0;
  for (int i = 0; i < 1000; ++i) ASSERT_FALSE(keys.assign_key(cfg, rng).is_target());
}

TEST(KeyAssignerTest, TargetFrequencyMatchesRatio) {
  RngStream rng(6, streams::kKeyAssignment);
  SourceConfig cfg;
  cfg.target_ratio = 0.3;
  KeyAssigner keys;
  int hits = 0;
  constexpr int kDraws = 1'000'000;
  for (int i = 0; i < kDraws; ++i) hits += keys.assign_key(cfg, rng).is_target();
  EXPECT_NEAR(static_cast<double>(hits) / kDraws, 0.30, 0.005);
}

TEST(KeyAssignerTest, BackgroundKeysAreNeverReused) {
  RngStream rng(7, streams::kKeyAssignment);
  SourceConfig cfg;
  cfg.target_ratio = 0.5;
  KeyAssigner keys;
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    const Key k = keys.assign_key(cfg, rng);
    if (!k.is_target()) ASSERT_TRUE(seen.insert(k.id).second);
  }
}

TEST(TransmitTest, DeterministicDeliveryTime) {
  SourceConfig cfg;
  cfg.stp = 1.0;
  cfg.comm_latency = Distribution::fixed(0.05);
  cfg.transmit_time = 0.01;
  TransmitterQueue q;
  q.push(Proposal{0, SimTime(1.5), kTargetKey, 0});
  RngStream loss(1, streams::kChannelLoss), lat(1, streams::kCommLatency);
  const TransmitResult r = transmit(q, SimTime(2.0), cfg, loss, lat);
  ASSERT_TRUE(r.delivered());
  EXPECT_NEAR(r.arrival->seconds(), 2.06, 1e-12);
  EXPECT_DOUBLE_EQ(r.channel_free.seconds(), 2.01);
  EXPECT_TRUE(q.empty());
}

TEST(TransmitTest, ZeroStpLosesEverything) {
  SourceConfig cfg;
  cfg.stp = 0.0;
  cfg.transmit_time = 0.01;
  TransmitterQueue q;
  RngStream loss(1, streams::kChannelLoss), lat(1, streams::kCommLatency);
  for (TxId i = 0; i < 1000; ++i) {
    q.push(Proposal{i, SimTime(i * 0.1), Key{i + 1}, 0});
    const TransmitResult r = transmit(q, SimTime(i * 0.1), cfg, loss, lat);
    EXPECT_FALSE(r.delivered());
    EXPECT_DOUBLE_EQ(r.channel_free.seconds(), SimTime(i * 0.1).seconds() + 0.01);
  }
}

TEST(TransmitTest, DeliveredRateFollowsThinning) {
  SourceConfig cfg = periodic(20.0);
  cfg.stp = 0.5;
  TransmitterQueue q;
  RngStream gen(11, streams::kGeneration), loss(11, streams::kChannelLoss),
      lat(11, streams::kCommLatency);
  constexpr double kHorizon = 20000.0;
  std::uint64_t delivered = 0;
  SimTime now = next_generation_time(cfg, SimTime(), gen);
  for (TxId id = 0; now.seconds() < kHorizon; ++id) {
    q.push(Proposal{id, now, kTargetKey, 0});
    delivered += transmit(q, now, cfg, loss, lat).delivered();
    now = next_generation_time(cfg, now, gen);
  }
  EXPECT_NEAR(static_cast<double>(delivered) / kHorizon, 10.0, 10.0 * 0.02);
}

// Random queue states (arbitrary insertion order) against a sort oracle.
TEST(TransmitterQueueTest, DisciplinePopsExtremeGenerationTime) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> t(0.0, 100.0);
  for (Discipline d : {Discipline::kFcfs, Discipline::kLcfs}) {
    for (int trial = 0; trial < 200; ++trial) {
      TransmitterQueue q;
      std::vector<Proposal> oracle;
      const int n = 1 + static_cast<int>(rng() % 40);
      for (int i = 0; i < n; ++i) {
        Proposal p{static_cast<TxId>(i), SimTime(t(rng)), Key{static_cast<std::uint64_t>(i)}, 0};
        q.push(p);
        oracle.push_back(p);
      }
      while (!q.empty()) {
        const Proposal popped = q.pop(d);
        const auto extreme =
            d == Discipline::kFcfs
                ? std::min_element(oracle.begin(), oracle.end(),
                                   [](auto& a, auto& b) { return a.gen_time < b.gen_time; })
                : std::max_element(oracle.begin(), oracle.end(),
                                   [](auto& a, auto& b) { return a.gen_time < b.gen_time; });
        ASSERT_EQ(popped.gen_time, extreme->gen_time);
        oracle.erase(std::find_if(oracle.begin(), oracle.end(),
                                  [&](const Proposal& p) { return p.id == popped.id; }));
      }
    }
  }
}

TEST(TransmitterQueueTest, PopFromEmptyIsAFault) {
  TransmitterQueue q;
  EXPECT_THROW(q.pop(Discipline::kFcfs), SimulationFault);
}

TEST(SourceConfigTest, ValidationRejectsOutOfRange) {
  SourceConfig cfg;
  cfg.stp = 1.3;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = SourceConfig{};
  cfg.total_rate = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = SourceConfig{};
  cfg.target_ratio = -0.1;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

}  // namespace
}  // namespace bceaoi
