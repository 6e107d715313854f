#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bceaoi/config.hpp"
#include "bceaoi/ledger.hpp"
#include "bceaoi/metrics.hpp"
#include "bceaoi/pipeline.hpp"

namespace bceaoi {

// A proposal that made it through the wireless channel.
struct Delivery {
  TxId id = 0;
  SimTime gen_time;
  Key key;
  ChannelId channel = 0;
  SimTime arrival;
};

struct BlockRecord {
  std::uint64_t seq = 0;
  ChannelId channel = 0;
  std::uint32_t size = 0;
  bool cut_by_timeout = false;
  SimTime first_submit;  // ordering arrival of the block's first transaction
  SimTime cut_time;
  SimTime ready_time;
  SimTime validation_start;
  SimTime completion;
};

struct RunOptions {
  // Keep per-transaction records, block records and final ledgers.
  bool keep_trace = false;
};

struct RunSummary {
  std::uint64_t seed = 0;
  AoISamplePath aoi;
  LatencyBreakdown latency;
  std::uint64_t delivered = 0;
  std::uint64_t blocks_cut = 0;
  std::uint64_t blocks_committed = 0;
  std::uint64_t events_dispatched = 0;
  // Rates over the measurement window [warmup, horizon].
  double delivered_rate = 0.0;  // delivered proposals generated in the window
  double block_rate = 0.0;      // blocks cut by the ordering service
  std::optional<double> mvcc_invalid_frac;  // over transactions that reached validation

  std::vector<Transaction> trace;  // indexed by generation order
  std::vector<BlockRecord> blocks;
  std::vector<LedgerState> ledgers;  // one per channel
};

// One replication driven by the configured sources. Generation stops at the
// horizon; in-flight work is drained so every proposal has a final status.
RunSummary simulate(const SimConfig& cfg, std::uint64_t seed, RunOptions options = {});

// Drives only the blockchain network from an explicit arrival list,
// bypassing sources and the wireless channel.
RunSummary replay(const SimConfig& cfg, std::uint64_t seed, std::span<const Delivery> arrivals,
                  RunOptions options = {});

// Deliveries of a traced run restricted to `channel`, in arrival order.
std::vector<Delivery> deliveries_of(std::span<const Transaction> trace, ChannelId channel);

}  // namespace bceaoi
