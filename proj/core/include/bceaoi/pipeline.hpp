#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "bceaoi/distribution.hpp"
#include "bceaoi/ledger.hpp"
#include "bceaoi/rng.hpp"
#include "bceaoi/sim_time.hpp"
#include "bceaoi/types.hpp"

namespace bceaoi {

class AoISamplePath;

enum class TxStatus : std::uint8_t { kPending, kLost, kValid, kMvccInvalid, kVsccInvalid };

const char* to_string(TxStatus status) noexcept;

// Lifecycle record of one update. Phase marks are only meaningful once the
// transaction reached the corresponding phase.
struct Transaction {
  TxId id = 0;
  Key key;
  ChannelId channel = 0;
  SimTime gen_time;
  std::optional<SimTime> arrive_time;
  std::optional<SimTime> endorse_done;
  std::optional<SimTime> order_done;
  std::optional<SimTime> commit_time;
  std::uint64_t captured_version = 0;
  std::optional<std::uint64_t> block_seq;
  TxStatus status = TxStatus::kPending;
};

struct BlockchainParams {
  std::uint32_t block_size = 10;
  double timeout = 1.0;  // block-generation timeout, seconds
  std::uint32_t n_endorsers = 1;
  std::uint32_t n_kafka = 4;  // four is the smallest crash-tolerant cluster
  std::uint32_t n_channels = 1;

  void validate() const;
  friend bool operator==(const BlockchainParams&, const BlockchainParams&) = default;
};

// Phase service-time model. Ordering is an affine delay per block; the
// validator is a single serial server per channel whose cost has a fixed
// per-block part and a per-transaction part.
struct ServiceTimes {
  Distribution endorse_per_peer = Distribution::exponential(0.02);
  double ordering_base = 0.05;
  double ordering_per_kafka = 0.06;  // per Kafka node beyond four
  double validate_block_overhead = 0.08;
  double validate_per_tx = 0.04;
  double vscc_failure_prob = 0.0;

  void validate() const;
  friend bool operator==(const ServiceTimes&, const ServiceTimes&) = default;
};

struct Block {
  std::uint64_t seq = 0;
  ChannelId channel = 0;
  SimTime cut_time;
  bool cut_by_timeout = false;
  std::vector<Transaction> txs;
};

// Endorsement latency: the client waits for the slowest of the required
// peers, one independent draw per peer stream.
double endorsement_latency(const BlockchainParams& params, const ServiceTimes& svc,
                           std::span<RngStream> peer_streams);

// Sets endorse_done from arrive_time. The read set is captured separately,
// with capture_version, once the clock reaches endorse_done.
void endorse(Transaction& tx, const BlockchainParams& params, const ServiceTimes& svc,
             std::span<RngStream> peer_streams);
void capture_version(Transaction& tx, const LedgerState& ledger);

// Per-channel batching of endorsed transactions into blocks. A batch is cut
// when it reaches the block size, or when the timeout armed by its first
// transaction expires.
class BlockCutter {
 public:
  struct Deadline {
    SimTime at;
    std::uint64_t epoch = 0;
  };
  struct SubmitOutcome {
    std::optional<Block> block;      // cut by size
    std::optional<Deadline> armed;   // schedule a timeout fire for this
  };

  BlockCutter(ChannelId channel, std::uint32_t block_size, double timeout);

  SubmitOutcome order_submit(Transaction tx, SimTime now);
  // Returns nullopt for stale deadlines (batch already cut by size).
  std::optional<Block> timeout_fire(std::uint64_t epoch, SimTime deadline);

  std::size_t pending() const noexcept { return batch_.size(); }
  std::uint64_t blocks_cut() const noexcept { return next_seq_; }
  std::optional<Deadline> armed() const noexcept { return armed_; }

 private:
  Block cut(SimTime now, bool by_timeout);

  ChannelId channel_;
  std::uint32_t block_size_;
  double timeout_;
  std::vector<Transaction> batch_;
  std::optional<Deadline> armed_;
  std::uint64_t next_epoch_ = 0;
  std::uint64_t next_seq_ = 0;
};

// Sets order_done on every transaction and returns the time the block is
// handed to the committing peers.
SimTime finish_ordering(Block& block, const BlockchainParams& params, const ServiceTimes& svc);

double validation_duration(const Block& block, const ServiceTimes& svc);

struct ValidationCounts {
  std::uint32_t valid = 0;
  std::uint32_t mvcc_invalid = 0;
  std::uint32_t vscc_invalid = 0;
};

// Checks transactions in block order: VSCC first, then MVCC against the
// ledger as already modified by earlier valid transactions of the same
// block. The ledger itself is left untouched.
ValidationCounts validate_block(Block& block, const LedgerState& ledger, const ServiceTimes& svc,
                                RngStream& vscc_rng);

// Applies every valid update, stamps commit_time and reports target-key
// commits to `aoi` when given.
void commit_block(Block& block, LedgerState& ledger, SimTime completion, AoISamplePath* aoi);

// Single serial validator with a FIFO of ready blocks.
class Validator {
 public:
  void enqueue(Block block) { queue_.push_back(std::move(block)); }

  // Starts the head block if idle. Returns its completion time, or nullopt
  // when busy or nothing is waiting. Validity is decided at service start;
  // nothing else writes this channel's ledger until the block completes.
  std::optional<SimTime> try_start(SimTime now, const LedgerState& ledger,
                                   const ServiceTimes& svc, RngStream& vscc_rng);
  // Hands back the block in service and frees the validator.
  Block finish();

  bool busy() const noexcept { return in_service_.has_value(); }
  std::size_t waiting() const noexcept { return queue_.size(); }

 private:
  std::deque<Block> queue_;
  std::optional<Block> in_service_;
};

}  // namespace bceaoi
