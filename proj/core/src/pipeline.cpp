#include "bceaoi/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "bceaoi/errors.hpp"
#include "bceaoi/metrics.hpp"

namespace bceaoi {

namespace {

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, what);
}

bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

const char* to_string(TxStatus status) noexcept {
  switch (status) {
    case TxStatus::kPending: return "pending";
    case TxStatus::kLost: return "lost";
    case TxStatus::kValid: return "valid";
    case TxStatus::kMvccInvalid: return "mvcc_invalid";
    case TxStatus::kVsccInvalid: return "vscc_invalid";
  }
  return "unknown";
}

void BlockchainParams::validate() const {
  require(block_size >= 1, "block_size", "must be >= 1");
  require(std::isfinite(timeout) && timeout > 0.0, "timeout", "must be > 0");
  require(n_endorsers >= 1, "n_endorsers", "must be >= 1");
  require(n_kafka >= 4, "n_kafka", "must be >= 4");
  require(n_channels >= 1, "n_channels", "must be >= 1");
}

void ServiceTimes::validate() const {
  require(non_negative(ordering_base), "ordering_base", "must be >= 0");
  require(non_negative(ordering_per_kafka), "ordering_per_kafka", "must be >= 0");
  require(non_negative(validate_block_overhead), "validate_block_overhead", "must be >= 0");
  require(non_negative(validate_per_tx), "validate_per_tx", "must be >= 0");
  require(vscc_failure_prob >= 0.0 && vscc_failure_prob <= 1.0, "vscc_failure_prob",
          "must be in [0, 1]");
}

double endorsement_latency(const BlockchainParams& params, const ServiceTimes& svc,
                           std::span<RngStream> peer_streams) {
  if (peer_streams.size() < params.n_endorsers) {
    throw SimulationFault("fewer endorser streams than endorsing peers");
  }
  double slowest = 0.0;
  for (std::uint32_t peer = 0; peer < params.n_endorsers; ++peer) {
    slowest = std::max(slowest, svc.endorse_per_peer.sample(peer_streams[peer]));
  }
  return slowest;
}

void endorse(Transaction& tx, const BlockchainParams& params, const ServiceTimes& svc,
             std::span<RngStream> peer_streams) {
  if (!tx.arrive_time || tx.status != TxStatus::kPending) {
    throw SimulationFault("endorse called on a transaction that has not arrived");
  }
  tx.endorse_done = *tx.arrive_time + endorsement_latency(params, svc, peer_streams);
}

void capture_version(Transaction& tx, const LedgerState& ledger) {
  tx.captured_version = ledger.read_version(tx.key);
}

BlockCutter::BlockCutter(ChannelId channel, std::uint32_t block_size, double timeout)
    : channel_(channel), block_size_(block_size), timeout_(timeout) {
  if (block_size_ == 0 || !(timeout_ > 0.0)) {
    throw ConfigError("block_size", "block cutter needs block_size >= 1 and timeout > 0");
  }
}

BlockCutter::SubmitOutcome BlockCutter::order_submit(Transaction tx, SimTime now) {
  batch_.push_back(std::move(tx));
  SubmitOutcome out;
  if (batch_.size() >= block_size_) {
    out.block = cut(now, false);
  } else if (batch_.size() == 1) {
    armed_ = Deadline{now + timeout_, next_epoch_++};
    out.armed = armed_;
  }
  return out;
}

std::optional<Block> BlockCutter::timeout_fire(std::uint64_t epoch, SimTime deadline) {
  if (!armed_ || armed_->epoch != epoch || batch_.empty()) return std::nullopt;
  return cut(deadline, true);
}

Block BlockCutter::cut(SimTime now, bool by_timeout) {
  Block block;
  block.seq = next_seq_++;
  block.channel = channel_;
  block.cut_time = now;
  block.cut_by_timeout = by_timeout;
  block.txs = std::move(batch_);
  batch_.clear();
  armed_.reset();
  for (Transaction& tx : block.txs) tx.block_seq = block.seq;
  return block;
}

SimTime finish_ordering(Block& block, const BlockchainParams& params, const ServiceTimes& svc) {
  const double extra_nodes = static_cast<double>(params.n_kafka) - 4.0;
  const SimTime ready =
      block.cut_time + (svc.ordering_base + svc.ordering_per_kafka * std::max(0.0, extra_nodes));
  for (Transaction& tx : block.txs) tx.order_done = ready;
  return ready;
}

double validation_duration(const Block& block, const ServiceTimes& svc) {
  return svc.validate_block_overhead +
         svc.validate_per_tx * static_cast<double>(block.txs.size());
}

ValidationCounts validate_block(Block& block, const LedgerState& ledger, const ServiceTimes& svc,
                                RngStream& vscc_rng) {
  ValidationCounts counts;
  // Versions written by earlier transactions of this block.
  std::unordered_map<std::uint64_t, std::uint64_t> overlay;
  for (Transaction& tx : block.txs) {
    // Always draw, so VSCC outcomes line up across failure probabilities.
    const bool vscc_fails = vscc_rng.bernoulli(svc.vscc_failure_prob);
    if (vscc_fails) {
      tx.status = TxStatus::kVsccInvalid;
      ++counts.vscc_invalid;
      continue;
    }
    const auto it = overlay.find(tx.key.id);
    const std::uint64_t current = it != overlay.end() ? it->second : ledger.read_version(tx.key);
    if (tx.captured_version != current) {
      tx.status = TxStatus::kMvccInvalid;
      ++counts.mvcc_invalid;
      continue;
    }
    tx.status = TxStatus::kValid;
    overlay[tx.key.id] = current + 1;
    ++counts.valid;
  }
  return counts;
}

void commit_block(Block& block, LedgerState& ledger, SimTime completion, AoISamplePath* aoi) {
  for (Transaction& tx : block.txs) {
    tx.commit_time = completion;
    if (tx.status != TxStatus::kValid) continue;
    const std::uint64_t version = ledger.apply_update(tx.key, tx.gen_time);
    if (version != tx.captured_version + 1) {
      throw SimulationFault("committed version does not follow the captured version");
    }
    if (aoi && tx.key.is_target()) aoi->record_commit(completion, tx.gen_time);
  }
}

std::optional<SimTime> Validator::try_start(SimTime now, const LedgerState& ledger,
                                            const ServiceTimes& svc, RngStream& vscc_rng) {
  if (in_service_ || queue_.empty()) return std::nullopt;
  in_service_ = std::move(queue_.front());
  queue_.pop_front();
  validate_block(*in_service_, ledger, svc, vscc_rng);
  return now + validation_duration(*in_service_, svc);
}

Block Validator::finish() {
  if (!in_service_) throw SimulationFault("validator finished with no block in service");
  Block block = std::move(*in_service_);
  in_service_.reset();
  return block;
}

}  // namespace bceaoi
