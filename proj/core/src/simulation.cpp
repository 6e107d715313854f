#include "bceaoi/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "bceaoi/errors.hpp"
#include "bceaoi/event_queue.hpp"
#include "bceaoi/rng.hpp"
#include "bceaoi/workload.hpp"

namespace bceaoi {

namespace {

struct ChannelState {
  ChannelState(ChannelId id, const SimConfig& cfg, std::uint64_t seed)
      : ledger(id),
        cutter(id, cfg.chain.block_size, cfg.chain.timeout),
        vscc_rng(seed, streams::vscc(id)) {
    endorse_rngs.reserve(cfg.chain.n_endorsers);
    for (std::uint32_t peer = 0; peer < cfg.chain.n_endorsers; ++peer) {
      endorse_rngs.emplace_back(seed, streams::endorse(id, peer));
    }
  }

  LedgerState ledger;
  BlockCutter cutter;
  Validator validator;
  std::vector<RngStream> endorse_rngs;
  RngStream vscc_rng;
  std::deque<Block> in_ordering;  // cut, not yet handed to the validator
  std::unordered_map<std::uint64_t, std::size_t> block_index;  // seq -> blocks_ slot
};

class Engine {
 public:
  Engine(const SimConfig& cfg, std::uint64_t seed, RunOptions options)
      : cfg_(cfg),
        seed_(seed),
        options_(options),
        gen_rng_(seed, streams::kGeneration),
        key_rng_(seed, streams::kKeyAssignment),
        loss_rng_(seed, streams::kChannelLoss),
        latency_rng_(seed, streams::kCommLatency),
        split_rng_(seed, streams::kChannelSplit),
        horizon_(cfg.horizon),
        warmup_(cfg.warmup),
        aoi_(warmup_, horizon_) {
    cfg_.validate();
    channels_.reserve(cfg.chain.n_channels);
    for (ChannelId ch = 0; ch < cfg.chain.n_channels; ++ch) channels_.emplace_back(ch, cfg, seed);
  }

  RunSummary run_sources() {
    const SimTime first = next_generation_time(cfg_.source, SimTime(), gen_rng_);
    if (first < horizon_) events_.schedule(first, EventKind::kGeneration);
    loop();
    return summarize();
  }

  RunSummary run_replay(std::span<const Delivery> arrivals) {
    replaying_ = true;
    txs_.reserve(arrivals.size());
    for (const Delivery& d : arrivals) {
      if (d.channel >= channels_.size()) throw ConfigError("n_channels", "delivery for unknown channel");
      Transaction tx;
      tx.id = d.id;
      tx.key = d.key;
      tx.channel = d.channel;
      tx.gen_time = d.gen_time;
      tx.arrive_time = d.arrival;
      slot_of_[d.id] = txs_.size();
      events_.schedule(d.arrival, EventKind::kArrival, txs_.size(), d.channel);
      txs_.push_back(tx);
    }
    loop();
    return summarize();
  }

 private:
  void loop() {
    while (auto ev = events_.next_event()) {
      switch (ev->kind) {
        case EventKind::kGeneration: on_generation(ev->time); break;
        case EventKind::kTransmissionComplete: on_transmission_complete(ev->time); break;
        case EventKind::kArrival: on_arrival(ev->subject); break;
        case EventKind::kEndorsementComplete: on_endorsed(ev->time, ev->subject); break;
        case EventKind::kTimeoutFire: on_timeout(ev->time, ev->subject, ev->channel); break;
        case EventKind::kBlockReady: on_block_ready(ev->time, ev->subject, ev->channel); break;
        case EventKind::kValidationComplete: on_validated(ev->time, ev->channel); break;
      }
    }
  }

  void on_generation(SimTime now) {
    Transaction tx;
    tx.id = txs_.size();
    tx.gen_time = now;
    tx.key = keys_.assign_key(cfg_.source, key_rng_);
    const double split = split_rng_.uniform();
    if (!tx.key.is_target() && channels_.size() > 1) {
      tx.channel = std::min(static_cast<ChannelId>(split * static_cast<double>(channels_.size())),
                            static_cast<ChannelId>(channels_.size() - 1));
    }
    txs_.push_back(tx);
    transmitter_.push(Proposal{tx.id, tx.gen_time, tx.key, tx.channel});
    if (!channel_busy_) start_transmission(now);

    const SimTime next = next_generation_time(cfg_.source, now, gen_rng_);
    if (next < horizon_) events_.schedule(next, EventKind::kGeneration);
  }

  void start_transmission(SimTime now) {
    const TransmitResult r = transmit(transmitter_, now, cfg_.source, loss_rng_, latency_rng_);
    channel_busy_ = true;
    events_.schedule(r.channel_free, EventKind::kTransmissionComplete);
    Transaction& tx = txs_[r.proposal.id];
    if (r.delivered()) {
      tx.arrive_time = *r.arrival;
      ++delivered_;
      events_.schedule(*r.arrival, EventKind::kArrival, tx.id, tx.channel);
    } else {
      tx.status = TxStatus::kLost;
    }
  }

  void on_transmission_complete(SimTime now) {
    channel_busy_ = false;
    if (!transmitter_.empty()) start_transmission(now);
  }

  void on_arrival(std::uint64_t slot) {
    Transaction& tx = txs_[slot];
    ChannelState& ch = channels_[tx.channel];
    endorse(tx, cfg_.chain, cfg_.service, ch.endorse_rngs);
    events_.schedule(*tx.endorse_done, EventKind::kEndorsementComplete, slot, tx.channel);
  }

  void on_endorsed(SimTime now, std::uint64_t slot) {
    Transaction& tx = txs_[slot];
    ChannelState& ch = channels_[tx.channel];
    capture_version(tx, ch.ledger);
    auto outcome = ch.cutter.order_submit(tx, now);
    if (outcome.armed) {
      events_.schedule(outcome.armed->at, EventKind::kTimeoutFire, outcome.armed->epoch,
                       tx.channel);
    }
    if (outcome.block) dispatch_block(std::move(*outcome.block));
  }

  void on_timeout(SimTime now, std::uint64_t epoch, ChannelId channel) {
    if (auto block = channels_[channel].cutter.timeout_fire(epoch, now)) {
      dispatch_block(std::move(*block));
    }
  }

  void dispatch_block(Block block) {
    ChannelState& ch = channels_[block.channel];
    const SimTime ready = finish_ordering(block, cfg_.chain, cfg_.service);
    ++blocks_cut_;
    if (block.cut_time >= warmup_ && block.cut_time <= horizon_) ++blocks_cut_in_window_;
    if (options_.keep_trace) {
      ch.block_index[block.seq] = blocks_.size();
      blocks_.push_back(BlockRecord{block.seq, block.channel,
                                    static_cast<std::uint32_t>(block.txs.size()),
                                    block.cut_by_timeout, *block.txs.front().endorse_done,
                                    block.cut_time, ready, ready, ready});
    }
    for (const Transaction& tx : block.txs) write_back(tx);
    events_.schedule(ready, EventKind::kBlockReady, block.seq, block.channel);
    ch.in_ordering.push_back(std::move(block));
  }

  void on_block_ready(SimTime now, std::uint64_t seq, ChannelId channel) {
    ChannelState& ch = channels_[channel];
    if (ch.in_ordering.empty() || ch.in_ordering.front().seq != seq) {
      throw SimulationFault("ordering service released blocks out of cut order");
    }
    ch.validator.enqueue(std::move(ch.in_ordering.front()));
    ch.in_ordering.pop_front();
    start_validation(now, channel);
  }

  void start_validation(SimTime now, ChannelId channel) {
    ChannelState& ch = channels_[channel];
    const auto completion = ch.validator.try_start(now, ch.ledger, cfg_.service, ch.vscc_rng);
    if (!completion) return;
    events_.schedule(*completion, EventKind::kValidationComplete, 0, channel);
    validation_start_[channel] = now;
  }

  void on_validated(SimTime now, ChannelId channel) {
    ChannelState& ch = channels_[channel];
    Block block = ch.validator.finish();
    commit_block(block, ch.ledger, now, channel == 0 ? &aoi_ : nullptr);
    ++blocks_committed_;
    if (options_.keep_trace) {
      BlockRecord& rec = blocks_[ch.block_index.at(block.seq)];
      rec.validation_start = validation_start_.at(channel);
      rec.completion = now;
    }
    for (const Transaction& tx : block.txs) write_back(tx);
    start_validation(now, channel);
  }

  void write_back(const Transaction& tx) {
    const std::size_t slot = replaying_ ? slot_of_.at(tx.id) : tx.id;
    txs_[slot] = tx;
  }

  RunSummary summarize() {
    RunSummary out;
    out.seed = seed_;
    out.latency = latency_breakdown(txs_, warmup_, horizon_);
    out.delivered = replaying_ ? txs_.size() : delivered_;
    out.blocks_cut = blocks_cut_;
    out.blocks_committed = blocks_committed_;
    out.events_dispatched = events_.dispatched();

    const double window = horizon_ - warmup_;
    std::uint64_t delivered_in_window = 0;
    for (const Transaction& tx : txs_) {
      if (tx.arrive_time && tx.gen_time >= warmup_ && tx.gen_time < horizon_) ++delivered_in_window;
    }
    out.delivered_rate = static_cast<double>(delivered_in_window) / window;
    out.block_rate = static_cast<double>(blocks_cut_in_window_) / window;
    const OutcomeCounts& c = out.latency.counts;
    const std::uint64_t checked = c.valid + c.mvcc_invalid + c.vscc_invalid;
    if (checked > 0) {
      out.mvcc_invalid_frac = static_cast<double>(c.mvcc_invalid) / static_cast<double>(checked);
    }
    if (c.pending != 0) throw SimulationFault("run finished with unresolved transactions");

    out.aoi = std::move(aoi_);
    if (options_.keep_trace) {
      out.trace = std::move(txs_);
      out.blocks = std::move(blocks_);
      for (ChannelState& ch : channels_) out.ledgers.push_back(std::move(ch.ledger));
    }
    return out;
  }

  const SimConfig& cfg_;
  std::uint64_t seed_;
  RunOptions options_;

  EventQueue events_;
  RngStream gen_rng_;
  RngStream key_rng_;
  RngStream loss_rng_;
  RngStream latency_rng_;
  RngStream split_rng_;
  KeyAssigner keys_;
  TransmitterQueue transmitter_;
  bool channel_busy_ = false;

  std::vector<ChannelState> channels_;
  std::unordered_map<ChannelId, SimTime> validation_start_;
  std::vector<Transaction> txs_;
  std::vector<BlockRecord> blocks_;
  bool replaying_ = false;
  std::unordered_map<TxId, std::size_t> slot_of_;

  SimTime horizon_;
  SimTime warmup_;
  AoISamplePath aoi_;
  std::uint64_t delivered_ = 0;
  std::uint64_t blocks_cut_ = 0;
  std::uint64_t blocks_cut_in_window_ = 0;
  std::uint64_t blocks_committed_ = 0;
};

}  // namespace

RunSummary simulate(const SimConfig& cfg, std::uint64_t seed, RunOptions options) {
  return Engine(cfg, seed, options).run_sources();
}

RunSummary replay(const SimConfig& cfg, std::uint64_t seed, std::span<const Delivery> arrivals,
                  RunOptions options) {
  return Engine(cfg, seed, options).run_replay(arrivals);
}

std::vector<Delivery> deliveries_of(std::span<const Transaction> trace, ChannelId channel) {
  std::vector<Delivery> out;
  for (const Transaction& tx : trace) {
    if (tx.channel != channel || !tx.arrive_time) continue;
    out.push_back(Delivery{tx.id, tx.gen_time, tx.key, tx.channel, *tx.arrive_time});
  }
  std::stable_sort(out.begin(), out.end(), [](const Delivery& a, const Delivery& b) {
    return a.arrival < b.arrival;
  });
  return out;
}

}  // namespace bceaoi
