#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "bceaoi/distribution.hpp"
#include "bceaoi/rng.hpp"
#include "bceaoi/sim_time.hpp"
#include "bceaoi/types.hpp"

namespace bceaoi {

enum class GenerationMode { kPeriodic, kExponential };
enum class Discipline { kFcfs, kLcfs };

struct SourceConfig {
  double total_rate = 10.0;  // packets per second over all sources
  GenerationMode generation_mode = GenerationMode::kPeriodic;
  double target_ratio = 0.3;
  Discipline discipline = Discipline::kFcfs;
  double stp = 1.0;  // successful transmission probability
  Distribution comm_latency = Distribution::fixed(0.0);
  double transmit_time = 0.0;  // channel occupancy per packet, seconds

  // Throws ConfigError naming the first offending field.
  void validate() const;

  friend bool operator==(const SourceConfig&, const SourceConfig&) = default;
};

struct Proposal {
  TxId id = 0;
  SimTime gen_time;
  Key key;
  ChannelId channel = 0;
};

SimTime next_generation_time(const SourceConfig& cfg, SimTime now, RngStream& rng);

// Issues the target key with probability `target_ratio`, otherwise a
// background key that has never been issued before.
class KeyAssigner {
 public:
  Key assign_key(const SourceConfig& cfg, RngStream& rng);
  std::uint64_t background_issued() const noexcept { return next_background_ - 1; }

 private:
  std::uint64_t next_background_ = 1;
};

// Packets waiting at the transmitter, kept ordered by generation time
// (ties by id). FCFS serves the oldest, LCFS the newest.
class TransmitterQueue {
 public:
  void push(const Proposal& p);
  Proposal pop(Discipline discipline);

  bool empty() const noexcept { return queue_.empty(); }
  std::size_t size() const noexcept { return queue_.size(); }
  const std::deque<Proposal>& contents() const noexcept { return queue_; }

 private:
  std::deque<Proposal> queue_;
};

struct TransmitResult {
  Proposal proposal;
  SimTime channel_free;            // now + transmit_time, success or not
  std::optional<SimTime> arrival;  // set iff delivered
  bool delivered() const noexcept { return arrival.has_value(); }
};

// Serves one packet from the head of `queue` at `now`. Lost packets are
// dropped for good. The latency draw is taken whether or not the packet
// survives so that loss and latency streams stay aligned across STP values.
TransmitResult transmit(TransmitterQueue& queue, SimTime now, const SourceConfig& cfg,
                        RngStream& loss_rng, RngStream& latency_rng);

}  // namespace bceaoi
