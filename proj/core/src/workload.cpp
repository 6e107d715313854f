#include "bceaoi/workload.hpp"

#include <algorithm>
#include <cmath>

#include "bceaoi/errors.hpp"

namespace bceaoi {

namespace {

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, what);
}

}  // namespace

void SourceConfig::validate() const {
  require(std::isfinite(total_rate) && total_rate > 0.0, "total_rate", "must be > 0");
  require(target_ratio >= 0.0 && target_ratio <= 1.0, "target_ratio", "must be in [0, 1]");
  require(stp >= 0.0 && stp <= 1.0, "stp", "must be in [0, 1]");
  require(std::isfinite(transmit_time) && transmit_time >= 0.0, "transmit_time", "must be >= 0");
}

SimTime next_generation_time(const SourceConfig& cfg, SimTime now, RngStream& rng) {
  if (cfg.generation_mode == GenerationMode::kPeriodic) return now + 1.0 / cfg.total_rate;
  return now + rng.sample_exponential(cfg.total_rate);
}

Key KeyAssigner::assign_key(const SourceConfig& cfg, RngStream& rng) {
  // One uniform per call: the target set grows monotonically with the ratio.
  if (rng.uniform() < cfg.target_ratio) return kTargetKey;
  return Key{next_background_++};
}

void TransmitterQueue::push(const Proposal& p) {
  const auto pos = std::upper_bound(queue_.begin(), queue_.end(), p,
                                    [](const Proposal& a, const Proposal& b) {
                                      if (a.gen_time != b.gen_time) return a.gen_time < b.gen_time;
                                      return a.id < b.id;
                                    });
  queue_.insert(pos, p);
}

Proposal TransmitterQueue::pop(Discipline discipline) {
  if (queue_.empty()) throw SimulationFault("pop from an empty transmitter queue");
  Proposal p;
  if (discipline == Discipline::kFcfs) {
    p = queue_.front();
    queue_.pop_front();
  } else {
    p = queue_.back();
    queue_.pop_back();
  }
  return p;
}

TransmitResult transmit(TransmitterQueue& queue, SimTime now, const SourceConfig& cfg,
                        RngStream& loss_rng, RngStream& latency_rng) {
  TransmitResult result{queue.pop(cfg.discipline), now + cfg.transmit_time, std::nullopt};
  const double latency = cfg.comm_latency.sample(latency_rng);
  if (loss_rng.bernoulli(cfg.stp)) result.arrival = result.channel_free + latency;
  return result;
}

}  // namespace bceaoi
