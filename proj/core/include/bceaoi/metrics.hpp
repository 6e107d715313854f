#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bceaoi/sim_time.hpp"

namespace bceaoi {

struct Transaction;

struct ResetPoint {
  SimTime commit_time;  // t_u
  SimTime gen_time;     // t_g

  friend bool operator==(const ResetPoint&, const ResetPoint&) = default;
};

// Sawtooth AoI of one key over [start, end]. Between resets the age grows
// with slope one; at a reset it drops to t_u - t_g, which is always > 0.
//
// Commits before `start` only advance the freshness watermark; commits
// after `end` are ignored. Statistics are measured from the first reset
// inside the window to `end`.
class AoISamplePath {
 public:
  AoISamplePath() = default;
  AoISamplePath(SimTime start, SimTime end);

  // Records a commit of data generated at `gen_time`. Returns true if it
  // became a reset point; stale data (not fresher than anything already
  // committed) is ignored. Throws SimulationFault if commits arrive out of
  // time order or with commit_time <= gen_time.
  bool record_commit(SimTime commit_time, SimTime gen_time);

  const std::vector<ResetPoint>& resets() const noexcept { return resets_; }
  SimTime start() const noexcept { return start_; }
  SimTime end() const noexcept { return end_; }
  std::optional<SimTime> freshest_gen() const noexcept { return freshest_gen_; }

  // True when at least one reset lies strictly before `end`.
  bool measurable() const noexcept;
  // Length of the measured interval [first reset, end]; 0 if unmeasurable.
  double measured_duration() const noexcept;

  // The same commits, observed from `from` instead of `start`.
  AoISamplePath restricted(SimTime from) const;

 private:
  SimTime start_;
  SimTime end_ = SimTime::max();
  std::vector<ResetPoint> resets_;
  std::optional<SimTime> freshest_gen_;
  std::optional<SimTime> last_commit_;
};

// Exact time average of the sawtooth; nullopt when unmeasurable.
std::optional<double> average_aoi(const AoISamplePath& path);

// Exact fraction of measured time with AoI strictly above `target`.
// Throws ConfigError for a negative target.
std::optional<double> violation_probability(const AoISamplePath& path, double target);

struct CcdfPoint {
  double threshold;
  double probability;
};

// P(AoI > x) at each grid value, returned in ascending order of x.
std::vector<CcdfPoint> aoi_ccdf(const AoISamplePath& path, std::vector<double> grid);

struct OutcomeCounts {
  std::uint64_t generated = 0;
  std::uint64_t lost = 0;
  std::uint64_t valid = 0;
  std::uint64_t mvcc_invalid = 0;
  std::uint64_t vscc_invalid = 0;
  std::uint64_t pending = 0;

  std::uint64_t resolved() const noexcept {
    return lost + valid + mvcc_invalid + vscc_invalid;
  }
  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

// Phase means over committed (valid) target-key transactions whose commit
// lies in [from, to]; outcome counts cover every transaction passed in.
struct LatencyBreakdown {
  std::optional<double> communication;
  std::optional<double> endorsing;
  std::optional<double> ordering;    // batching wait + ordering service
  std::optional<double> validation;  // validator queue + service
  std::optional<double> total;       // arrival at the network to commit
  std::uint64_t committed_target = 0;
  OutcomeCounts counts;
};

LatencyBreakdown latency_breakdown(std::span<const Transaction> trace,
                                   SimTime from = SimTime(), SimTime to = SimTime::max());

}  // namespace bceaoi
