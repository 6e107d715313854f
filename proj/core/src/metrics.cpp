#include "bceaoi/metrics.hpp"

#include <algorithm>
#include <string>

#include "bceaoi/errors.hpp"
#include "bceaoi/pipeline.hpp"

namespace bceaoi {

AoISamplePath::AoISamplePath(SimTime start, SimTime end) : start_(start), end_(end) {
  if (end < start) throw ConfigError("horizon", "AoI window ends before it starts");
}

bool AoISamplePath::record_commit(SimTime commit_time, SimTime gen_time) {
  if (!(commit_time > gen_time)) {
    throw SimulationFault("commit at t=" + std::to_string(commit_time.seconds()) +
                          " is not after generation at t=" + std::to_string(gen_time.seconds()));
  }
  if (last_commit_ && commit_time < *last_commit_) {
    throw SimulationFault("commits recorded out of time order");
  }
  last_commit_ = commit_time;
  if (freshest_gen_ && gen_time <= *freshest_gen_) return false;
  freshest_gen_ = gen_time;
  if (commit_time < start_ || commit_time > end_) return false;
  if (!resets_.empty() && resets_.back().commit_time == commit_time) {
    resets_.back().gen_time = gen_time;
  } else {
    resets_.push_back({commit_time, gen_time});
  }
  return true;
}

bool AoISamplePath::measurable() const noexcept {
  return !resets_.empty() && resets_.front().commit_time < end_;
}

double AoISamplePath::measured_duration() const noexcept {
  return measurable() ? end_ - resets_.front().commit_time : 0.0;
}

AoISamplePath AoISamplePath::restricted(SimTime from) const {
  AoISamplePath out(std::max(from, start_), end_);
  out.freshest_gen_ = freshest_gen_;
  out.last_commit_ = last_commit_;
  for (const ResetPoint& r : resets_) {
    if (r.commit_time >= out.start_) out.resets_.push_back(r);
  }
  return out;
}

namespace {

// Calls fn(segment_begin, segment_end, gen_time) for every linear piece of
// the measured sawtooth.
template <typename Fn>
void for_each_segment(const AoISamplePath& path, Fn&& fn) {
  const auto& resets = path.resets();
  for (std::size_t i = 0; i < resets.size(); ++i) {
    const SimTime begin = resets[i].commit_time;
    if (begin >= path.end()) break;
    const SimTime stop = i + 1 < resets.size() ? std::min(resets[i + 1].commit_time, path.end())
                                               : path.end();
    fn(begin.seconds(), stop.seconds(), resets[i].gen_time.seconds());
  }
}

}  // namespace

std::optional<double> average_aoi(const AoISamplePath& path) {
  if (!path.measurable()) return std::nullopt;
  double area = 0.0;
  for_each_segment(path, [&](double begin, double stop, double gen) {
    const double a0 = begin - gen;
    const double a1 = stop - gen;
    area += 0.5 * (a0 + a1) * (stop - begin);
  });
  return area / path.measured_duration();
}

std::optional<double> violation_probability(const AoISamplePath& path, double target) {
  if (!(target >= 0.0)) {
    throw ConfigError("target_aoi", "target AoI must be >= 0");
  }
  if (!path.measurable()) return std::nullopt;
  double above = 0.0;
  for_each_segment(path, [&](double begin, double stop, double gen) {
    // Age exceeds the target once t > gen + target.
    above += std::max(0.0, stop - std::max(begin, gen + target));
  });
  // Segment sums can overshoot the window length by an ulp.
  return std::min(1.0, above / path.measured_duration());
}

std::vector<CcdfPoint> aoi_ccdf(const AoISamplePath& path, std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  std::vector<CcdfPoint> out;
  out.reserve(grid.size());
  for (double x : grid) {
    const auto p = violation_probability(path, x);
    if (!p) return {};
    out.push_back({x, *p});
  }
  return out;
}

LatencyBreakdown latency_breakdown(std::span<const Transaction> trace, SimTime from, SimTime to) {
  LatencyBreakdown out;
  double comm = 0.0, endorse = 0.0, order = 0.0, validate = 0.0, total = 0.0;
  for (const Transaction& tx : trace) {
    ++out.counts.generated;
    switch (tx.status) {
      case TxStatus::kPending: ++out.counts.pending; break;
      case TxStatus::kLost: ++out.counts.lost; break;
      case TxStatus::kValid: ++out.counts.valid; break;
      case TxStatus::kMvccInvalid: ++out.counts.mvcc_invalid; break;
      case TxStatus::kVsccInvalid: ++out.counts.vscc_invalid; break;
    }
    if (tx.status != TxStatus::kValid || !tx.key.is_target()) continue;
    if (!tx.arrive_time || !tx.endorse_done || !tx.order_done || !tx.commit_time) continue;
    if (*tx.commit_time < from || *tx.commit_time > to) continue;
    ++out.committed_target;
    comm += *tx.arrive_time - tx.gen_time;
    endorse += *tx.endorse_done - *tx.arrive_time;
    order += *tx.order_done - *tx.endorse_done;
    validate += *tx.commit_time - *tx.order_done;
    total += *tx.commit_time - *tx.arrive_time;
  }
  if (out.committed_target > 0) {
    const double n = static_cast<double>(out.committed_target);
    out.communication = comm / n;
    out.endorsing = endorse / n;
    out.ordering = order / n;
    out.validation = validate / n;
    out.total = total / n;
  }
  return out;
}

}  // namespace bceaoi
