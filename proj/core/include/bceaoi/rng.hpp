#pragma once

#include <cstdint>
#include <random>

namespace bceaoi {

// Stream labels. Each stochastic concern owns a stream so that changing
// one parameter leaves unrelated draws untouched across a sweep.
namespace streams {
inline constexpr std::uint64_t kGeneration = 1;
inline constexpr std::uint64_t kKeyAssignment = 2;
inline constexpr std::uint64_t kChannelLoss = 3;
inline constexpr std::uint64_t kCommLatency = 4;
inline constexpr std::uint64_t kChannelSplit = 5;

inline constexpr std::uint64_t endorse(std::uint32_t channel, std::uint32_t peer) {
  return 0x1000'0000ULL + (static_cast<std::uint64_t>(channel) << 16) + peer;
}
inline constexpr std::uint64_t vscc(std::uint32_t channel) {
  return 0x2000'0000ULL + channel;
}
}  // namespace streams

// A reproducible random stream keyed by (master seed, stream id).
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t stream_id() const noexcept { return stream_id_; }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  // Exp(rate) draw by inversion; throws ConfigError when rate <= 0.
  double sample_exponential(double rate);
  bool bernoulli(double p);

 private:
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace bceaoi
