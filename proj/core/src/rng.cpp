#include "bceaoi/rng.hpp"

#include <cmath>
#include <string>

#include "bceaoi/errors.hpp"

namespace bceaoi {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t master_seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : stream_id_(stream_id), engine_(seeded_engine(master_seed, stream_id)) {}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::sample_exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ConfigError("rate", "exponential rate must be positive and finite, got " +
                                  std::to_string(rate));
  }
  return -std::log1p(-uniform()) / rate;
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

}  // namespace bceaoi
