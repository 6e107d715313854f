#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "bceaoi/sim_time.hpp"
#include "bceaoi/types.hpp"

namespace bceaoi {

struct LedgerEntry {
  std::uint64_t version = 0;
  std::optional<SimTime> last_gen_time;

  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

// Versioned world state of one channel. Values are not kept; only the
// version counter and the generation time of the last committed update.
class LedgerState {
 public:
  explicit LedgerState(ChannelId channel = 0) : channel_(channel) {}

  ChannelId channel() const noexcept { return channel_; }

  // Unseen keys read as version 0.
  std::uint64_t read_version(Key key) const;
  std::optional<SimTime> last_gen_time(Key key) const;

  // Caller must already have passed MVCC for `key`.
  std::uint64_t apply_update(Key key, SimTime gen_time);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::unordered_map<std::uint64_t, LedgerEntry>& entries() const noexcept {
    return entries_;
  }

  friend bool operator==(const LedgerState&, const LedgerState&) = default;

 private:
  ChannelId channel_;
  std::unordered_map<std::uint64_t, LedgerEntry> entries_;
};

}  // namespace bceaoi
