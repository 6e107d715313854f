#pragma once

#include <compare>
#include <cstdint>

namespace bceaoi {

using TxId = std::uint64_t;
using ChannelId = std::uint32_t;

// Ledger key. Id 0 is the tracked target datum; every background update
// gets a fresh id that is never reused.
struct Key {
  std::uint64_t id = 0;

  constexpr bool is_target() const noexcept { return id == 0; }
  friend constexpr auto operator<=>(Key, Key) = default;
};

inline constexpr Key kTargetKey{0};

}  // namespace bceaoi
