#include "bceaoi/ledger.hpp"

namespace bceaoi {

std::uint64_t LedgerState::read_version(Key key) const {
  const auto it = entries_.find(key.id);
  return it == entries_.end() ? 0 : it->second.version;
}

std::optional<SimTime> LedgerState::last_gen_time(Key key) const {
  const auto it = entries_.find(key.id);
  if (it == entries_.end()) return std::nullopt;
  return it->second.last_gen_time;
}

std::uint64_t LedgerState::apply_update(Key key, SimTime gen_time) {
  LedgerEntry& entry = entries_[key.id];
  ++entry.version;
  entry.last_gen_time = gen_time;
  return entry.version;
}

}  // namespace bceaoi
