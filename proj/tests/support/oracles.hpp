#pragma once

// Independent reference computations used only by tests. Nothing here may
// call into the metric or pipeline code it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "bceaoi/ledger.hpp"
#include "bceaoi/pipeline.hpp"

namespace bceaoi::testing {

// A sawtooth given on an integer time lattice: every reset time, generation
// time and the horizon are multiples of `unit` seconds.
struct LatticePath {
  double unit = 0.01;
  std::vector<std::pair<std::int64_t, std::int64_t>> resets;  // (t_u, t_g) in units
  std::int64_t end = 0;
};

// Random path with strictly increasing commits, fresher generation times
// and t_u > t_g. At most `max_resets` resets.
inline LatticePath random_lattice_path(std::mt19937_64& rng, int max_resets) {
  LatticePath p;
  std::uniform_int_distribution<int> count(1, max_resets);
  std::uniform_int_distribution<std::int64_t> gap(1, 300);
  std::uniform_int_distribution<std::int64_t> lag(1, 250);
  const int n = count(rng);
  std::int64_t tu = gap(rng) + 200;
  std::int64_t last_tg = -1;
  for (int i = 0; i < n; ++i) {
    std::int64_t tg = tu - lag(rng);
    tg = std::max(tg, last_tg + 1);
    if (tg >= tu) tg = tu - 1;
    if (tg <= last_tg || tg < 0) {
      tu += gap(rng);
      continue;
    }
    p.resets.emplace_back(tu, tg);
    last_tg = tg;
    tu += gap(rng);
  }
  p.end = p.resets.back().first + gap(rng);
  return p;
}

struct GridResult {
  double average = 0.0;
  double violation = 0.0;
};

// Midpoint Riemann sum with step `step` (which must divide the lattice
// unit). On a lattice path every cell sees one linear piece, so the
// midpoint rule is exact up to rounding and cell classification against a
// lattice-aligned target is unambiguous.
inline GridResult grid_oracle(const LatticePath& p, double target, double step = 1e-4) {
  const auto cells_per_unit = static_cast<std::int64_t>(p.unit / step + 0.5);
  double area = 0.0;
  std::int64_t above = 0;
  std::int64_t cells = 0;
  for (std::size_t i = 0; i < p.resets.size(); ++i) {
    const std::int64_t begin = p.resets[i].first * cells_per_unit;
    const std::int64_t stop =
        (i + 1 < p.resets.size() ? p.resets[i + 1].first : p.end) * cells_per_unit;
    const double gen = static_cast<double>(p.resets[i].second) * p.unit;
    for (std::int64_t k = begin; k < stop; ++k) {
      const double age = (static_cast<double>(k) + 0.5) * step - gen;
      area += age * step;
      if (age > target) ++above;
      ++cells;
    }
  }
  return {area / (static_cast<double>(cells) * step),
          static_cast<double>(above) / static_cast<double>(cells)};
}

// Rebuilds per-channel ledgers by applying valid transactions in commit
// order, without consulting the pipeline.
inline std::vector<LedgerState> replay_commit_log(const std::vector<Transaction>& trace,
                                                  std::size_t channels) {
  std::vector<const Transaction*> log;
  for (const Transaction& tx : trace) {
    if (tx.status == TxStatus::kValid) log.push_back(&tx);
  }
  std::stable_sort(log.begin(), log.end(), [](const Transaction* a, const Transaction* b) {
    if (a->channel != b->channel) return a->channel < b->channel;
    return *a->block_seq < *b->block_seq;
  });
  std::vector<LedgerState> ledgers;
  for (std::size_t c = 0; c < channels; ++c) ledgers.emplace_back(static_cast<ChannelId>(c));
  for (const Transaction* tx : log) ledgers[tx->channel].apply_update(tx->key, tx->gen_time);
  return ledgers;
}

// True iff, for every key, the versions written by valid transactions are
// exactly 1, 2, ..., K in commit order.
inline bool versions_gapless(const std::vector<Transaction>& trace) {
  std::map<std::pair<ChannelId, std::uint64_t>, std::vector<std::pair<std::uint64_t, std::uint64_t>>>
      per_key;  // (block_seq, written version)
  for (const Transaction& tx : trace) {
    if (tx.status != TxStatus::kValid) continue;
    per_key[{tx.channel, tx.key.id}].emplace_back(*tx.block_seq, tx.captured_version + 1);
  }
  for (auto& [key, writes] : per_key) {
    std::sort(writes.begin(), writes.end());
    for (std::size_t i = 0; i < writes.size(); ++i) {
      if (writes[i].second != i + 1) return false;
    }
  }
  return true;
}

}  // namespace bceaoi::testing
