#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bceaoi/pipeline.hpp"
#include "bceaoi/workload.hpp"

namespace bceaoi {

struct SimConfig {
  SourceConfig source;
  BlockchainParams chain;
  ServiceTimes service;
  double horizon = 2000.0;
  double warmup = 100.0;
  std::uint64_t master_seed = 1;
  std::uint32_t replications = 30;
  std::optional<double> target_aoi;

  // Field-level and cross-field checks; throws ConfigError.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// The `paper-default` preset: one channel, one endorser, four Kafka nodes,
// periodic arrivals at 10 tx/s with 30% on the target key, block size 10
// and a 1 s timeout. Service times are calibration constants.
SimConfig paper_default();

// Every key accepted by parse_config and --sweep, in canonical order.
const std::vector<std::string_view>& config_keys();

// Sets one field from its textual form, range-checking it. Throws
// ConfigError naming the key for unknown keys or bad values.
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value);

// Current value of `key` in the same textual form apply_setting accepts.
std::string get_setting(const SimConfig& cfg, std::string_view key);

// Parses `key = value` lines ('#' starts a comment) on top of
// paper_default(). Diagnostics carry the 1-based line number.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

// Renders every key; parse_config(format_config(c)) == c.
std::string format_config(const SimConfig& cfg);

}  // namespace bceaoi
