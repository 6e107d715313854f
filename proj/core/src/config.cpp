#include "bceaoi/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "bceaoi/errors.hpp"
#include "numeric_text.hpp"

namespace bceaoi {

ConfigError::ConfigError(std::string key, const std::string& message, std::size_t line)
    : std::runtime_error((line ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : "'" + key + "': ") + message),
      key_(std::move(key)),
      detail_(message),
      line_(line) {}

void SimConfig::validate() const {
  source.validate();
  chain.validate();
  service.validate();
  if (!std::isfinite(horizon) || !(horizon > 0.0)) throw ConfigError("horizon", "must be > 0");
  if (!std::isfinite(warmup) || warmup < 0.0) throw ConfigError("warmup", "must be >= 0");
  if (!(horizon > warmup)) throw ConfigError("horizon", "must exceed warmup");
  if (replications < 1) throw ConfigError("replications", "must be >= 1");
  if (target_aoi && !(*target_aoi >= 0.0 && std::isfinite(*target_aoi))) {
    throw ConfigError("target_aoi", "must be finite and >= 0");
  }
}

SimConfig paper_default() { return SimConfig{}; }

namespace {

struct Setting {
  std::string_view key;
  std::function<void(SimConfig&, std::string_view)> set;
  std::function<std::string(const SimConfig&)> get;
};

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expect) {
  throw ConfigError(std::string(key),
                    "invalid value '" + std::string(value) + "', expected " + expect);
}

double real(std::string_view key, std::string_view v, double lo, double hi, const char* expect) {
  const auto d = detail::parse_double(v);
  if (!d || !std::isfinite(*d) || *d < lo || *d > hi) bad_value(key, v, expect);
  return *d;
}

double positive(std::string_view key, std::string_view v) {
  const double d = real(key, v, 0.0, std::numeric_limits<double>::max(), "a positive number");
  if (!(d > 0.0)) bad_value(key, v, "a positive number");
  return d;
}

double non_negative(std::string_view key, std::string_view v) {
  return real(key, v, 0.0, std::numeric_limits<double>::max(), "a number >= 0");
}

double probability(std::string_view key, std::string_view v) {
  return real(key, v, 0.0, 1.0, "a probability in [0, 1]");
}

template <typename Int>
Int integer(std::string_view key, std::string_view v, Int lo, const char* expect) {
  const auto i = detail::parse_integer<Int>(v);
  if (!i || *i < lo) bad_value(key, v, expect);
  return *i;
}

Distribution distribution(std::string_view key, std::string_view v) {
  try {
    return Distribution::parse(v);
  } catch (const ConfigError&) {
    bad_value(key, v, "'fixed:<seconds>' or 'exp:<mean seconds>'");
  }
}

std::string num(double d) { return detail::format_number(d); }

const std::vector<Setting>& settings() {
  static const std::vector<Setting> table = {
      {"total_rate", [](SimConfig& c, std::string_view v) { c.source.total_rate = positive("total_rate", v); },
       [](const SimConfig& c) { return num(c.source.total_rate); }},
      {"generation_mode",
       [](SimConfig& c, std::string_view v) {
         const auto t = detail::trim(v);
         if (t == "periodic") c.source.generation_mode = GenerationMode::kPeriodic;
         else if (t == "exponential") c.source.generation_mode = GenerationMode::kExponential;
         else bad_value("generation_mode", v, "'periodic' or 'exponential'");
       },
       [](const SimConfig& c) {
         return std::string(c.source.generation_mode == GenerationMode::kPeriodic ? "periodic"
                                                                                  : "exponential");
       }},
      {"target_ratio", [](SimConfig& c, std::string_view v) { c.source.target_ratio = probability("target_ratio", v); },
       [](const SimConfig& c) { return num(c.source.target_ratio); }},
      {"discipline",
       [](SimConfig& c, std::string_view v) {
         const auto t = detail::trim(v);
         if (t == "fcfs") c.source.discipline = Discipline::kFcfs;
         else if (t == "lcfs") c.source.discipline = Discipline::kLcfs;
         else bad_value("discipline", v, "'fcfs' or 'lcfs'");
       },
       [](const SimConfig& c) {
         return std::string(c.source.discipline == Discipline::kFcfs ? "fcfs" : "lcfs");
       }},
      {"stp", [](SimConfig& c, std::string_view v) { c.source.stp = probability("stp", v); },
       [](const SimConfig& c) { return num(c.source.stp); }},
      {"comm_latency", [](SimConfig& c, std::string_view v) { c.source.comm_latency = distribution("comm_latency", v); },
       [](const SimConfig& c) { return c.source.comm_latency.to_string(); }},
      {"transmit_time", [](SimConfig& c, std::string_view v) { c.source.transmit_time = non_negative("transmit_time", v); },
       [](const SimConfig& c) { return num(c.source.transmit_time); }},
      {"block_size", [](SimConfig& c, std::string_view v) { c.chain.block_size = integer<std::uint32_t>("block_size", v, 1, "an integer >= 1"); },
       [](const SimConfig& c) { return std::to_string(c.chain.block_size); }},
      {"timeout", [](SimConfig& c, std::string_view v) { c.chain.timeout = positive("timeout", v); },
       [](const SimConfig& c) { return num(c.chain.timeout); }},
      {"n_endorsers", [](SimConfig& c, std::string_view v) { c.chain.n_endorsers = integer<std::uint32_t>("n_endorsers", v, 1, "an integer >= 1"); },
       [](const SimConfig& c) { return std::to_string(c.chain.n_endorsers); }},
      {"n_kafka", [](SimConfig& c, std::string_view v) { c.chain.n_kafka = integer<std::uint32_t>("n_kafka", v, 4, "an integer >= 4"); },
       [](const SimConfig& c) { return std::to_string(c.chain.n_kafka); }},
      {"n_channels", [](SimConfig& c, std::string_view v) { c.chain.n_channels = integer<std::uint32_t>("n_channels", v, 1, "an integer >= 1"); },
       [](const SimConfig& c) { return std::to_string(c.chain.n_channels); }},
      {"endorse_time", [](SimConfig& c, std::string_view v) { c.service.endorse_per_peer = distribution("endorse_time", v); },
       [](const SimConfig& c) { return c.service.endorse_per_peer.to_string(); }},
      {"ordering_base", [](SimConfig& c, std::string_view v) { c.service.ordering_base = non_negative("ordering_base", v); },
       [](const SimConfig& c) { return num(c.service.ordering_base); }},
      {"ordering_per_kafka", [](SimConfig& c, std::string_view v) { c.service.ordering_per_kafka = non_negative("ordering_per_kafka", v); },
       [](const SimConfig& c) { return num(c.service.ordering_per_kafka); }},
      {"validate_block_overhead", [](SimConfig& c, std::string_view v) { c.service.validate_block_overhead = non_negative("validate_block_overhead", v); },
       [](const SimConfig& c) { return num(c.service.validate_block_overhead); }},
      {"validate_per_tx", [](SimConfig& c, std::string_view v) { c.service.validate_per_tx = non_negative("validate_per_tx", v); },
       [](const SimConfig& c) { return num(c.service.validate_per_tx); }},
      {"vscc_failure_prob", [](SimConfig& c, std::string_view v) { c.service.vscc_failure_prob = probability("vscc_failure_prob", v); },
       [](const SimConfig& c) { return num(c.service.vscc_failure_prob); }},
      {"horizon", [](SimConfig& c, std::string_view v) { c.horizon = positive("horizon", v); },
       [](const SimConfig& c) { return num(c.horizon); }},
      {"warmup", [](SimConfig& c, std::string_view v) { c.warmup = non_negative("warmup", v); },
       [](const SimConfig& c) { return num(c.warmup); }},
      {"master_seed", [](SimConfig& c, std::string_view v) { c.master_seed = integer<std::uint64_t>("master_seed", v, 0, "a non-negative integer"); },
       [](const SimConfig& c) { return std::to_string(c.master_seed); }},
      {"replications", [](SimConfig& c, std::string_view v) { c.replications = integer<std::uint32_t>("replications", v, 1, "an integer >= 1"); },
       [](const SimConfig& c) { return std::to_string(c.replications); }},
      {"target_aoi",
       [](SimConfig& c, std::string_view v) {
         if (detail::trim(v) == "none") c.target_aoi.reset();
         else c.target_aoi = non_negative("target_aoi", v);
       },
       [](const SimConfig& c) { return c.target_aoi ? num(*c.target_aoi) : std::string("none"); }},
  };
  return table;
}

const Setting* find_setting(std::string_view key) {
  for (const Setting& s : settings()) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> out;
    for (const Setting& s : settings()) out.push_back(s.key);
    return out;
  }();
  return keys;
}

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value) {
  const Setting* s = find_setting(detail::trim(key));
  if (!s) throw ConfigError(std::string(detail::trim(key)), "unknown configuration key");
  s->set(cfg, detail::trim(value));
}

std::string get_setting(const SimConfig& cfg, std::string_view key) {
  const Setting* s = find_setting(detail::trim(key));
  if (!s) throw ConfigError(std::string(detail::trim(key)), "unknown configuration key");
  return s->get(cfg);
}

SimConfig parse_config(std::string_view text) {
  SimConfig cfg = paper_default();
  std::size_t line_no = 0;
  std::string last_key;
  std::size_t last_line = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "malformed line, expected 'key = value': '" + std::string(line) + "'",
                        line_no);
    }
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", "missing key before '='", line_no);
    if (value.empty()) throw ConfigError(key, "missing value", line_no);
    try {
      apply_setting(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.key(), e.detail(), line_no);
    }
    last_key = key;
    last_line = line_no;
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(e.key(), e.detail(), e.key() == last_key ? last_line : 0);
  }
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const SimConfig& cfg) {
  std::string out;
  for (const Setting& s : settings()) {
    out += s.key;
    out += " = ";
    out += s.get(cfg);
    out += '\n';
  }
  return out;
}

}  // namespace bceaoi
