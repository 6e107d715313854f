#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bceaoi {

// Raised for invalid user-supplied parameters. Carries the offending
// key and, when parsing a file, the 1-based line number (0 if unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message, std::size_t line = 0);

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }
  // The message without the line/key prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string key_;
  std::string detail_;
  std::size_t line_;
};

// An internal ordering or bookkeeping invariant was violated. This is a
// simulator bug, never a user error; the run must be aborted.
class SimulationFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bceaoi
