#pragma once

#include <string>
#include <string_view>

namespace bceaoi {

class RngStream;

// Service or latency distribution, written `fixed:<v>` or `exp:<mean>`
// in config files. Both parameters are in seconds.
class Distribution {
 public:
  enum class Family { kFixed, kExponential };

  constexpr Distribution() noexcept = default;

  static Distribution fixed(double value);
  static Distribution exponential(double mean);
  // Throws ConfigError on malformed text or a negative parameter.
  static Distribution parse(std::string_view text);

  Family family() const noexcept { return family_; }
  double mean() const noexcept { return mean_; }

  // Fixed distributions never consume randomness.
  double sample(RngStream& rng) const;

  std::string to_string() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  constexpr Distribution(Family family, double mean) noexcept : family_(family), mean_(mean) {}

  Family family_ = Family::kFixed;
  double mean_ = 0.0;
};

}  // namespace bceaoi
