#pragma once

#include <compare>
#include <limits>

namespace bceaoi {

// A point on the virtual time axis, in seconds. Always finite and >= 0.
class SimTime {
 public:
  constexpr SimTime() noexcept = default;
  // Throws std::invalid_argument for negative or non-finite values.
  explicit SimTime(double seconds);

  constexpr double seconds() const noexcept { return seconds_; }

  // Advance by a non-negative duration.
  SimTime operator+(double duration) const;

  friend constexpr double operator-(SimTime a, SimTime b) noexcept {
    return a.seconds_ - b.seconds_;
  }
  friend constexpr auto operator<=>(SimTime, SimTime) = default;

  static SimTime max() noexcept;

 private:
  double seconds_ = 0.0;
};

}  // namespace bceaoi
