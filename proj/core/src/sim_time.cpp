#include "bceaoi/sim_time.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bceaoi {

SimTime::SimTime(double seconds) : seconds_(seconds) {
  if (!std::isfinite(seconds) || seconds < 0.0) {
    throw std::invalid_argument("SimTime must be finite and non-negative, got " +
                                std::to_string(seconds));
  }
}

SimTime SimTime::operator+(double duration) const {
  if (!(duration >= 0.0)) {
    throw std::invalid_argument("cannot advance SimTime by a negative duration");
  }
  return SimTime(seconds_ + duration);
}

SimTime SimTime::max() noexcept {
  SimTime t;
  t.seconds_ = std::numeric_limits<double>::max();
  return t;
}

}  // namespace bceaoi
