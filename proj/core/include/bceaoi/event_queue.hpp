#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "bceaoi/sim_time.hpp"

namespace bceaoi {

enum class EventKind : std::uint8_t {
  kGeneration,            // a source produces a new update
  kTransmissionComplete,  // the shared wireless channel becomes free
  kArrival,               // a delivered proposal reaches the BCE network
  kEndorsementComplete,   // all required endorsers have answered
  kTimeoutFire,           // block-generation timeout of a pending batch
  kBlockReady,            // ordering service hands a block to the committers
  kValidationComplete,    // the serial validator finished a block
};

const char* to_string(EventKind kind) noexcept;

using EventId = std::uint64_t;

struct Event {
  SimTime time;
  EventId seq = 0;
  EventKind kind = EventKind::kGeneration;
  // Kind-specific subject: transaction id, block sequence or timeout epoch.
  std::uint64_t subject = 0;
  std::uint32_t channel = 0;
};

// Min-ordered future event list. Events are dispatched in (time, seq)
// order; seq is issued in scheduling order, so simultaneous events run
// in the order they were scheduled.
class EventQueue {
 public:
  // Throws SimulationFault if `time` lies before the current clock.
  EventId schedule(SimTime time, EventKind kind, std::uint64_t subject = 0,
                   std::uint32_t channel = 0);

  // Pops the earliest event and advances the clock to it.
  std::optional<Event> next_event();

  const Event* peek() const;
  SimTime now() const noexcept { return clock_; }
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  std::uint64_t dispatched() const noexcept { return dispatched_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  SimTime clock_;
  EventId next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
};

}  // namespace bceaoi
