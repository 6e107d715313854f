#include "bceaoi/event_queue.hpp"

#include <string>

#include "bceaoi/errors.hpp"

namespace bceaoi {

const char* to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::kGeneration: return "generation";
    case EventKind::kTransmissionComplete: return "transmission-complete";
    case EventKind::kArrival: return "arrival";
    case EventKind::kEndorsementComplete: return "endorsement-complete";
    case EventKind::kTimeoutFire: return "timeout-fire";
    case EventKind::kBlockReady: return "block-ready";
    case EventKind::kValidationComplete: return "validation-complete";
  }
  return "unknown";
}

EventId EventQueue::schedule(SimTime time, EventKind kind, std::uint64_t subject,
                             std::uint32_t channel) {
  if (time < clock_) {
    throw SimulationFault("event '" + std::string(to_string(kind)) + "' scheduled at t=" +
                          std::to_string(time.seconds()) + " before clock t=" +
                          std::to_string(clock_.seconds()));
  }
  const EventId id = next_seq_++;
  heap_.push(Event{time, id, kind, subject, channel});
  return id;
}

std::optional<Event> EventQueue::next_event() {
  if (heap_.empty()) return std::nullopt;
  Event ev = heap_.top();
  heap_.pop();
  clock_ = ev.time;
  ++dispatched_;
  return ev;
}

const Event* EventQueue::peek() const { return heap_.empty() ? nullptr : &heap_.top(); }

}  // namespace bceaoi
