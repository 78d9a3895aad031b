// Calendar queue for the discrete-event core. Events dequeue in
// (time, sequence) order; the sequence counter breaks ties deterministically.

#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

namespace sgsim {

// Virtual time is kept in integer microseconds. All schedulable instants in
// the model (TTIs, RAO slots, report phases) are multiples of 1 ms, so the
// microsecond grid is exact and immune to float tie-break hazards.
using TimeUs = std::int64_t;

constexpr TimeUs kUsPerMs = 1000;

inline TimeUs seconds_to_us(double s) { return static_cast<TimeUs>(s * 1e6 + 0.5); }
inline double us_to_seconds(TimeUs t) { return static_cast<double>(t) * 1e-6; }

enum class EventKind : std::uint8_t {
  ReportGenerated,
  RaoSlot,
  TtiTick,
  FrameStart,
  TransmissionComplete,
};

struct Event {
  TimeUs time = 0;
  std::uint64_t sequence = 0;  // unique, assigned by the queue
  EventKind kind = EventKind::ReportGenerated;
  std::uint32_t subject = 0;   // device id or cell-level marker
};

class EventQueue {
 public:
  // Throws if an event is scheduled before the last dequeued time.
  void push(TimeUs time, EventKind kind, std::uint32_t subject) {
    if (time < now_) throw std::logic_error("event scheduled in the past");
    heap_.push(Event{time, next_sequence_++, kind, subject});
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

  const Event& top() const { return heap_.top(); }

  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    now_ = e.time;
    return e;
  }

  TimeUs now() const { return now_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.sequence > b.sequence;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_sequence_ = 0;
  TimeUs now_ = 0;
};

}  // namespace sgsim
