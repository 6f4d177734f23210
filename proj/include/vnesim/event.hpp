#pragma once

#include <compare>
#include <cstdint>
#include <tuple>

#include "vnesim/types.hpp"

namespace vnesim {

// Declaration order is the dispatch priority among equal-time events.
enum class EventKind : std::uint8_t { departure = 0, arrival = 1, trigger = 2 };

const char* to_string(EventKind k);

struct Event {
  Time time = 0;
  EventKind kind = EventKind::arrival;
  std::uint64_t payload = 0;  // request id, or batch id for triggers
  std::uint64_t sequence = 0;

  // Total order: time, kind priority, scheduling sequence.
  friend auto operator<=>(const Event& x, const Event& y) {
    return std::tie(x.time, x.kind, x.sequence) <=> std::tie(y.time, y.kind, y.sequence);
  }
  friend bool operator==(const Event& x, const Event& y) { return (x <=> y) == 0; }
};

}  // namespace vnesim
