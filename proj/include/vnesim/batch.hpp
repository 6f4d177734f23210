#pragma once

#include <cstdint>
#include <vector>

#include "vnesim/mapping.hpp"

namespace vnesim {

// A request whose resources are held tentatively while its batch is open.
struct PendingEntry {
  VirtualNetworkRequest request;
  SplitMapping mapping;  // single path per link except under static splitting
  Amount cost = 0;
};

// Requests waiting in the controller's mapping queue; none has flow rules.
struct PendingBatch {
  std::vector<PendingEntry> entries;
  Time opened_at = 0;
  std::uint64_t id = 0;  // bumped whenever the batch is committed

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

}  // namespace vnesim
