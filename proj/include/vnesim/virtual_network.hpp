#pragma once

#include <cstddef>
#include <vector>

#include "vnesim/types.hpp"

namespace vnesim {

struct VirtualLink {
  std::size_t a = 0;  // virtual node index
  std::size_t b = 0;
  Amount demand = 0;  // bandwidth units
};

// Virtual node and link ids are their indices in the two vectors.
struct VirtualNetworkRequest {
  RequestId id;
  std::vector<Amount> node_demands;  // memory units
  std::vector<VirtualLink> links;
  Time arrival = 0;
  Time lifetime = 0;

  std::size_t node_count() const { return node_demands.size(); }
  std::size_t link_count() const { return links.size(); }
  Time departure() const { return arrival + lifetime; }
};

// Throws std::invalid_argument if a demand is non-positive, a link endpoint
// is out of range or a self-link, two links join the same pair, or the
// demand graph is disconnected.
void check_request(const VirtualNetworkRequest& request);

}  // namespace vnesim
