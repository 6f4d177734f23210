#pragma once

#include <cstdint>
#include <vector>

#include "vnesim/batch.hpp"
#include "vnesim/substrate_view.hpp"

namespace vnesim {

/**
 * Weight of one virtual link on its current hosting path.
 *
 *   used   R = demand * hops + rule memory on the path (1 unit per switch)
 *   free   A = residual bandwidth of each path link
 *            + residual memory of each path switch after this link's rule
 *   weight W = R - A
 *
 * Endpoint node demands belong to node placement and are not counted.
 * Records are tied to the ledger version they were computed from.
 */
struct LinkWeightRecord {
  RequestId request;
  std::size_t link = 0;
  Path path;
  Amount used = 0;
  Amount free = 0;
  Amount weight = 0;
  std::uint64_t version = 0;
};

// Both throw std::invalid_argument unless `path` is the single path the view
// holds for this virtual link.
Amount used_resources(const SubstrateView& view, const VirtualNetworkRequest& request,
                      std::size_t vlink, const Path& path);
Amount free_resources(const SubstrateView& view, const VirtualNetworkRequest& request,
                      std::size_t vlink, const Path& path);

Amount link_weight(const LinkWeightRecord& record);

LinkWeightRecord weigh_link(const SubstrateView& view, const VirtualNetworkRequest& request,
                            std::size_t vlink);

bool is_stale(const LinkWeightRecord& record, const SubstrateView& view);

// Descending weight, then descending used resources, then (request, link).
// Throws std::logic_error when records come from different ledger versions.
std::vector<LinkWeightRecord> prioritize(std::vector<LinkWeightRecord> records);

struct RemapReport {
  std::size_t rerouted = 0;
  Amount cost_before = 0;
  Amount cost_after = 0;
};

// One pass over every single-path link in the batch, highest weight first.
// A link moves to the cheapest feasible path only if that strictly lowers
// its cost, or keeps the cost and strictly lowers the highest link
// utilization it sees. Node placements never change. Entries' mappings and
// costs are updated in place.
RemapReport remap_pass(SubstrateView& view, PendingBatch& batch);

}  // namespace vnesim
