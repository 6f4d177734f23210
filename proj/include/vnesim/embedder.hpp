#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vnesim/mapping.hpp"
#include "vnesim/substrate_view.hpp"

namespace vnesim {

enum class RejectStage { none, node, link };

const char* to_string(RejectStage s);

struct EmbedOutcome {
  std::optional<Mapping> mapping;
  Amount cost = 0;
  RejectStage rejection = RejectStage::none;

  bool accepted() const { return mapping.has_value(); }
};

struct SplitOutcome {
  std::optional<SplitMapping> mapping;
  Amount cost = 0;
  RejectStage rejection = RejectStage::none;

  bool accepted() const { return mapping.has_value(); }
};

// Largest demand first (ties: lower virtual node id), each onto the free
// switch with the largest residual that fits it (ties: lower switch id).
std::optional<std::vector<SwitchId>> greedy_node_map(const Substrate& substrate,
                                                     const Residuals& residuals,
                                                     const VirtualNetworkRequest& request);
std::optional<std::vector<SwitchId>> greedy_node_map(const SubstrateView& view,
                                                     const VirtualNetworkRequest& request);

// Minimum-cost simple path over links whose residual covers `demand`.
// Ties: fewer hops, then lexicographically smaller switch sequence.
std::optional<Path> cheapest_feasible_path(const Substrate& substrate,
                                           std::span<const Amount> link_residuals, SwitchId src,
                                           SwitchId dst, Amount demand);
std::optional<Path> cheapest_feasible_path(const SubstrateView& view, SwitchId src, SwitchId dst,
                                           Amount demand);

// Virtual links in processing order: descending demand, then link id.
std::vector<std::size_t> link_order(const VirtualNetworkRequest& request);

// Greedy node stage, then one cheapest feasible path per virtual link against
// a working copy of the residuals. Nothing is reserved in the view.
EmbedOutcome embed(const Substrate& substrate, const Residuals& residuals,
                   const VirtualNetworkRequest& request);
EmbedOutcome embed(const SubstrateView& view, const VirtualNetworkRequest& request);

// Path-splitting variant: each link takes the cheapest path that carries its
// whole remaining demand if one exists; otherwise it saturates the cheapest
// path with any free bandwidth and continues, using at most `max_paths` paths.
SplitOutcome splitting_embed(const Substrate& substrate, const Residuals& residuals,
                             const VirtualNetworkRequest& request, std::size_t max_paths);
SplitOutcome splitting_embed(const SubstrateView& view, const VirtualNetworkRequest& request,
                             std::size_t max_paths);

// Exhaustive reference embedder for desk-scale instances.
struct OracleResult {
  bool feasible = false;
  Amount min_cost = 0;  // meaningful only when feasible
};

inline constexpr std::size_t kOracleMaxSwitches = 8;
inline constexpr std::size_t kOracleMaxNodes = 4;

// Enumerates every injective placement and, per placement, backtracks over
// simple paths in descending-demand order. Throws std::invalid_argument above
// kOracleMaxSwitches switches or kOracleMaxNodes virtual nodes.
OracleResult oracle_embed(const Substrate& substrate, const Residuals& residuals,
                          const VirtualNetworkRequest& request);

}  // namespace vnesim
