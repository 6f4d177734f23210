#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vnesim/types.hpp"

namespace vnesim {

struct SwitchSpec {
  std::int64_t label = 0;  // id as written in topology files
  Amount capacity = 0;     // memory units, shared by node demands and rules
  Amount unit_cost = 1;
};

struct LinkSpec {
  SwitchId a;
  SwitchId b;
  Amount bandwidth = 0;
  Amount unit_cost = 1;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Undirected substrate graph with total capacities and unit costs. Immutable
 * once built; residual state lives in SubstrateView.
 *
 * Switches are stored sorted by label, so SwitchId order is label order and
 * every id-based tie-break is stable under reloading.
 */
class Substrate {
 public:
  struct Neighbor {
    SwitchId to;
    LinkId link;
  };

  Substrate() = default;

  // Throws TopologyError on self-loops, parallel links, non-positive
  // capacities, unknown endpoints, duplicate labels or a disconnected graph.
  // Switch ids in `links` index into `switches` as given; the constructor
  // re-sorts by label and remaps them.
  Substrate(std::vector<SwitchSpec> switches, std::vector<LinkSpec> links);

  std::size_t switch_count() const { return switches_.size(); }
  std::size_t link_count() const { return links_.size(); }

  const SwitchSpec& switch_spec(SwitchId s) const { return switches_.at(s.index()); }
  const LinkSpec& link_spec(LinkId l) const { return links_.at(l.index()); }
  const std::vector<SwitchSpec>& switches() const { return switches_; }
  const std::vector<LinkSpec>& links() const { return links_; }

  Amount capacity(SwitchId s) const { return switch_spec(s).capacity; }
  Amount bandwidth(LinkId l) const { return link_spec(l).bandwidth; }

  // Neighbors in ascending switch id order.
  std::span<const Neighbor> neighbors(SwitchId s) const { return adjacency_.at(s.index()); }

  std::optional<LinkId> find_link(SwitchId a, SwitchId b) const;
  std::optional<SwitchId> find_label(std::int64_t label) const;

  bool has_switch(SwitchId s) const { return s.index() < switches_.size(); }

  // Links along a path; nullopt if two consecutive switches are not adjacent.
  std::optional<std::vector<LinkId>> path_links(const Path& path) const;
  // Same for a path known to be valid; throws std::invalid_argument otherwise.
  std::vector<LinkId> links_on(const Path& path) const;

  // Copy with every capacity and bandwidth multiplied by `factor`.
  Substrate scaled(Amount factor) const;

  friend bool operator==(const Substrate& x, const Substrate& y);

 private:
  std::vector<SwitchSpec> switches_;
  std::vector<LinkSpec> links_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// One representative (smallest index) per connected component, ordered by
// representative. A connected graph yields a single entry.
std::vector<std::size_t> component_representatives(
    std::size_t node_count, std::span<const std::pair<std::size_t, std::size_t>> edges);

}  // namespace vnesim
