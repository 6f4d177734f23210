#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vnesim/mapping.hpp"
#include "vnesim/random.hpp"
#include "vnesim/substrate.hpp"
#include "vnesim/virtual_network.hpp"

namespace vnesim::test {

struct Edge {
  int a;
  int b;
  Amount bandwidth;
  Amount cost = 1;
};

// Switch i gets label i and capacity caps[i].
inline Substrate make_substrate(const std::vector<Amount>& caps, const std::vector<Edge>& edges,
                                const std::vector<Amount>& switch_costs = {}) {
  std::vector<SwitchSpec> switches;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    switches.push_back({static_cast<std::int64_t>(i), caps[i],
                        switch_costs.empty() ? 1 : switch_costs[i]});
  }
  std::vector<LinkSpec> links;
  for (const auto& e : edges) links.push_back({SwitchId(e.a), SwitchId(e.b), e.bandwidth, e.cost});
  return Substrate(std::move(switches), std::move(links));
}

inline VirtualNetworkRequest make_request(std::uint32_t id, std::vector<Amount> nodes,
                                          std::vector<VirtualLink> links, Time arrival = 0,
                                          Time lifetime = time_units(100)) {
  VirtualNetworkRequest r;
  r.id = RequestId(id);
  r.node_demands = std::move(nodes);
  r.links = std::move(links);
  r.arrival = arrival;
  r.lifetime = lifetime;
  return r;
}

inline Path path(std::initializer_list<int> switches) {
  Path p;
  for (int s : switches) p.push_back(SwitchId(s));
  return p;
}

// Cost evaluated straight from the link list, without adjacency lookups.
inline Amount reference_cost(const Substrate& substrate, const VirtualNetworkRequest& request,
                             const Mapping& mapping) {
  Amount total = 0;
  for (std::size_t v = 0; v < request.node_count(); ++v) {
    total += request.node_demands[v] * substrate.switches()[mapping.node_map[v].index()].unit_cost;
  }
  for (std::size_t e = 0; e < request.link_count(); ++e) {
    const auto& p = mapping.link_map[e];
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      for (const auto& l : substrate.links()) {
        if ((l.a == p[i] && l.b == p[i + 1]) || (l.b == p[i] && l.a == p[i + 1])) {
          total += request.links[e].demand * l.unit_cost;
        }
      }
    }
  }
  return total;
}

// Connected random substrate with `n` switches: a random tree plus extra links.
inline Substrate random_small_substrate(Rng& rng, std::size_t n, Amount cap_lo, Amount cap_hi,
                                        double extra = 0.4, Amount max_cost = 1) {
  std::vector<Amount> caps;
  std::vector<Amount> costs;
  for (std::size_t i = 0; i < n; ++i) {
    caps.push_back(rng.uniform_int(cap_lo, cap_hi));
    costs.push_back(rng.uniform_int(1, max_cost));
  }
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  for (std::size_t i = 1; i < n; ++i) {
    auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    present[i][j] = present[j][i] = true;
    edges.push_back({static_cast<int>(j), static_cast<int>(i), rng.uniform_int(cap_lo, cap_hi),
                     rng.uniform_int(1, max_cost)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (present[i][j] || !rng.bernoulli(extra)) continue;
      edges.push_back({static_cast<int>(i), static_cast<int>(j), rng.uniform_int(cap_lo, cap_hi),
                       rng.uniform_int(1, max_cost)});
    }
  }
  return make_substrate(caps, edges, costs);
}

// Connected random request with `n` nodes.
inline VirtualNetworkRequest random_small_request(Rng& rng, std::uint32_t id, std::size_t n,
                                                  Amount lo, Amount hi) {
  std::vector<Amount> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(rng.uniform_int(lo, hi));
  std::vector<VirtualLink> links;
  for (std::size_t i = 1; i < n; ++i) {
    auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    links.push_back({j, i, rng.uniform_int(lo, hi)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      bool dup = false;
      for (const auto& l : links) dup |= (l.a == i && l.b == j) || (l.a == j && l.b == i);
      if (!dup && rng.bernoulli(0.3)) links.push_back({i, j, rng.uniform_int(lo, hi)});
    }
  }
  return make_request(id, std::move(nodes), std::move(links));
}

}  // namespace vnesim::test
