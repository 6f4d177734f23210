#include "vnesim/embedder.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace vnesim {

const char* to_string(RejectStage s) {
  switch (s) {
    case RejectStage::none:
      return "none";
    case RejectStage::node:
      return "node";
    case RejectStage::link:
      return "link";
  }
  return "unknown";
}

std::optional<std::vector<SwitchId>> greedy_node_map(const Substrate& substrate,
                                                     const Residuals& residuals,
                                                     const VirtualNetworkRequest& request) {
  std::vector<std::size_t> order(request.node_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return request.node_demands[x] > request.node_demands[y];
  });

  std::vector<SwitchId> placement(request.node_count());
  std::vector<bool> used(substrate.switch_count(), false);
  for (auto v : order) {
    const auto demand = request.node_demands[v];
    std::optional<std::size_t> best;
    for (std::size_t s = 0; s < substrate.switch_count(); ++s) {
      if (used[s] || residuals.switches[s] < demand) continue;
      if (!best || residuals.switches[s] > residuals.switches[*best]) best = s;
    }
    if (!best) return std::nullopt;
    used[*best] = true;
    placement[v] = SwitchId(*best);
  }
  return placement;
}

std::optional<std::vector<SwitchId>> greedy_node_map(const SubstrateView& view,
                                                     const VirtualNetworkRequest& request) {
  return greedy_node_map(view.substrate(), view.effective(), request);
}

namespace {

struct Label {
  Amount cost;
  std::size_t hops;
  Path path;

  friend bool operator>(const Label& x, const Label& y) {
    return std::tie(x.cost, x.hops, x.path) > std::tie(y.cost, y.hops, y.path);
  }
};

Amount bottleneck(const Substrate& substrate, std::span<const Amount> link_residuals,
                  const Path& path) {
  Amount b = std::numeric_limits<Amount>::max();
  for (auto l : substrate.links_on(path)) b = std::min(b, link_residuals[l.index()]);
  return b;
}

void consume(const Substrate& substrate, std::vector<Amount>& link_residuals, const Path& path,
             Amount amount) {
  for (auto l : substrate.links_on(path)) link_residuals[l.index()] -= amount;
}

}  // namespace

std::optional<Path> cheapest_feasible_path(const Substrate& substrate,
                                           std::span<const Amount> link_residuals, SwitchId src,
                                           SwitchId dst, Amount demand) {
  if (src == dst || !substrate.has_switch(src) || !substrate.has_switch(dst)) return std::nullopt;

  // Appending the same hop to two labels preserves their order, so the
  // lexicographic key is a valid Dijkstra key.
  std::priority_queue<Label, std::vector<Label>, std::greater<>> frontier;
  std::vector<bool> settled(substrate.switch_count(), false);
  frontier.push({0, 0, {src}});
  while (!frontier.empty()) {
    auto label = frontier.top();
    frontier.pop();
    const auto at = label.path.back();
    if (settled[at.index()]) continue;
    settled[at.index()] = true;
    if (at == dst) return std::move(label.path);
    for (const auto& n : substrate.neighbors(at)) {
      if (settled[n.to.index()] || link_residuals[n.link.index()] < demand) continue;
      Label next{label.cost + substrate.link_spec(n.link).unit_cost, label.hops + 1, label.path};
      next.path.push_back(n.to);
      frontier.push(std::move(next));
    }
  }
  return std::nullopt;
}

std::optional<Path> cheapest_feasible_path(const SubstrateView& view, SwitchId src, SwitchId dst,
                                           Amount demand) {
  return cheapest_feasible_path(view.substrate(), view.effective().links, src, dst, demand);
}

std::vector<std::size_t> link_order(const VirtualNetworkRequest& request) {
  std::vector<std::size_t> order(request.link_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return request.links[x].demand > request.links[y].demand;
  });
  return order;
}

EmbedOutcome embed(const Substrate& substrate, const Residuals& residuals,
                   const VirtualNetworkRequest& request) {
  EmbedOutcome out;
  auto nodes = greedy_node_map(substrate, residuals, request);
  if (!nodes) {
    out.rejection = RejectStage::node;
    return out;
  }
  Mapping mapping;
  mapping.node_map = std::move(*nodes);
  mapping.link_map.resize(request.link_count());
  auto working = residuals.links;
  for (auto e : link_order(request)) {
    const auto& vl = request.links[e];
    auto path = cheapest_feasible_path(substrate, working, mapping.node_map[vl.a],
                                       mapping.node_map[vl.b], vl.demand);
    if (!path) {
      out.rejection = RejectStage::link;
      return out;
    }
    consume(substrate, working, *path, vl.demand);
    mapping.link_map[e] = std::move(*path);
  }
  out.cost = mapping_cost(substrate, request, mapping);
  out.mapping = std::move(mapping);
  return out;
}

EmbedOutcome embed(const SubstrateView& view, const VirtualNetworkRequest& request) {
  return embed(view.substrate(), view.effective(), request);
}

SplitOutcome splitting_embed(const Substrate& substrate, const Residuals& residuals,
                             const VirtualNetworkRequest& request, std::size_t max_paths) {
  if (max_paths == 0) throw std::invalid_argument("max_paths must be at least 1");
  SplitOutcome out;
  auto nodes = greedy_node_map(substrate, residuals, request);
  if (!nodes) {
    out.rejection = RejectStage::node;
    return out;
  }
  SplitMapping mapping;
  mapping.node_map = std::move(*nodes);
  mapping.link_map.resize(request.link_count());
  auto working = residuals.links;
  for (auto e : link_order(request)) {
    const auto& vl = request.links[e];
    const auto src = mapping.node_map[vl.a];
    const auto dst = mapping.node_map[vl.b];
    auto& shares = mapping.link_map[e];
    Amount remaining = vl.demand;
    while (remaining > 0) {
      if (auto whole = cheapest_feasible_path(substrate, working, src, dst, remaining)) {
        consume(substrate, working, *whole, remaining);
        shares.push_back({std::move(*whole), remaining});
        remaining = 0;
        break;
      }
      if (shares.size() + 1 >= max_paths) break;
      auto partial = cheapest_feasible_path(substrate, working, src, dst, 1);
      if (!partial) break;
      const auto carried = bottleneck(substrate, working, *partial);
      consume(substrate, working, *partial, carried);
      shares.push_back({std::move(*partial), carried});
      remaining -= carried;
    }
    if (remaining > 0) {
      out.rejection = RejectStage::link;
      return out;
    }
  }
  out.cost = mapping_cost(substrate, request, mapping);
  out.mapping = std::move(mapping);
  return out;
}

SplitOutcome splitting_embed(const SubstrateView& view, const VirtualNetworkRequest& request,
                             std::size_t max_paths) {
  return splitting_embed(view.substrate(), view.effective(), request, max_paths);
}

}  // namespace vnesim
