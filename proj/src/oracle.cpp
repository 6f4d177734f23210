// Exhaustive embedder used as a test reference. It shares no routing code
// with embedder.cpp: paths come from plain DFS enumeration and costs are
// summed here directly.

#include <algorithm>
#include <limits>
#include <map>

#include "vnesim/embedder.hpp"

namespace vnesim {

namespace {

struct Route {
  std::vector<std::size_t> links;
  Amount unit_cost = 0;
};

class Search {
 public:
  Search(const Substrate& substrate, const Residuals& residuals,
         const VirtualNetworkRequest& request)
      : substrate_(substrate),
        request_(request),
        switch_free_(residuals.switches),
        link_free_(residuals.links),
        adjacency_(substrate.switch_count()) {
    for (std::size_t l = 0; l < substrate.link_count(); ++l) {
      const auto& spec = substrate.links()[l];
      adjacency_[spec.a.index()].push_back({spec.b.index(), l});
      adjacency_[spec.b.index()].push_back({spec.a.index(), l});
    }
    for (std::size_t e = 0; e < request.link_count(); ++e) order_.push_back(e);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return request.links[x].demand > request.links[y].demand;
    });
  }

  OracleResult run() {
    hosts_.assign(request_.node_count(), 0);
    used_.assign(substrate_.switch_count(), false);
    place(0, 0);
    OracleResult r;
    r.feasible = best_ != kNone;
    r.min_cost = r.feasible ? best_ : 0;
    return r;
  }

 private:
  static constexpr Amount kNone = std::numeric_limits<Amount>::max();

  const std::vector<Route>& routes(std::size_t u, std::size_t v) {
    const std::pair<std::size_t, std::size_t> key = std::minmax(u, v);
    auto it = routes_.find(key);
    if (it != routes_.end()) return it->second;
    std::vector<Route> found;
    std::vector<bool> on_path(substrate_.switch_count(), false);
    Route current;
    enumerate(key.first, key.second, on_path, current, found);
    std::stable_sort(found.begin(), found.end(),
                     [](const Route& x, const Route& y) { return x.unit_cost < y.unit_cost; });
    return routes_.emplace(key, std::move(found)).first->second;
  }

  void enumerate(std::size_t at, std::size_t target, std::vector<bool>& on_path, Route& current,
                 std::vector<Route>& found) {
    if (at == target) {
      found.push_back(current);
      return;
    }
    on_path[at] = true;
    for (auto [next, link] : adjacency_[at]) {
      if (on_path[next]) continue;
      current.links.push_back(link);
      current.unit_cost += substrate_.links()[link].unit_cost;
      enumerate(next, target, on_path, current, found);
      current.unit_cost -= substrate_.links()[link].unit_cost;
      current.links.pop_back();
    }
    on_path[at] = false;
  }

  void place(std::size_t v, Amount node_cost) {
    if (v == request_.node_count()) {
      Amount bound = 0;
      for (const auto& vl : request_.links) {
        bound += vl.demand * routes(hosts_[vl.a], hosts_[vl.b]).front().unit_cost;
      }
      if (best_ != kNone && node_cost + bound >= best_) return;
      route(0, node_cost, bound);
      return;
    }
    const auto demand = request_.node_demands[v];
    for (std::size_t s = 0; s < substrate_.switch_count(); ++s) {
      if (used_[s] || switch_free_[s] < demand) continue;
      used_[s] = true;
      hosts_[v] = s;
      place(v + 1, node_cost + substrate_.switches()[s].unit_cost * demand);
      used_[s] = false;
    }
  }

  // `bound` is the capacity-free cheapest cost of the links not yet routed.
  void route(std::size_t i, Amount cost, Amount bound) {
    if (i == order_.size()) {
      best_ = std::min(best_, cost);
      return;
    }
    const auto& vl = request_.links[order_[i]];
    const auto& candidates = routes(hosts_[vl.a], hosts_[vl.b]);
    const auto rest = bound - vl.demand * candidates.front().unit_cost;
    for (const auto& r : candidates) {
      const auto here = cost + vl.demand * r.unit_cost;
      if (best_ != kNone && here + rest >= best_) break;
      bool fits = std::all_of(r.links.begin(), r.links.end(),
                              [&](std::size_t l) { return link_free_[l] >= vl.demand; });
      if (!fits) continue;
      for (auto l : r.links) link_free_[l] -= vl.demand;
      route(i + 1, here, rest);
      for (auto l : r.links) link_free_[l] += vl.demand;
    }
  }

  const Substrate& substrate_;
  const VirtualNetworkRequest& request_;
  std::vector<Amount> switch_free_;
  std::vector<Amount> link_free_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> hosts_;
  std::vector<bool> used_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Route>> routes_;
  Amount best_ = kNone;
};

}  // namespace

OracleResult oracle_embed(const Substrate& substrate, const Residuals& residuals,
                          const VirtualNetworkRequest& request) {
  if (substrate.switch_count() > kOracleMaxSwitches) {
    throw std::invalid_argument("oracle_embed: substrate exceeds " +
                                std::to_string(kOracleMaxSwitches) + " switches");
  }
  if (request.node_count() > kOracleMaxNodes) {
    throw std::invalid_argument("oracle_embed: request exceeds " +
                                std::to_string(kOracleMaxNodes) + " virtual nodes");
  }
  return Search(substrate, residuals, request).run();
}

}  // namespace vnesim
