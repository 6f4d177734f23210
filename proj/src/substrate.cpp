#include "vnesim/substrate.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace vnesim {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<std::size_t> component_representatives(
    std::size_t node_count, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  std::vector<std::size_t> parent(node_count);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [a, b] : edges) {
    auto ra = find_root(parent, a);
    auto rb = find_root(parent, b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < node_count; ++i) {
    if (find_root(parent, i) == i) reps.push_back(i);
  }
  return reps;
}

Substrate::Substrate(std::vector<SwitchSpec> switches, std::vector<LinkSpec> links) {
  if (switches.empty()) throw TopologyError("substrate has no switches");

  std::vector<std::size_t> order(switches.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return switches[x].label < switches[y].label;
  });
  std::vector<std::size_t> new_index(switches.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_index[order[i]] = i;
    switches_.push_back(switches[order[i]]);
  }
  for (std::size_t i = 0; i < switches_.size(); ++i) {
    const auto& s = switches_[i];
    if (i > 0 && switches_[i - 1].label == s.label) {
      throw TopologyError("duplicate switch " + std::to_string(s.label));
    }
    if (s.capacity <= 0) {
      throw TopologyError("switch " + std::to_string(s.label) + " has non-positive capacity");
    }
    if (s.unit_cost < 0) {
      throw TopologyError("switch " + std::to_string(s.label) + " has negative unit cost");
    }
  }

  adjacency_.resize(switches_.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto link : links) {
    if (link.a.index() >= switches.size() || link.b.index() >= switches.size()) {
      throw TopologyError("link references unknown switch");
    }
    link.a = SwitchId(new_index[link.a.index()]);
    link.b = SwitchId(new_index[link.b.index()]);
    const auto la = switches_[link.a.index()].label;
    const auto lb = switches_[link.b.index()].label;
    const auto name = std::to_string(la) + "-" + std::to_string(lb);
    if (link.a == link.b) throw TopologyError("self-loop on switch " + std::to_string(la));
    if (link.bandwidth <= 0) throw TopologyError("link " + name + " has non-positive bandwidth");
    if (link.unit_cost < 0) throw TopologyError("link " + name + " has negative unit cost");
    const std::pair<std::size_t, std::size_t> key = std::minmax(link.a.index(), link.b.index());
    if (!seen.insert(key).second) throw TopologyError("duplicate link " + name);

    LinkId id(links_.size());
    links_.push_back(link);
    adjacency_[link.a.index()].push_back({link.b, id});
    adjacency_[link.b.index()].push_back({link.a, id});
    edges.emplace_back(link.a.index(), link.b.index());
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.to < y.to; });
  }

  auto reps = component_representatives(switches_.size(), edges);
  if (reps.size() > 1) {
    std::string msg = "substrate is disconnected; components contain switches";
    for (auto r : reps) msg += " " + std::to_string(switches_[r].label);
    throw TopologyError(msg);
  }
}

std::optional<LinkId> Substrate::find_link(SwitchId a, SwitchId b) const {
  if (!has_switch(a) || !has_switch(b)) return std::nullopt;
  const auto& adj = adjacency_[a.index()];
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Neighbor& n, SwitchId v) { return n.to < v; });
  if (it == adj.end() || it->to != b) return std::nullopt;
  return it->link;
}

std::optional<SwitchId> Substrate::find_label(std::int64_t label) const {
  auto it = std::lower_bound(switches_.begin(), switches_.end(), label,
                             [](const SwitchSpec& s, std::int64_t v) { return s.label < v; });
  if (it == switches_.end() || it->label != label) return std::nullopt;
  return SwitchId(static_cast<std::size_t>(it - switches_.begin()));
}

std::optional<std::vector<LinkId>> Substrate::path_links(const Path& path) const {
  std::vector<LinkId> out;
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto l = find_link(path[i - 1], path[i]);
    if (!l) return std::nullopt;
    out.push_back(*l);
  }
  return out;
}

std::vector<LinkId> Substrate::links_on(const Path& path) const {
  auto links = path_links(path);
  if (!links) throw std::invalid_argument("path contains non-adjacent switches");
  return std::move(*links);
}

Substrate Substrate::scaled(Amount factor) const {
  Substrate copy = *this;
  for (auto& s : copy.switches_) s.capacity *= factor;
  for (auto& l : copy.links_) l.bandwidth *= factor;
  return copy;
}

bool operator==(const Substrate& x, const Substrate& y) {
  if (x.switches_.size() != y.switches_.size() || x.links_.size() != y.links_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.switches_.size(); ++i) {
    const auto& a = x.switches_[i];
    const auto& b = y.switches_[i];
    if (a.label != b.label || a.capacity != b.capacity || a.unit_cost != b.unit_cost) {
      return false;
    }
  }
  // Link order may differ between files; compare as sets keyed by endpoints.
  auto key = [](const LinkSpec& l) {
    auto [lo, hi] = std::minmax(l.a, l.b);
    return std::tuple(lo, hi, l.bandwidth, l.unit_cost);
  };
  std::vector<decltype(key(x.links_[0]))> kx, ky;
  for (const auto& l : x.links_) kx.push_back(key(l));
  for (const auto& l : y.links_) ky.push_back(key(l));
  std::sort(kx.begin(), kx.end());
  std::sort(ky.begin(), ky.end());
  return kx == ky;
}

}  // namespace vnesim
