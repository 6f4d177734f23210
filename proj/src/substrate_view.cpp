#include "vnesim/substrate_view.hpp"

#include <algorithm>
#include <stdexcept>

namespace vnesim {

namespace {

template <class Key>
void add_use(std::vector<std::pair<Key, Amount>>& uses, Key key, Amount amount) {
  auto it = std::lower_bound(uses.begin(), uses.end(), key,
                             [](const auto& p, Key k) { return p.first < k; });
  if (it != uses.end() && it->first == key) {
    it->second += amount;
  } else {
    uses.insert(it, {key, amount});
  }
}

std::vector<std::pair<LinkId, Amount>> link_uses(const Substrate& substrate,
                                                 const SplitMapping& placement) {
  std::vector<std::pair<LinkId, Amount>> uses;
  for (std::size_t e = 0; e < placement.link_map.size(); ++e) {
    for (const auto& share : placement.link_map[e]) {
      auto links = substrate.path_links(share.path);
      if (!links) {
        throw StructuralError("path of virtual link " + std::to_string(e) + " is not connected");
      }
      for (auto l : *links) add_use(uses, l, share.bandwidth);
    }
  }
  return uses;
}

}  // namespace

Residuals Residuals::totals(const Substrate& substrate) {
  Residuals r;
  for (const auto& s : substrate.switches()) r.switches.push_back(s.capacity);
  for (const auto& l : substrate.links()) r.links.push_back(l.bandwidth);
  return r;
}

const char* to_string(ReserveStatus s) {
  switch (s) {
    case ReserveStatus::ok:
      return "ok";
    case ReserveStatus::insufficient_switch:
      return "insufficient_switch";
    case ReserveStatus::insufficient_link:
      return "insufficient_link";
    case ReserveStatus::duplicate_request:
      return "duplicate_request";
    case ReserveStatus::invalid_state:
      return "invalid_state";
  }
  return "unknown";
}

Amount Reservation::rule_count() const {
  Amount n = 0;
  for (const auto& [s, r] : rule_use) n += r;
  return n;
}

SubstrateView::SubstrateView(const Substrate& substrate)
    : substrate_(&substrate),
      tentative_switch_(substrate.switch_count(), 0),
      tentative_link_(substrate.link_count(), 0) {
  auto totals = Residuals::totals(substrate);
  committed_switch_ = std::move(totals.switches);
  committed_link_ = std::move(totals.links);
}

Amount SubstrateView::switch_residual(SwitchId s) const {
  return committed_switch_.at(s.index()) - tentative_switch_.at(s.index());
}

Amount SubstrateView::link_residual(LinkId l) const {
  return committed_link_.at(l.index()) - tentative_link_.at(l.index());
}

Residuals SubstrateView::effective() const {
  Residuals r;
  r.switches.resize(committed_switch_.size());
  r.links.resize(committed_link_.size());
  for (std::size_t i = 0; i < r.switches.size(); ++i) {
    r.switches[i] = committed_switch_[i] - tentative_switch_[i];
  }
  for (std::size_t i = 0; i < r.links.size(); ++i) {
    r.links[i] = committed_link_[i] - tentative_link_[i];
  }
  return r;
}

Residuals SubstrateView::committed_only() const { return {committed_switch_, committed_link_}; }

double SubstrateView::switch_utilization(SwitchId s) const {
  const auto total = substrate_->capacity(s);
  return static_cast<double>(total - switch_residual(s)) / static_cast<double>(total);
}

double SubstrateView::link_utilization(LinkId l) const {
  const auto total = substrate_->bandwidth(l);
  return static_cast<double>(total - link_residual(l)) / static_cast<double>(total);
}

ReserveStatus SubstrateView::reserve(const VirtualNetworkRequest& request, const Mapping& mapping,
                                     Stage stage) {
  return reserve(request, as_split(mapping, request), stage);
}

ReserveStatus SubstrateView::reserve(const VirtualNetworkRequest& request,
                                     const SplitMapping& mapping, Stage stage) {
  if (mapping.node_map.size() != request.node_count() ||
      mapping.link_map.size() != request.link_count()) {
    throw StructuralError("mapping does not match request " + std::to_string(request.id.value));
  }
  Reservation r;
  r.placement = mapping;
  r.node_demands = request.node_demands;
  for (const auto& l : request.links) r.link_demands.push_back(l.demand);
  for (std::size_t v = 0; v < mapping.node_map.size(); ++v) {
    if (!substrate_->has_switch(mapping.node_map[v])) {
      throw StructuralError("mapping references unknown switch");
    }
    add_use(r.switch_use, mapping.node_map[v], request.node_demands[v]);
  }
  r.link_use = link_uses(*substrate_, mapping);
  return reserve_impl(request.id, std::move(r), stage);
}

ReserveStatus SubstrateView::reserve_impl(RequestId id, Reservation r, Stage stage) {
  if (reservations_.contains(id)) return ReserveStatus::duplicate_request;
  for (const auto& [s, a] : r.switch_use) {
    if (a > switch_residual(s)) return ReserveStatus::insufficient_switch;
  }
  for (const auto& [l, a] : r.link_use) {
    if (a > link_residual(l)) return ReserveStatus::insufficient_link;
  }
  auto& switch_side = stage == Stage::tentative ? tentative_switch_ : committed_switch_;
  auto& link_side = stage == Stage::tentative ? tentative_link_ : committed_link_;
  const Amount sign = stage == Stage::tentative ? 1 : -1;
  for (const auto& [s, a] : r.switch_use) switch_side[s.index()] += sign * a;
  for (const auto& [l, a] : r.link_use) link_side[l.index()] += sign * a;
  r.stage = stage;
  released_.erase(id);
  reservations_.emplace(id, std::move(r));
  ++version_;
  return ReserveStatus::ok;
}

ReserveStatus SubstrateView::commit(RequestId id, std::span<const SwitchId> rule_switches) {
  auto it = reservations_.find(id);
  if (it == reservations_.end() || it->second.stage != Stage::tentative) {
    return ReserveStatus::invalid_state;
  }
  std::vector<std::pair<SwitchId, Amount>> rules;
  for (auto s : rule_switches) {
    if (!substrate_->has_switch(s)) throw StructuralError("rule on unknown switch");
    add_use(rules, s, Amount{1});
  }
  for (const auto& [s, n] : rules) {
    if (n > switch_residual(s)) return ReserveStatus::insufficient_switch;
  }
  auto& r = it->second;
  for (const auto& [s, a] : r.switch_use) {
    tentative_switch_[s.index()] -= a;
    committed_switch_[s.index()] -= a;
  }
  for (const auto& [l, a] : r.link_use) {
    tentative_link_[l.index()] -= a;
    committed_link_[l.index()] -= a;
  }
  for (const auto& [s, n] : rules) committed_switch_[s.index()] -= n;
  r.rule_use = std::move(rules);
  r.stage = Stage::committed;
  ++version_;
  return ReserveStatus::ok;
}

ReserveStatus SubstrateView::reroute_link(RequestId id, std::size_t vlink, const Path& new_path) {
  auto it = reservations_.find(id);
  if (it == reservations_.end() || it->second.stage != Stage::tentative) {
    return ReserveStatus::invalid_state;
  }
  auto& r = it->second;
  if (vlink >= r.placement.link_map.size() || r.placement.link_map[vlink].size() != 1) {
    return ReserveStatus::invalid_state;
  }
  auto& share = r.placement.link_map[vlink].front();
  if (new_path.size() < 2 ||
      std::minmax(new_path.front(), new_path.back()) !=
          std::minmax(share.path.front(), share.path.back())) {
    throw StructuralError("rerouted path must keep the virtual link's endpoints");
  }
  auto old_links = substrate_->path_links(share.path);
  auto new_links = substrate_->path_links(new_path);
  if (!new_links) throw StructuralError("rerouted path is not connected");

  std::vector<std::pair<LinkId, Amount>> delta;
  for (auto l : *new_links) add_use(delta, l, share.bandwidth);
  for (auto l : *old_links) add_use(delta, l, -share.bandwidth);
  for (const auto& [l, d] : delta) {
    if (d > link_residual(l)) return ReserveStatus::insufficient_link;
  }
  for (const auto& [l, d] : delta) tentative_link_[l.index()] += d;
  share.path = new_path;
  r.link_use = link_uses(*substrate_, r.placement);
  ++version_;
  return ReserveStatus::ok;
}

ReleaseStatus SubstrateView::release(RequestId id) {
  auto it = reservations_.find(id);
  if (it == reservations_.end()) {
    if (released_.contains(id)) return ReleaseStatus::already_released;
    throw std::out_of_range("release of unknown request " + std::to_string(id.value));
  }
  const auto& r = it->second;
  if (r.stage == Stage::tentative) {
    for (const auto& [s, a] : r.switch_use) tentative_switch_[s.index()] -= a;
    for (const auto& [l, a] : r.link_use) tentative_link_[l.index()] -= a;
  } else {
    for (const auto& [s, a] : r.switch_use) committed_switch_[s.index()] += a;
    for (const auto& [l, a] : r.link_use) committed_link_[l.index()] += a;
    for (const auto& [s, n] : r.rule_use) committed_switch_[s.index()] += n;
  }
  reservations_.erase(it);
  released_.insert(id);
  ++version_;
  return ReleaseStatus::released;
}

const Reservation* SubstrateView::find(RequestId id) const {
  auto it = reservations_.find(id);
  return it == reservations_.end() ? nullptr : &it->second;
}

std::optional<std::string> SubstrateView::conservation_error() const {
  const auto ns = substrate_->switch_count();
  const auto nl = substrate_->link_count();
  std::vector<Amount> held_switch(ns, 0), held_link(nl, 0), tent_switch(ns, 0), tent_link(nl, 0);
  for (const auto& [id, r] : reservations_) {
    if (r.stage == Stage::committed) {
      for (const auto& [s, a] : r.switch_use) held_switch[s.index()] += a;
      for (const auto& [s, n] : r.rule_use) held_switch[s.index()] += n;
      for (const auto& [l, a] : r.link_use) held_link[l.index()] += a;
    } else {
      for (const auto& [s, a] : r.switch_use) tent_switch[s.index()] += a;
      for (const auto& [l, a] : r.link_use) tent_link[l.index()] += a;
    }
  }
  for (std::size_t i = 0; i < ns; ++i) {
    const auto name = "switch index " + std::to_string(i);
    const auto total = substrate_->switches()[i].capacity;
    if (committed_switch_[i] + held_switch[i] != total) return name + ": committed ledger mismatch";
    if (tentative_switch_[i] != tent_switch[i]) return name + ": tentative overlay mismatch";
    const auto eff = committed_switch_[i] - tentative_switch_[i];
    if (eff < 0 || committed_switch_[i] > total) return name + ": residual out of range";
  }
  for (std::size_t i = 0; i < nl; ++i) {
    const auto name = "link index " + std::to_string(i);
    const auto total = substrate_->links()[i].bandwidth;
    if (committed_link_[i] + held_link[i] != total) return name + ": committed ledger mismatch";
    if (tentative_link_[i] != tent_link[i]) return name + ": tentative overlay mismatch";
    const auto eff = committed_link_[i] - tentative_link_[i];
    if (eff < 0 || committed_link_[i] > total) return name + ": residual out of range";
  }
  return std::nullopt;
}

}  // namespace vnesim
