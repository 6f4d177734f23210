#include "vnesim/weights.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "vnesim/embedder.hpp"

namespace vnesim {

namespace {

const Reservation& reservation_for(const SubstrateView& view, const VirtualNetworkRequest& request,
                                   std::size_t vlink, const Path& path) {
  const auto* r = view.find(request.id);
  if (r == nullptr || vlink >= r->placement.link_map.size()) {
    throw std::invalid_argument("virtual link " + std::to_string(vlink) + " of request " +
                                std::to_string(request.id.value) + " holds no reservation");
  }
  const auto& shares = r->placement.link_map[vlink];
  if (shares.size() != 1 || shares.front().path != path) {
    throw std::invalid_argument("path does not match the reservation of virtual link " +
                                std::to_string(vlink));
  }
  return *r;
}

// used / total as an exact fraction.
struct Load {
  Amount used;
  Amount total;

  friend bool operator<(const Load& x, const Load& y) {
    return x.used * y.total < y.used * x.total;
  }
};

}  // namespace

Amount used_resources(const SubstrateView& view, const VirtualNetworkRequest& request,
                      std::size_t vlink, const Path& path) {
  const auto& r = reservation_for(view, request, vlink, path);
  const auto hops = static_cast<Amount>(path.size() - 1);
  const auto switches = static_cast<Amount>(path.size());
  return r.link_demands[vlink] * hops + switches;
}

Amount free_resources(const SubstrateView& view, const VirtualNetworkRequest& request,
                      std::size_t vlink, const Path& path) {
  const auto& r = reservation_for(view, request, vlink, path);
  // A committed link's rule is already charged to the switch.
  const Amount pending_rule = r.stage == Stage::tentative ? 1 : 0;
  Amount total = 0;
  for (auto l : view.substrate().links_on(path)) total += view.link_residual(l);
  for (auto s : path) total += std::max<Amount>(0, view.switch_residual(s) - pending_rule);
  return total;
}

Amount link_weight(const LinkWeightRecord& record) { return record.used - record.free; }

LinkWeightRecord weigh_link(const SubstrateView& view, const VirtualNetworkRequest& request,
                            std::size_t vlink) {
  const auto* r = view.find(request.id);
  if (r == nullptr || vlink >= r->placement.link_map.size() ||
      r->placement.link_map[vlink].size() != 1) {
    throw std::invalid_argument("virtual link " + std::to_string(vlink) +
                                " has no single-path reservation");
  }
  LinkWeightRecord rec;
  rec.request = request.id;
  rec.link = vlink;
  rec.path = r->placement.link_map[vlink].front().path;
  rec.used = used_resources(view, request, vlink, rec.path);
  rec.free = free_resources(view, request, vlink, rec.path);
  rec.weight = link_weight(rec);
  rec.version = view.version();
  return rec;
}

bool is_stale(const LinkWeightRecord& record, const SubstrateView& view) {
  return record.version != view.version();
}

std::vector<LinkWeightRecord> prioritize(std::vector<LinkWeightRecord> records) {
  if (!records.empty()) {
    const auto v = records.front().version;
    for (const auto& r : records) {
      if (r.version != v) throw std::logic_error("prioritize: records from different snapshots");
    }
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const LinkWeightRecord& x, const LinkWeightRecord& y) {
                     if (x.weight != y.weight) return x.weight > y.weight;
                     if (x.used != y.used) return x.used > y.used;
                     return std::tie(x.request, x.link) < std::tie(y.request, y.link);
                   });
  return records;
}

RemapReport remap_pass(SubstrateView& view, PendingBatch& batch) {
  RemapReport report;
  std::map<RequestId, std::size_t> index;
  std::vector<LinkWeightRecord> records;
  for (std::size_t i = 0; i < batch.entries.size(); ++i) {
    const auto& entry = batch.entries[i];
    index[entry.request.id] = i;
    report.cost_before += entry.cost;
    for (std::size_t e = 0; e < entry.mapping.link_map.size(); ++e) {
      if (entry.mapping.link_map[e].size() == 1) records.push_back(weigh_link(view, entry.request, e));
    }
  }

  const auto& substrate = view.substrate();
  for (const auto& rec : prioritize(std::move(records))) {
    auto& entry = batch.entries[index.at(rec.request)];
    const auto& current = entry.mapping.link_map[rec.link].front().path;
    const auto demand = entry.request.links[rec.link].demand;
    const auto old_links = *substrate.path_links(current);

    auto freed = view.effective().links;
    for (auto l : old_links) freed[l.index()] += demand;
    auto candidate =
        cheapest_feasible_path(substrate, freed, current.front(), current.back(), demand);
    if (!candidate || *candidate == current) continue;

    const auto old_cost = path_cost(substrate, current, demand);
    const auto new_cost = path_cost(substrate, *candidate, demand);
    bool adopt = new_cost < old_cost;
    if (new_cost == old_cost) {
      Load old_peak{0, 1};
      for (auto l : old_links) {
        old_peak = std::max(old_peak, Load{substrate.bandwidth(l) - view.link_residual(l),
                                           substrate.bandwidth(l)});
      }
      Load new_peak{0, 1};
      for (auto l : substrate.links_on(*candidate)) {
        new_peak = std::max(new_peak, Load{substrate.bandwidth(l) - (freed[l.index()] - demand),
                                           substrate.bandwidth(l)});
      }
      adopt = new_peak < old_peak;
    }
    if (!adopt) continue;

    if (view.reroute_link(rec.request, rec.link, *candidate) != ReserveStatus::ok) {
      throw std::logic_error("remap_pass: reroute refused for a feasible path");
    }
    entry.mapping.link_map[rec.link].front().path = *candidate;
    entry.cost = mapping_cost(substrate, entry.request, entry.mapping);
    ++report.rerouted;
  }

  for (const auto& entry : batch.entries) report.cost_after += entry.cost;
  return report;
}

}  // namespace vnesim
