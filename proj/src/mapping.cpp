#include "vnesim/mapping.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vnesim/substrate_view.hpp"

namespace vnesim {

void check_request(const VirtualNetworkRequest& request) {
  const auto n = request.node_count();
  for (std::size_t v = 0; v < n; ++v) {
    if (request.node_demands[v] <= 0) {
      throw std::invalid_argument("virtual node " + std::to_string(v) + " has non-positive demand");
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t e = 0; e < request.link_count(); ++e) {
    const auto& link = request.links[e];
    const auto name = "virtual link " + std::to_string(e);
    if (link.a >= n || link.b >= n) throw std::invalid_argument(name + " has unknown endpoint");
    if (link.a == link.b) throw std::invalid_argument(name + " is a self-link");
    if (link.demand <= 0) throw std::invalid_argument(name + " has non-positive demand");
    if (!pairs.insert(std::minmax(link.a, link.b)).second) {
      throw std::invalid_argument(name + " duplicates another link");
    }
    edges.emplace_back(link.a, link.b);
  }
  if (n > 0 && component_representatives(n, edges).size() != 1) {
    throw std::invalid_argument("demand graph is disconnected");
  }
}

double share_fraction(const PathShare& share, const VirtualLink& link) {
  return static_cast<double>(share.bandwidth) / static_cast<double>(link.demand);
}

SplitMapping as_split(const Mapping& mapping, const VirtualNetworkRequest& request) {
  if (mapping.link_map.size() != request.link_count()) {
    throw StructuralError("mapping covers " + std::to_string(mapping.link_map.size()) +
                          " virtual links, request has " + std::to_string(request.link_count()));
  }
  SplitMapping out;
  out.node_map = mapping.node_map;
  out.link_map.reserve(mapping.link_map.size());
  for (std::size_t e = 0; e < mapping.link_map.size(); ++e) {
    out.link_map.push_back({PathShare{mapping.link_map[e], request.links[e].demand}});
  }
  return out;
}

std::optional<Mapping> as_single_path(const SplitMapping& mapping) {
  Mapping out;
  out.node_map = mapping.node_map;
  for (const auto& shares : mapping.link_map) {
    if (shares.size() != 1) return std::nullopt;
    out.link_map.push_back(shares.front().path);
  }
  return out;
}

const char* to_string(Constraint c) {
  switch (c) {
    case Constraint::node_capacity:
      return "node_capacity";
    case Constraint::injectivity:
      return "injectivity";
    case Constraint::path_existence:
      return "path_existence";
    case Constraint::path_bandwidth:
      return "path_bandwidth";
  }
  return "unknown";
}

bool ValidationResult::violates(Constraint c) const {
  return std::any_of(violations.begin(), violations.end(),
                     [c](const Violation& v) { return v.constraint == c; });
}

namespace {

std::string switch_name(const Substrate& s, SwitchId id) {
  return "switch " + std::to_string(s.switch_spec(id).label);
}

std::string link_name(const Substrate& s, LinkId id) {
  const auto& l = s.link_spec(id);
  return "link " + std::to_string(s.switch_spec(l.a).label) + "-" +
         std::to_string(s.switch_spec(l.b).label);
}

void check_structure(const Substrate& substrate, const VirtualNetworkRequest& request,
                     const SplitMapping& mapping) {
  if (mapping.node_map.size() != request.node_count()) {
    throw StructuralError("mapping places " + std::to_string(mapping.node_map.size()) +
                          " virtual nodes, request has " + std::to_string(request.node_count()));
  }
  if (mapping.link_map.size() != request.link_count()) {
    throw StructuralError("mapping covers " + std::to_string(mapping.link_map.size()) +
                          " virtual links, request has " + std::to_string(request.link_count()));
  }
  for (auto s : mapping.node_map) {
    if (!substrate.has_switch(s)) {
      throw StructuralError("mapping references unknown switch index " + std::to_string(s.value));
    }
  }
  for (std::size_t e = 0; e < mapping.link_map.size(); ++e) {
    Amount total = 0;
    for (const auto& share : mapping.link_map[e]) {
      for (auto s : share.path) {
        if (!substrate.has_switch(s)) {
          throw StructuralError("path of virtual link " + std::to_string(e) +
                                " references unknown switch index " + std::to_string(s.value));
        }
      }
      if (share.bandwidth <= 0) {
        throw StructuralError("virtual link " + std::to_string(e) + " has a non-positive share");
      }
      total += share.bandwidth;
    }
    if (!mapping.link_map[e].empty() && total != request.links[e].demand) {
      throw StructuralError("shares of virtual link " + std::to_string(e) +
                            " do not sum to its demand");
    }
  }
}

bool is_hosting_path(const Substrate& substrate, const Path& path, SwitchId from, SwitchId to) {
  if (path.size() < 2) return false;
  const bool forward = path.front() == from && path.back() == to;
  const bool backward = path.front() == to && path.back() == from;
  if (!forward && !backward) return false;
  std::set<SwitchId> seen(path.begin(), path.end());
  if (seen.size() != path.size()) return false;
  return substrate.path_links(path).has_value();
}

ValidationResult validate_split(const Substrate& substrate, const Residuals& residuals,
                                const VirtualNetworkRequest& request, const SplitMapping& mapping) {
  check_structure(substrate, request, mapping);
  ValidationResult result;

  std::map<SwitchId, std::vector<std::size_t>> hosted;
  for (std::size_t v = 0; v < mapping.node_map.size(); ++v) {
    hosted[mapping.node_map[v]].push_back(v);
  }
  for (const auto& [s, nodes] : hosted) {
    if (nodes.size() > 1) {
      std::string who = "virtual nodes";
      for (auto v : nodes) who += " " + std::to_string(v);
      result.violations.push_back({Constraint::injectivity, who + " on " + switch_name(substrate, s)});
    }
    Amount demand = 0;
    for (auto v : nodes) demand += request.node_demands[v];
    if (demand > residuals.switches.at(s.index())) {
      result.violations.push_back({Constraint::node_capacity, switch_name(substrate, s)});
    }
  }

  std::map<LinkId, Amount> load;
  for (std::size_t e = 0; e < mapping.link_map.size(); ++e) {
    const auto& vl = request.links[e];
    const auto from = mapping.node_map[vl.a];
    const auto to = mapping.node_map[vl.b];
    const auto& shares = mapping.link_map[e];
    bool ok = !shares.empty();
    for (const auto& share : shares) ok = ok && is_hosting_path(substrate, share.path, from, to);
    if (!ok) {
      result.violations.push_back({Constraint::path_existence, "virtual link " + std::to_string(e)});
      continue;
    }
    for (const auto& share : shares) {
      for (auto l : substrate.links_on(share.path)) load[l] += share.bandwidth;
    }
  }
  for (const auto& [l, amount] : load) {
    if (amount > residuals.links.at(l.index())) {
      result.violations.push_back({Constraint::path_bandwidth, link_name(substrate, l)});
    }
  }
  return result;
}

}  // namespace

ValidationResult validate_mapping(const Substrate& substrate, const Residuals& residuals,
                                  const VirtualNetworkRequest& request, const Mapping& mapping) {
  if (mapping.node_map.size() != request.node_count()) {
    throw StructuralError("mapping places " + std::to_string(mapping.node_map.size()) +
                          " virtual nodes, request has " + std::to_string(request.node_count()));
  }
  return validate_split(substrate, residuals, request, as_split(mapping, request));
}

ValidationResult validate_mapping(const SubstrateView& view, const VirtualNetworkRequest& request,
                                  const Mapping& mapping) {
  return validate_mapping(view.substrate(), view.effective(), request, mapping);
}

ValidationResult validate_mapping(const Substrate& substrate, const Residuals& residuals,
                                  const VirtualNetworkRequest& request,
                                  const SplitMapping& mapping) {
  return validate_split(substrate, residuals, request, mapping);
}

Amount path_cost(const Substrate& substrate, const Path& path, Amount demand) {
  auto links = substrate.path_links(path);
  if (!links) throw StructuralError("path is not connected in the substrate");
  Amount cost = 0;
  for (auto l : *links) cost += substrate.link_spec(l).unit_cost * demand;
  return cost;
}

Amount mapping_cost(const Substrate& substrate, const VirtualNetworkRequest& request,
                    const Mapping& mapping) {
  return mapping_cost(substrate, request, as_split(mapping, request));
}

Amount mapping_cost(const Substrate& substrate, const VirtualNetworkRequest& request,
                    const SplitMapping& mapping) {
  check_structure(substrate, request, mapping);
  Amount cost = 0;
  for (std::size_t v = 0; v < mapping.node_map.size(); ++v) {
    cost += substrate.switch_spec(mapping.node_map[v]).unit_cost * request.node_demands[v];
  }
  for (const auto& shares : mapping.link_map) {
    for (const auto& share : shares) cost += path_cost(substrate, share.path, share.bandwidth);
  }
  return cost;
}

}  // namespace vnesim
