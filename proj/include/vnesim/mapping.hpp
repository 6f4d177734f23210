#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vnesim/substrate.hpp"
#include "vnesim/virtual_network.hpp"

namespace vnesim {

class SubstrateView;
struct Residuals;

// Single-path embedding: node_map[v] hosts virtual node v, link_map[e] is
// the substrate path carrying virtual link e.
struct Mapping {
  std::vector<SwitchId> node_map;
  std::vector<Path> link_map;

  friend bool operator==(const Mapping&, const Mapping&) = default;
};

struct PathShare {
  Path path;
  Amount bandwidth = 0;

  friend bool operator==(const PathShare&, const PathShare&) = default;
};

// Embedding where a virtual link may be carried by several paths. The
// per-path bandwidths of a link sum to its demand exactly.
struct SplitMapping {
  std::vector<SwitchId> node_map;
  std::vector<std::vector<PathShare>> link_map;

  friend bool operator==(const SplitMapping&, const SplitMapping&) = default;
};

double share_fraction(const PathShare& share, const VirtualLink& link);

SplitMapping as_split(const Mapping& mapping, const VirtualNetworkRequest& request);
// Inverse of as_split when every link uses exactly one path.
std::optional<Mapping> as_single_path(const SplitMapping& mapping);

// A mapping that cannot be interpreted against the request or substrate at
// all (wrong sizes, unknown switches). Distinct from a constraint violation.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Constraint {
  node_capacity,   // host lacks free memory for the node demand
  injectivity,     // two virtual nodes of one request share a switch
  path_existence,  // link has no valid simple hosting path
  path_bandwidth,  // a substrate link lacks bandwidth for the routed demand
};

const char* to_string(Constraint c);

struct Violation {
  Constraint constraint;
  std::string element;  // e.g. "switch 3", "virtual link 2", "link 4-7"

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool violates(Constraint c) const;
};

// Residual checks aggregate per element: several virtual links routed over
// one substrate link must fit together, so a valid mapping can always be
// reserved without driving anything negative.
ValidationResult validate_mapping(const Substrate& substrate, const Residuals& residuals,
                                  const VirtualNetworkRequest& request, const Mapping& mapping);
ValidationResult validate_mapping(const SubstrateView& view, const VirtualNetworkRequest& request,
                                  const Mapping& mapping);
ValidationResult validate_mapping(const Substrate& substrate, const Residuals& residuals,
                                  const VirtualNetworkRequest& request,
                                  const SplitMapping& mapping);

// Sum of host unit cost * node demand plus, per virtual link, unit cost of
// every substrate link on its path * link demand. Independent of residuals.
Amount mapping_cost(const Substrate& substrate, const VirtualNetworkRequest& request,
                    const Mapping& mapping);
// Split variant charges each path by the bandwidth it carries.
Amount mapping_cost(const Substrate& substrate, const VirtualNetworkRequest& request,
                    const SplitMapping& mapping);

// Cost of routing `demand` over `path`.
Amount path_cost(const Substrate& substrate, const Path& path, Amount demand);

}  // namespace vnesim
