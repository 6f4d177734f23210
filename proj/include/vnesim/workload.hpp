#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vnesim/random.hpp"
#include "vnesim/substrate.hpp"
#include "vnesim/virtual_network.hpp"

namespace vnesim {

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

enum class SubstrateSource { builtin_default, file, random };

struct GeneratorSpec {
  SubstrateSource source = SubstrateSource::builtin_default;
  std::filesystem::path substrate_path;   // for SubstrateSource::file
  std::size_t switch_count = 14;          // for SubstrateSource::random
  double substrate_edge_probability = 0.15;
  IntRange capacity{100, 250};            // switch memory and link bandwidth
  Amount capacity_scale = 1;              // multiplies every capacity afterwards

  IntRange node_count{3, 10};
  IntRange node_demand{1, 50};
  IntRange link_demand{1, 50};
  double edge_probability = 0.5;          // extra virtual links beyond the spanning tree

  double mean_interarrival = kMeanInterarrival;
  double mean_lifetime = kMeanLifetime;

  // Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

// Topology shape of the built-in 14-switch substrate, in topology file syntax.
std::string_view default_topology_text();

// Built-in ring-plus-chords topology with capacities and bandwidths redrawn
// uniformly from `capacity`, switches first in id order, then links in file
// order. Unit costs are 1.
Substrate default_substrate(Rng& rng, IntRange capacity = {100, 250});

// Uniform random spanning tree plus each other pair with probability `p`.
Substrate random_substrate(Rng& rng, std::size_t switches, IntRange capacity, double p);

// Substrate selected by the spec, with capacity_scale applied.
Substrate make_substrate(const GeneratorSpec& spec, RandomStreams& streams);

// Node count uniform in spec.node_count; uniform random labeled spanning tree
// (Pruefer code) plus each remaining pair with spec.edge_probability. The
// structure and demands come from the request's own stream; the lifetime is
// the next draw of the shared lifetime stream.
VirtualNetworkRequest gen_virtual_request(RandomStreams& streams, const GeneratorSpec& spec,
                                          RequestId id, Time arrival);

// `count` requests with exponential inter-arrivals starting from time 0.
std::vector<VirtualNetworkRequest> generate_workload(RandomStreams& streams,
                                                     const GeneratorSpec& spec, std::size_t count);

// Topology file:
//   switch <id> <capacity> [unit_cost]
//   link <id_a> <id_b> <bandwidth> [unit_cost]
// '#' starts a comment. Errors are TopologyError("<source>:<line>: ...").
Substrate parse_substrate(std::istream& in, const std::string& source = "<input>");
Substrate load_substrate(const std::filesystem::path& path);
void write_substrate(std::ostream& out, const Substrate& substrate);

}  // namespace vnesim
