#include "vnesim/workload.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace vnesim {

void GeneratorSpec::validate() const {
  auto range = [](const IntRange& r, std::int64_t floor, const char* name) {
    if (r.lo > r.hi || r.lo < floor) {
      throw std::invalid_argument(std::string(name) + " range [" + std::to_string(r.lo) + ", " +
                                  std::to_string(r.hi) + "] is invalid");
    }
  };
  range(capacity, 1, "capacity");
  range(node_count, 1, "virtual node count");
  range(node_demand, 1, "node demand");
  range(link_demand, 1, "link demand");
  auto probability = [](double p, const char* name) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must be in (0, 1]");
  };
  probability(edge_probability, "edge probability");
  probability(substrate_edge_probability, "substrate edge probability");
  if (capacity_scale < 1) throw std::invalid_argument("capacity scale must be at least 1");
  if (source == SubstrateSource::random && switch_count < 2) {
    throw std::invalid_argument("random substrate needs at least 2 switches");
  }
  if (source == SubstrateSource::file && substrate_path.empty()) {
    throw std::invalid_argument("substrate file path is empty");
  }
  if (!(mean_interarrival > 0.0) || !(mean_lifetime > 0.0)) {
    throw std::invalid_argument("mean inter-arrival and lifetime must be positive");
  }
}

namespace {

// Uniform labeled tree on n nodes from a random Pruefer sequence.
std::vector<std::pair<std::size_t, std::size_t>> random_tree(Rng& rng, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (n < 2) return edges;
  if (n == 2) return {{0, 1}};
  std::vector<std::size_t> code(n - 2);
  for (auto& c : code) c = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
  std::vector<std::size_t> degree(n, 1);
  for (auto c : code) ++degree[c];
  for (auto c : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
    --degree[leaf];
    --degree[c];
  }
  std::size_t u = n, v = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] == 1) (u == n ? u : v) = i;
  }
  edges.emplace_back(u, v);
  return edges;
}

// Spanning tree plus independent extra pairs, sorted.
std::vector<std::pair<std::size_t, std::size_t>> random_connected_graph(Rng& rng, std::size_t n,
                                                                        double p) {
  auto tree = random_tree(rng, n);
  std::set<std::pair<std::size_t, std::size_t>> edges(tree.begin(), tree.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (edges.contains({i, j})) continue;
      if (rng.bernoulli(p)) edges.insert({i, j});
    }
  }
  return {edges.begin(), edges.end()};
}

std::string trim_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool parse_int(const std::string& token, std::int64_t& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

}  // namespace

Substrate default_substrate(Rng& rng, IntRange capacity) {
  std::istringstream in{std::string(default_topology_text())};
  auto shape = parse_substrate(in, "default14.topo");
  std::vector<SwitchSpec> switches = shape.switches();
  std::vector<LinkSpec> links = shape.links();
  for (auto& s : switches) s.capacity = rng.uniform_int(capacity.lo, capacity.hi);
  for (auto& l : links) l.bandwidth = rng.uniform_int(capacity.lo, capacity.hi);
  return Substrate(std::move(switches), std::move(links));
}

Substrate random_substrate(Rng& rng, std::size_t n, IntRange capacity, double p) {
  auto edges = random_connected_graph(rng, n, p);
  std::vector<SwitchSpec> switches;
  for (std::size_t i = 0; i < n; ++i) {
    switches.push_back({static_cast<std::int64_t>(i), rng.uniform_int(capacity.lo, capacity.hi), 1});
  }
  std::vector<LinkSpec> links;
  for (auto [a, b] : edges) {
    links.push_back({SwitchId(a), SwitchId(b), rng.uniform_int(capacity.lo, capacity.hi), 1});
  }
  return Substrate(std::move(switches), std::move(links));
}

Substrate make_substrate(const GeneratorSpec& spec, RandomStreams& streams) {
  Substrate base;
  switch (spec.source) {
    case SubstrateSource::builtin_default:
      base = default_substrate(streams.topology(), spec.capacity);
      break;
    case SubstrateSource::file:
      base = load_substrate(spec.substrate_path);
      break;
    case SubstrateSource::random:
      base = random_substrate(streams.topology(), spec.switch_count, spec.capacity,
                              spec.substrate_edge_probability);
      break;
  }
  return spec.capacity_scale == 1 ? base : base.scaled(spec.capacity_scale);
}

VirtualNetworkRequest gen_virtual_request(RandomStreams& streams, const GeneratorSpec& spec,
                                          RequestId id, Time arrival) {
  auto rng = streams.request_stream(id.value);
  VirtualNetworkRequest r;
  r.id = id;
  r.arrival = arrival;
  const auto n = static_cast<std::size_t>(rng.uniform_int(spec.node_count.lo, spec.node_count.hi));
  auto edges = random_connected_graph(rng, n, spec.edge_probability);
  for (std::size_t v = 0; v < n; ++v) {
    r.node_demands.push_back(rng.uniform_int(spec.node_demand.lo, spec.node_demand.hi));
  }
  for (auto [a, b] : edges) {
    r.links.push_back({a, b, rng.uniform_int(spec.link_demand.lo, spec.link_demand.hi)});
  }
  r.lifetime = draw_lifetime(streams.lifetime(), spec.mean_lifetime);
  return r;
}

std::vector<VirtualNetworkRequest> generate_workload(RandomStreams& streams,
                                                     const GeneratorSpec& spec, std::size_t count) {
  std::vector<VirtualNetworkRequest> out;
  out.reserve(count);
  Time now = 0;
  for (std::size_t i = 0; i < count; ++i) {
    now += draw_interarrival(streams.interarrival(), spec.mean_interarrival);
    out.push_back(gen_virtual_request(streams, spec, RequestId(i), now));
  }
  return out;
}

Substrate parse_substrate(std::istream& in, const std::string& source) {
  std::vector<SwitchSpec> switches;
  std::vector<LinkSpec> links;
  std::map<std::int64_t, std::size_t> switch_index;
  std::set<std::pair<std::int64_t, std::int64_t>> seen_links;

  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> TopologyError {
    return TopologyError(source + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(trim_comment(line));
    std::vector<std::string> t;
    for (std::string tok; tokens >> tok;) t.push_back(tok);
    if (t.empty()) continue;

    std::vector<std::int64_t> v(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (!parse_int(t[i], v[i - 1])) throw fail("'" + t[i] + "' is not an integer");
    }
    if (t[0] == "switch") {
      if (v.size() != 2 && v.size() != 3) throw fail("expected: switch <id> <capacity> [unit_cost]");
      SwitchSpec s{v[0], v[1], v.size() == 3 ? v[2] : 1};
      if (s.capacity <= 0) throw fail("switch capacity must be positive");
      if (s.unit_cost < 0) throw fail("unit cost must not be negative");
      if (!switch_index.emplace(s.label, switches.size()).second) {
        throw fail("duplicate switch " + std::to_string(s.label));
      }
      switches.push_back(s);
    } else if (t[0] == "link") {
      if (v.size() != 3 && v.size() != 4) {
        throw fail("expected: link <id_a> <id_b> <bandwidth> [unit_cost]");
      }
      if (v[0] == v[1]) throw fail("self-loop on switch " + std::to_string(v[0]));
      auto a = switch_index.find(v[0]);
      auto b = switch_index.find(v[1]);
      if (a == switch_index.end()) throw fail("unknown switch " + std::to_string(v[0]));
      if (b == switch_index.end()) throw fail("unknown switch " + std::to_string(v[1]));
      if (v[2] <= 0) throw fail("link bandwidth must be positive");
      const Amount cost = v.size() == 4 ? v[3] : 1;
      if (cost < 0) throw fail("unit cost must not be negative");
      if (!seen_links.insert(std::minmax(v[0], v[1])).second) {
        throw fail("duplicate link " + std::to_string(v[0]) + "-" + std::to_string(v[1]));
      }
      links.push_back({SwitchId(a->second), SwitchId(b->second), v[2], cost});
    } else {
      throw fail("unknown keyword '" + t[0] + "'");
    }
  }
  if (switches.empty()) throw TopologyError(source + ": no switches defined");
  try {
    return Substrate(std::move(switches), std::move(links));
  } catch (const TopologyError& e) {
    throw TopologyError(source + ": " + e.what());
  }
}

Substrate load_substrate(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TopologyError(path.string() + ": cannot open file");
  return parse_substrate(in, path.string());
}

void write_substrate(std::ostream& out, const Substrate& substrate) {
  for (const auto& s : substrate.switches()) {
    out << "switch " << s.label << ' ' << s.capacity << ' ' << s.unit_cost << '\n';
  }
  for (const auto& l : substrate.links()) {
    out << "link " << substrate.switch_spec(l.a).label << ' ' << substrate.switch_spec(l.b).label
        << ' ' << l.bandwidth << ' ' << l.unit_cost << '\n';
  }
}

}  // namespace vnesim
