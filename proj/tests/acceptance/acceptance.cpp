// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "vnesim/embedder.hpp"
#include "vnesim/simulator.hpp"
#include "vnesim/weights.hpp"

namespace vnesim {
namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RunConfig defaults(std::uint64_t seed, std::size_t count = 1500) {
  RunConfig rc;
  rc.seed = seed;
  rc.request_count = count;
  return rc;
}

const StrategyKind kAllKinds[] = {StrategyKind::proposed_batched,
                                  StrategyKind::per_request_dynamic,
                                  StrategyKind::static_splitting};

// Rebuilds every element's books from the reservation list alone.
std::string ledger_mismatch(const Controller& c) {
  const auto& view = c.view();
  const auto& sub = view.substrate();
  std::vector<Amount> held_sw(sub.switch_count(), 0), tent_sw(sub.switch_count(), 0);
  std::vector<Amount> rules(sub.switch_count(), 0);
  std::vector<Amount> held_ln(sub.link_count(), 0), tent_ln(sub.link_count(), 0);
  for (const auto& [id, r] : view.reservations()) {
    auto& sw = r.stage == Stage::committed ? held_sw : tent_sw;
    auto& ln = r.stage == Stage::committed ? held_ln : tent_ln;
    for (const auto& [s, a] : r.switch_use) sw[s.index()] += a;
    for (const auto& [l, a] : r.link_use) ln[l.index()] += a;
    for (const auto& [s, a] : r.rule_use) {
      if (r.stage != Stage::committed) return "rule memory held by a tentative request";
      rules[s.index()] += a;
    }
  }
  for (std::size_t i = 0; i < sub.switch_count(); ++i) {
    const SwitchId s(i);
    const Amount committed = view.committed_switch_residual(s);
    if (committed + held_sw[i] + rules[i] != sub.capacity(s)) return "switch " + std::to_string(i);
    if (view.switch_residual(s) != committed - tent_sw[i] || view.switch_residual(s) < 0) {
      return "switch overlay " + std::to_string(i);
    }
    if (c.rules().installed[i] != rules[i]) return "rule table " + std::to_string(i);
  }
  for (std::size_t i = 0; i < sub.link_count(); ++i) {
    const LinkId l(i);
    const Amount committed = view.committed_link_residual(l);
    if (committed + held_ln[i] != sub.bandwidth(l)) return "link " + std::to_string(i);
    if (view.link_residual(l) != committed - tent_ln[i] || view.link_residual(l) < 0) {
      return "link overlay " + std::to_string(i);
    }
  }
  if (auto e = view.conservation_error()) return "self-check: " + *e;
  return {};
}

Verdict conservation_fuzz() {
  const auto t0 = Clock::now();
  std::size_t events = 0, violations = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto rc = defaults(1000 + seed, 2000);
    rc.strategy.kind = kAllKinds[seed % 3];
    auto sc = build_scenario(rc);
    Engine engine(sc.substrate, rc.resolved_strategy());
    engine.set_observer([&](const Event&, const Controller& c) {
      ++events;
      auto m = ledger_mismatch(c);
      if (!m.empty()) {
        if (first.empty()) first = m;
        ++violations;
      }
    });
    engine.run(sc.workload);
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = violations == 0 && events >= 100000 && secs < 60.0;
  v.detail = fmt("%zu events over 50 seeds, %zu violations, %.1f s", events, violations, secs);
  if (!first.empty()) v.detail += "; first: " + first;
  return v;
}

Verdict oracle_containment() {
  Rng rng(2024);
  std::size_t feasible = 0, accepted = 0, unsound = 0, invalid = 0, cheaper = 0;
  for (int i = 0; i < 500; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(3, 7));
    auto sub = test::random_small_substrate(rng, n, 20, 90, 0.35, 3);
    const auto nodes = static_cast<std::size_t>(rng.uniform_int(2, std::min<std::int64_t>(4, n)));
    auto req = test::random_small_request(rng, 0, nodes, 5, 45);
    const auto res = Residuals::totals(sub);
    const auto oracle = oracle_embed(sub, res, req);
    const auto out = embed(sub, res, req);
    if (oracle.feasible) ++feasible;
    if (!out.accepted()) continue;
    ++accepted;
    if (!oracle.feasible) ++unsound;
    if (!validate_mapping(sub, res, req, *out.mapping).ok()) ++invalid;
    if (oracle.feasible && mapping_cost(sub, req, *out.mapping) < oracle.min_cost) ++cheaper;
  }
  Verdict v;
  v.pass = unsound == 0 && invalid == 0 && cheaper == 0 && accepted * 10 >= feasible * 7;
  v.detail = fmt("oracle feasible %zu, embed accepted %zu (%.1f%%), unsound %zu, invalid %zu, "
                 "below oracle minimum %zu",
                 feasible, accepted, feasible ? 100.0 * accepted / feasible : 0.0, unsound,
                 invalid, cheaper);
  return v;
}

// Cost recomputed from label-keyed tables.
Amount label_cost(const Substrate& sub, const VirtualNetworkRequest& req, const Mapping& m) {
  std::map<std::int64_t, Amount> switch_cost;
  for (const auto& s : sub.switches()) switch_cost[s.label] = s.unit_cost;
  std::map<std::pair<std::int64_t, std::int64_t>, Amount> link_cost;
  for (const auto& l : sub.links()) {
    const auto a = sub.switches()[l.a.index()].label, b = sub.switches()[l.b.index()].label;
    link_cost[{a, b}] = link_cost[{b, a}] = l.unit_cost;
  }
  auto label = [&](SwitchId s) { return sub.switches()[s.index()].label; };
  Amount total = 0;
  for (std::size_t v = 0; v < req.node_count(); ++v) {
    total += req.node_demands[v] * switch_cost.at(label(m.node_map[v]));
  }
  for (std::size_t e = 0; e < req.link_count(); ++e) {
    const auto& p = m.link_map[e];
    for (std::size_t i = 1; i < p.size(); ++i) {
      total += req.links[e].demand * link_cost.at({label(p[i - 1]), label(p[i])});
    }
  }
  return total;
}

Verdict cost_exactness() {
  Rng rng(77);
  std::size_t checked = 0, mismatched = 0, tries = 0;
  while (checked < 100 && tries < 100000) {
    ++tries;
    const auto n = static_cast<std::size_t>(rng.uniform_int(4, 12));
    auto sub = test::random_small_substrate(rng, n, 50, 200, 0.3, 7);
    auto req = test::random_small_request(rng, 0, static_cast<std::size_t>(rng.uniform_int(2, 6)),
                                          1, 40);
    const auto res = Residuals::totals(sub);
    auto out = embed(sub, res, req);
    if (!out.accepted() || !validate_mapping(sub, res, req, *out.mapping).ok()) continue;
    ++checked;
    if (mapping_cost(sub, req, *out.mapping) != label_cost(sub, req, *out.mapping)) ++mismatched;
  }
  Verdict v;
  v.pass = checked == 100 && mismatched == 0;
  v.detail = fmt("%zu valid mappings, %zu mismatches", checked, mismatched);
  return v;
}

Verdict workload_statistics() {
  RandomStreams streams(4242);
  double ia = 0, lt = 0;
  bool positive = true;
  for (int i = 0; i < 100000; ++i) {
    const auto a = draw_interarrival(streams.interarrival());
    const auto b = draw_lifetime(streams.lifetime());
    positive = positive && a > 0 && b > 0;
    ia += to_units(a);
    lt += to_units(b);
  }
  ia /= 100000;
  lt /= 100000;
  auto rc = defaults(4242, 10000);
  rc.generator.capacity_scale = 1'000'000;
  const auto r = run(rc);
  const double conc = r.summary.mean_concurrent;
  Verdict v;
  v.pass = positive && ia >= 4.95 && ia <= 5.05 && lt >= 118.8 && lt <= 121.2 && conc >= 21.0 &&
           conc <= 27.0 && r.summary.accepted == r.summary.arrivals;
  v.detail = fmt("mean inter-arrival %.4f, mean lifetime %.3f, mean concurrent %.2f over %llu "
                 "requests",
                 ia, lt, conc, static_cast<unsigned long long>(r.summary.arrivals));
  return v;
}

Verdict weight_algebra() {
  Verdict v;
  // Two-hop hand example: demand 10 over 0-1-2.
  {
    auto sub = test::make_substrate({100, 100, 100}, {{0, 1, 100}, {1, 2, 100}});
    SubstrateView view(sub);
    auto req = test::make_request(0, {5, 5}, {{0, 1, 10}});
    Mapping m{{SwitchId(0), SwitchId(2)}, {test::path({0, 1, 2})}};
    if (view.reserve(req, m, Stage::tentative) != ReserveStatus::ok) {
      return {false, "hand example could not be reserved"};
    }
    const auto rec = weigh_link(view, req, 0);
    // Links 90 + 90; switches (95 - 1) + (100 - 1) + (95 - 1).
    const Amount expect_free = 90 + 90 + 94 + 99 + 94;
    if (rec.used != 23 || rec.free != expect_free || rec.weight != 23 - expect_free) {
      v.pass = false;
      v.detail = fmt("hand example R=%lld A=%lld W=%lld; ", static_cast<long long>(rec.used),
                     static_cast<long long>(rec.free), static_cast<long long>(rec.weight));
    } else {
      v.detail = "hand example R=23; ";
    }
  }

  std::size_t records = 0, bad = 0;
  for (std::uint64_t seed = 1; records < 10000 && seed <= 40; ++seed) {
    auto rc = defaults(500 + seed, 600);
    auto sc = build_scenario(rc);
    Engine engine(sc.substrate, rc.resolved_strategy());
    engine.set_observer([&](const Event&, const Controller& c) {
      const auto& view = c.view();
      for (const auto& [id, r] : view.reservations()) {
        const auto& req = sc.workload.at(id.index());
        for (std::size_t e = 0; e < r.placement.link_map.size(); ++e) {
          if (r.placement.link_map[e].size() != 1) continue;
          const auto rec = weigh_link(view, req, e);
          const auto& p = rec.path;
          const Amount used = req.links[e].demand * static_cast<Amount>(p.size() - 1) +
                              static_cast<Amount>(p.size());
          Amount free = 0;
          for (std::size_t i = 1; i < p.size(); ++i) {
            free += view.link_residual(*view.substrate().find_link(p[i - 1], p[i]));
          }
          for (auto s : p) {
            const Amount rest = view.switch_residual(s) - (r.stage == Stage::tentative ? 1 : 0);
            free += rest > 0 ? rest : 0;
          }
          ++records;
          if (rec.used != used || rec.free != free || rec.weight != used - free) ++bad;
        }
      }
    });
    engine.run(sc.workload);
  }
  v.pass = v.pass && records >= 10000 && bad == 0;
  v.detail += fmt("%zu fuzz records, %zu with W != R - A", records, bad);
  return v;
}

Verdict strategy_trends() {
  int a = 0, b = 0, c = 0;
  std::size_t increases = 0, batches = 0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto rc = defaults(seed);
    rc.strategy.policy.n = 5;
    auto sc = build_scenario(rc);
    std::map<StrategyKind, RunSummary> s;
    for (auto kind : kAllKinds) {
      rc.strategy.kind = kind;
      Engine engine(sc.substrate, rc.resolved_strategy());
      engine.set_commit_observer([&](const CommitReport& r) {
        ++batches;
        if (r.cost_after_remap > r.cost_before_remap) ++increases;
      });
      s[kind] = engine.run(sc.workload).summary;
    }
    const auto& p = s[StrategyKind::proposed_batched];
    const auto& d = s[StrategyKind::per_request_dynamic];
    const auto& st = s[StrategyKind::static_splitting];
    a += p.acceptance_rate >= st.acceptance_rate;
    b += p.mean_cost <= d.mean_cost;
    c += p.commit_events < d.commit_events;
    per_seed += fmt("    seed %2llu: accept %.4f / %.4f / %.4f, mean cost %.2f / %.2f / %.2f, "
                    "commits %llu / %llu / %llu\n",
                    static_cast<unsigned long long>(seed), p.acceptance_rate, d.acceptance_rate,
                    st.acceptance_rate, p.mean_cost, d.mean_cost, st.mean_cost,
                    static_cast<unsigned long long>(p.commit_events),
                    static_cast<unsigned long long>(d.commit_events),
                    static_cast<unsigned long long>(st.commit_events));
  }
  const bool pa = a >= 8, pb = b >= 8, pc = c == 10, pd = increases == 0;
  Verdict v;
  v.pass = pa && pb && pc && pd;
  v.detail = fmt("(a) acceptance >= static on %d/10 [%s]; (b) mean cost <= dynamic on %d/10 [%s]; "
                 "(c) fewer commits than dynamic on %d/10 [%s]; (d) %zu cost increases in %zu "
                 "batches [%s]\n",
                 a, pa ? "PASS" : "FAIL", b, pb ? "PASS" : "FAIL", c, pc ? "PASS" : "FAIL",
                 increases, batches, pd ? "PASS" : "FAIL");
  v.detail += "    columns: proposed-batched / per-request-dynamic / static-splitting\n" + per_seed;
  if (!v.detail.empty() && v.detail.back() == '\n') v.detail.pop_back();
  return v;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Digest of the CSV for seed 7, 1500 requests, default settings.
constexpr std::uint64_t kGoldenCsvDigest = 0x7f6ffebdec2f5227ULL;

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<std::string> files;
  for (int i = 0; i < 2; ++i) {
    auto rc = defaults(7);
    rc.csv_path = dir / ("vnesim_acceptance_" + std::to_string(i) + ".csv");
    run(rc);
    std::ifstream in(rc.csv_path, std::ios::binary);
    files.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    std::filesystem::remove(rc.csv_path);
  }
  const auto digest = fnv1a(files[0]);
  Verdict v;
  v.pass = !files[0].empty() && files[0] == files[1] && digest == kGoldenCsvDigest;
  v.detail = fmt("two runs %s (%zu bytes), digest %016llx, golden %016llx",
                 files[0] == files[1] ? "byte-identical" : "DIFFER", files[0].size(),
                 static_cast<unsigned long long>(digest),
                 static_cast<unsigned long long>(kGoldenCsvDigest));
  return v;
}

Verdict batch_policy() {
  std::size_t max_batch = 0;
  Time max_wait = 0;
  std::size_t commits = 0;
  const Time window = time_units(25);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto rc = defaults(seed);
    rc.strategy.policy = {7, time_units(35), TriggerMode::count_only};
    auto sc = build_scenario(rc);
    Engine count_engine(sc.substrate, rc.resolved_strategy());
    count_engine.set_observer([&](const Event&, const Controller& c) {
      max_batch = std::max(max_batch, c.batch().size());
    });
    count_engine.set_commit_observer([&](const CommitReport& r) {
      max_batch = std::max(max_batch, r.batch_size);
    });
    count_engine.run(sc.workload);

    rc.strategy.policy = {5, window, TriggerMode::whichever_first};
    rc.window_units = 25.0;
    Engine wf_engine(sc.substrate, rc.resolved_strategy());
    wf_engine.set_commit_observer([&](const CommitReport& r) {
      for (const auto& c : r.committed) {
        ++commits;
        max_wait = std::max(max_wait, r.time - c.arrival);
      }
    });
    wf_engine.run(sc.workload);
  }
  Verdict v;
  v.pass = max_batch <= 7 && max_wait <= window && commits > 0;
  v.detail = fmt("count mode n=7: largest batch %zu; whichever-first T=25: longest wait %s over "
                 "%zu commits, 10 seeds",
                 max_batch, format_time(max_wait).c_str(), commits);
  return v;
}

}  // namespace
}  // namespace vnesim

int main() {
  using namespace vnesim;
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const Criterion criteria[] = {
      {"conservation fuzz", conservation_fuzz},
      {"oracle containment", oracle_containment},
      {"cost exactness", cost_exactness},
      {"workload statistics", workload_statistics},
      {"weight algebra", weight_algebra},
      {"strategy trends", strategy_trends},
      {"determinism", determinism},
      {"batch policy exactness", batch_policy},
  };
  const auto t0 = Clock::now();
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", index, c.name,
                v.detail.c_str());
    std::fflush(stdout);
  }
  const double secs = seconds_since(t0);
  std::printf("%d/%d criteria passed in %.1f s%s\n", index - failed, index, secs,
              secs < 300.0 ? "" : " (over the 5 minute budget)");
  return failed == 0 && secs < 300.0 ? 0 : 1;
}
