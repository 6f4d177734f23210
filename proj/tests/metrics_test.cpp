#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "vnesim/metrics.hpp"
#include "vnesim/simulator.hpp"

namespace vnesim {
namespace {

using test::make_request;
using test::make_substrate;

StrategyConfig singleton_batches() {
  StrategyConfig c;
  c.policy = {1, time_units(5), TriggerMode::count_only};
  return c;
}

std::string csv_of(const MetricsLog& log) {
  std::ostringstream out;
  write_csv(log, out);
  return out.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vnesim_metrics_" + name);
}

RunConfig defaults(std::uint64_t seed, std::size_t count) {
  RunConfig rc;
  rc.seed = seed;
  rc.request_count = count;
  return rc;
}

TEST(Csv, ZeroRequestsGiveHeaderOnly) {
  auto rc = defaults(1, 0);
  rc.csv_path = temp_file("empty.csv");
  auto r = run(rc);
  EXPECT_TRUE(r.log.samples.empty());
  EXPECT_EQ(slurp(rc.csv_path), std::string(kCsvHeader) + "\n");
  std::filesystem::remove(rc.csv_path);
}

TEST(Csv, TwelveColumnsEveryRow) {
  auto r = run(defaults(2, 300));
  std::istringstream in(csv_of(r.log));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11) << line;
    EXPECT_EQ(line.find(' '), std::string::npos);
    ++rows;
  }
  EXPECT_EQ(rows, r.log.samples.size() + 1);
}

TEST(Csv, RerunIsByteIdentical) {
  auto a = defaults(3, 400);
  a.csv_path = temp_file("a.csv");
  auto b = a;
  b.csv_path = temp_file("b.csv");
  run(a);
  run(b);
  const auto x = slurp(a.csv_path), y = slurp(b.csv_path);
  EXPECT_FALSE(x.empty());
  EXPECT_EQ(x, y);
  EXPECT_EQ(x.find('\r'), std::string::npos);
  std::filesystem::remove(a.csv_path);
  std::filesystem::remove(b.csv_path);
}

TEST(Csv, ReadBackReproducesSummary) {
  for (auto kind : {StrategyKind::proposed_batched, StrategyKind::per_request_dynamic,
                    StrategyKind::static_splitting}) {
    auto rc = defaults(4, 500);
    rc.strategy.kind = kind;
    auto r = run(rc);
    std::istringstream in(csv_of(r.log));
    auto back = read_csv(in);
    ASSERT_EQ(back.samples.size(), r.log.samples.size());
    EXPECT_EQ(summarize(back), r.summary) << to_string(kind);
    EXPECT_EQ(csv_of(back), csv_of(r.log));
  }
}

TEST(Csv, MalformedInputNamesTheLine) {
  std::istringstream in(std::string(kCsvHeader) + "\n1.000000,arrival,0,tentative,3,1,0,0,0,0,0,\n"
                                                   "2.0,arrival,1\n");
  try {
    read_csv(in);
    FAIL() << "no error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::istringstream bad_header("time,kind\n");
  EXPECT_THROW(read_csv(bad_header), std::runtime_error);
}

TEST(Csv, TimeFormatting) {
  EXPECT_EQ(format_time(0), "0.000000");
  EXPECT_EQ(format_time(time_units(25)), "25.000000");
  EXPECT_EQ(format_time(1'500'001), "1.500001");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1.0), "1");
}

TEST(Csv, UnwritablePathThrows) {
  MetricsLog log;
  EXPECT_THROW(export_csv(log, "/nonexistent-dir/x.csv"), std::runtime_error);
}

TEST(Acceptance, AllAcceptedToyRunIsOneEverywhere) {
  auto substrate = make_substrate({100, 100, 100}, {{0, 1, 100}, {1, 2, 100}});
  std::vector<VirtualNetworkRequest> w;
  for (std::uint32_t i = 0; i < 12; ++i) {
    w.push_back(make_request(i, {1, 1}, {{0, 1, 1}}, time_units(3 * (i + 1)), time_units(2)));
  }
  Engine engine(substrate, singleton_batches());
  auto r = engine.run(w);
  for (auto g : {Grouping::by_count, Grouping::by_time}) {
    auto series = acceptance_rate(r.log, g, 4);
    EXPECT_EQ(series.cumulative, 1.0);
    for (const auto& b : series.buckets) EXPECT_EQ(b.ratio, 1.0);
  }
}

TEST(Acceptance, GroupingsAgreeOnTotals) {
  auto r = run(defaults(5, 600));
  auto by_count = acceptance_rate(r.log, Grouping::by_count, 50);
  auto by_time = acceptance_rate(r.log, Grouping::by_time, 200);
  EXPECT_EQ(by_count.arrivals, 600u);
  EXPECT_EQ(by_count.arrivals, by_time.arrivals);
  EXPECT_EQ(by_count.accepted, by_time.accepted);
  EXPECT_EQ(by_count.accepted, r.summary.accepted);
  EXPECT_EQ(by_count.buckets.size(), 12u);
  std::uint64_t sum = 0;
  for (const auto& b : by_time.buckets) sum += b.accepted;
  EXPECT_EQ(sum, by_time.accepted);
  EXPECT_THROW(acceptance_rate(MetricsLog{}, Grouping::by_count, 5), std::invalid_argument);
  EXPECT_THROW(acceptance_rate(r.log, Grouping::by_count, 0), std::invalid_argument);
}

TEST(Acceptance, AmpleCapacityAcceptsEverything) {
  auto rc = defaults(6, 1500);
  rc.generator.capacity_scale = 1'000'000;
  auto r = run(rc);
  EXPECT_EQ(acceptance_rate(r.log, Grouping::by_count, 100).cumulative, 1.0);
  EXPECT_EQ(r.summary.rejected + r.summary.rejected_at_commit, 0u);
}

TEST(Utilization, EmptyNetworkIsZero) {
  auto substrate = make_substrate({100, 100}, {{0, 1, 100}});
  std::vector<VirtualNetworkRequest> w{make_request(0, {500, 1}, {{0, 1, 1}}, time_units(1))};
  Engine engine(substrate, singleton_batches());
  auto r = engine.run(w);
  EXPECT_EQ(r.summary.accepted, 0u);
  for (const auto& s : r.log.samples) {
    EXPECT_EQ(s.avg_link_util, 0.0);
    EXPECT_EQ(s.avg_switch_util, 0.0);
  }
  for (auto v : avg_utilization(r.log, ElementKind::link, 1)) EXPECT_EQ(v, 0.0);
}

TEST(Utilization, HalfLoadOnTwoSwitches) {
  auto substrate = make_substrate({100, 100}, {{0, 1, 100}});
  // Node demand 49 plus one rule unit per switch is half of 100.
  std::vector<VirtualNetworkRequest> w{
      make_request(0, {49, 49}, {{0, 1, 50}}, time_units(10), time_units(10))};
  Engine engine(substrate, singleton_batches());
  auto r = engine.run(w);
  const auto commit = std::find_if(r.log.samples.begin(), r.log.samples.end(),
                                   [](const Sample& s) { return s.kind == SampleKind::commit; });
  ASSERT_NE(commit, r.log.samples.end());
  EXPECT_EQ(commit->avg_switch_util, 0.5);
  EXPECT_EQ(commit->avg_link_util, 0.5);
  EXPECT_EQ(commit->switch_util, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(commit->link_util, (std::vector<double>{0.5}));

  const auto& last = r.log.samples.back();
  EXPECT_EQ(last.kind, SampleKind::departure);
  EXPECT_EQ(last.avg_link_util, 0.0);
  EXPECT_EQ(last.avg_switch_util, 0.0);

  // Zero before t=10, half on [10, 20].
  auto series = avg_utilization(r.log, ElementKind::link, 10);
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[0], 0.0);
  EXPECT_EQ(series[1], 0.5);
  EXPECT_EQ(time_weighted_utilization(r.log, ElementKind::switch_node), 0.25);
}

TEST(Utilization, ReturnsToZeroAfterLastDeparture) {
  auto r = run(defaults(7, 400));
  const auto& last = r.log.samples.back();
  EXPECT_EQ(last.kind, SampleKind::departure);
  EXPECT_EQ(last.avg_link_util, 0.0);
  EXPECT_EQ(last.avg_switch_util, 0.0);
  for (const auto& s : r.log.samples) {
    ASSERT_GE(s.avg_link_util, 0.0);
    ASSERT_LE(s.avg_link_util, 1.0);
    ASSERT_GE(s.avg_switch_util, 0.0);
    ASSERT_LE(s.avg_switch_util, 1.0);
  }
}

TEST(Latency, SingleDirectRequestIsOneHop) {
  auto substrate = make_substrate({100, 100}, {{0, 1, 100}});
  std::vector<VirtualNetworkRequest> w{make_request(0, {5, 5}, {{0, 1, 5}}, time_units(1))};
  Engine engine(substrate, singleton_batches());
  auto r = engine.run(w);
  EXPECT_EQ(latency_proxy(r.log), (std::vector<double>{1.0}));
  EXPECT_EQ(latency_proxy(LatencyModel{2.0, 3.0}, 1.5, time_units(2)), 9.0);
}

TEST(Latency, LargerBatchesWaitLongerAndCommitLess) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto rc = defaults(seed, 600);
    auto scenario = build_scenario(rc);
    double prev_wait = -1;
    std::uint64_t prev_commits = UINT64_MAX;
    for (std::size_t n : {1u, 5u, 10u}) {
      rc.strategy.policy.n = n;
      auto r = run(rc, scenario);
      EXPECT_GE(r.summary.mean_wait, prev_wait) << "seed " << seed << " n " << n;
      EXPECT_LE(r.summary.commit_events, prev_commits) << "seed " << seed << " n " << n;
      prev_wait = r.summary.mean_wait;
      prev_commits = r.summary.commit_events;
    }
  }
}

TEST(Latency, InvariantUnderSwitchRelabeling) {
  // Only the two end switches can host; the path between them is forced.
  std::vector<SwitchSpec> a_sw{{0, 100, 1}, {1, 10, 1}, {2, 10, 1}, {3, 90, 1}};
  std::vector<SwitchSpec> b_sw{{7, 100, 1}, {3, 10, 1}, {9, 10, 1}, {1, 90, 1}};
  std::vector<LinkSpec> links{{SwitchId(0), SwitchId(1), 100, 1},
                              {SwitchId(1), SwitchId(2), 100, 1},
                              {SwitchId(2), SwitchId(3), 100, 1}};
  Substrate a(a_sw, links), b(b_sw, links);
  std::vector<VirtualNetworkRequest> w{make_request(0, {40, 40}, {{0, 1, 5}}, time_units(1))};
  Engine ea(a, singleton_batches()), eb(b, singleton_batches());
  auto ra = ea.run(w), rb = eb.run(w);
  EXPECT_EQ(latency_proxy(ra.log), (std::vector<double>{3.0}));
  EXPECT_EQ(latency_proxy(ra.log), latency_proxy(rb.log));
}

TEST(Summary, AccountingIdentityAcrossStrategies) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (auto kind : {StrategyKind::proposed_batched, StrategyKind::per_request_dynamic,
                      StrategyKind::static_splitting}) {
      auto rc = defaults(seed, 500);
      rc.strategy.kind = kind;
      auto s = run(rc).summary;
      EXPECT_EQ(s.accepted + s.rejected + s.rejected_at_commit, s.arrivals);
      EXPECT_EQ(s.arrivals, 500u);
    }
  }
}

}  // namespace
}  // namespace vnesim
