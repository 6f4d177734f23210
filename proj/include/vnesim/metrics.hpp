#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vnesim/types.hpp"

namespace vnesim {

enum class SampleKind { arrival, commit, departure };
enum class Outcome { tentative, rejected, accepted, rejected_at_commit, departed };

const char* to_string(SampleKind k);
const char* to_string(Outcome o);

// One row of the metrics log. Utilization figures are taken right after the
// event and count committed plus tentative allocations.
struct Sample {
  Time time = 0;
  SampleKind kind = SampleKind::arrival;
  RequestId request;
  Outcome outcome = Outcome::tentative;
  std::optional<Amount> cost;  // tentative or final mapping cost
  double cum_accept_rate = 0;
  double avg_link_util = 0;
  double avg_switch_util = 0;
  std::uint64_t rule_writes_cum = 0;
  std::uint64_t commit_events_cum = 0;
  std::uint64_t remapped_links_cum = 0;
  std::optional<double> latency_proxy;  // accepted commits only

  // Per-element snapshots; kept in memory, not exported.
  std::vector<double> link_util;
  std::vector<double> switch_util;
};

struct MetricsLog {
  std::vector<Sample> samples;
};

struct LatencyModel {
  double hop_delay = 1.0;    // per hop of a hosting path
  double write_delay = 1.0;  // per time unit spent waiting for the rule write
};

// Mean hop count times hop delay plus in-window wait times write delay.
double latency_proxy(const LatencyModel& model, double mean_hops, Time wait);

enum class Grouping { by_count, by_time };
enum class ElementKind { link, switch_node };

struct AcceptanceBucket {
  double start = 0;  // first arrival index, or start time in time units
  std::uint64_t arrivals = 0;
  std::uint64_t accepted = 0;
  double ratio = 0;
};

struct AcceptanceSeries {
  std::vector<AcceptanceBucket> buckets;
  std::uint64_t arrivals = 0;
  std::uint64_t accepted = 0;
  double cumulative = 0;
};

// Requests are bucketed by arrival (index or time) and count as accepted if
// they were later committed. `bucket` is a number of arrivals for by_count
// and a width in whole time units for by_time. Throws std::invalid_argument
// on a log without arrivals or a non-positive bucket.
AcceptanceSeries acceptance_rate(const MetricsLog& log, Grouping grouping, std::int64_t bucket);

// Time-weighted mean utilization per bucket of `bucket_units` time units,
// treating each sample's value as holding until the next sample.
std::vector<double> avg_utilization(const MetricsLog& log, ElementKind kind,
                                    std::int64_t bucket_units);
// Same, over the whole log.
double time_weighted_utilization(const MetricsLog& log, ElementKind kind);

// Latency proxy of every accepted request in commit order.
std::vector<double> latency_proxy(const MetricsLog& log);

// Time-weighted number of committed requests holding resources, between
// the first and the last arrival.
double mean_concurrent(const MetricsLog& log);

struct RunSummary {
  std::uint64_t arrivals = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t rejected_at_commit = 0;
  double acceptance_rate = 0;
  double mean_cost = 0;
  double avg_link_util = 0;
  double avg_switch_util = 0;
  std::uint64_t rule_writes = 0;
  std::uint64_t commit_events = 0;
  std::uint64_t remapped_links = 0;
  double mean_latency = 0;
  double mean_wait = 0;
  double mean_concurrent = 0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

// Pure function of the exported columns.
RunSummary summarize(const MetricsLog& log);

inline constexpr const char* kCsvHeader =
    "time,event_kind,request_id,outcome,cost,cum_accept_rate,avg_link_util,avg_switch_util,"
    "rule_writes_cum,commit_events_cum,remapped_links_cum,latency_proxy";

void write_csv(const MetricsLog& log, std::ostream& out);
// Throws std::runtime_error if the file cannot be written.
void export_csv(const MetricsLog& log, const std::filesystem::path& path);
// Inverse of write_csv (per-element snapshots are not restored). Throws
// std::runtime_error with a line number on malformed input.
MetricsLog read_csv(std::istream& in);

// Time formatting shared by the CSV writer: whole units, '.', six digits.
std::string format_time(Time t);
std::string format_double(double v);

}  // namespace vnesim
