#include "vnesim/metrics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vnesim {

const char* to_string(SampleKind k) {
  switch (k) {
    case SampleKind::arrival:
      return "arrival";
    case SampleKind::commit:
      return "commit";
    case SampleKind::departure:
      return "departure";
  }
  return "unknown";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::tentative:
      return "tentative";
    case Outcome::rejected:
      return "rejected";
    case Outcome::accepted:
      return "accepted";
    case Outcome::rejected_at_commit:
      return "rejected_at_commit";
    case Outcome::departed:
      return "departed";
  }
  return "unknown";
}

double latency_proxy(const LatencyModel& model, double mean_hops, Time wait) {
  return mean_hops * model.hop_delay + to_units(wait) * model.write_delay;
}

AcceptanceSeries acceptance_rate(const MetricsLog& log, Grouping grouping, std::int64_t bucket) {
  if (bucket <= 0) throw std::invalid_argument("bucket must be positive");
  std::map<RequestId, bool> accepted;
  std::vector<std::pair<RequestId, Time>> arrivals;
  for (const auto& s : log.samples) {
    if (s.kind == SampleKind::arrival) arrivals.emplace_back(s.request, s.time);
    if (s.kind == SampleKind::commit && s.outcome == Outcome::accepted) accepted[s.request] = true;
  }
  if (arrivals.empty()) throw std::invalid_argument("acceptance_rate: log has no arrivals");

  AcceptanceSeries series;
  std::map<std::int64_t, AcceptanceBucket> buckets;
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    const auto [id, t] = arrivals[i];
    const auto key = grouping == Grouping::by_count
                         ? static_cast<std::int64_t>(i) / bucket
                         : t / (bucket * kTicksPerUnit);
    auto& b = buckets[key];
    b.start = static_cast<double>(key * bucket);
    ++b.arrivals;
    ++series.arrivals;
    if (accepted.contains(id)) {
      ++b.accepted;
      ++series.accepted;
    }
  }
  for (auto& [key, b] : buckets) {
    b.ratio = static_cast<double>(b.accepted) / static_cast<double>(b.arrivals);
    series.buckets.push_back(b);
  }
  series.cumulative = static_cast<double>(series.accepted) / static_cast<double>(series.arrivals);
  return series;
}

namespace {

double value_of(const Sample& s, ElementKind kind) {
  return kind == ElementKind::link ? s.avg_link_util : s.avg_switch_util;
}

// Calls f(begin, end, value) for each constant piece on [0, last sample time].
template <class F>
void for_each_piece(const MetricsLog& log, ElementKind kind, F&& f) {
  Time prev = 0;
  double value = 0;
  for (const auto& s : log.samples) {
    if (s.time > prev) f(prev, s.time, value);
    prev = std::max(prev, s.time);
    value = value_of(s, kind);
  }
}

}  // namespace

std::vector<double> avg_utilization(const MetricsLog& log, ElementKind kind,
                                    std::int64_t bucket_units) {
  if (bucket_units <= 0) throw std::invalid_argument("bucket must be positive");
  const Time width = bucket_units * kTicksPerUnit;
  const Time end = log.samples.empty() ? 0 : log.samples.back().time;
  const auto count = static_cast<std::size_t>((end + width - 1) / width);
  std::vector<double> area(count, 0.0);
  for_each_piece(log, kind, [&](Time a, Time b, double v) {
    for (Time k = a / width; k * width < b; ++k) {
      const Time lo = std::max(a, k * width);
      const Time hi = std::min(b, (k + 1) * width);
      if (hi > lo) area[static_cast<std::size_t>(k)] += v * static_cast<double>(hi - lo);
    }
  });
  for (std::size_t k = 0; k < count; ++k) {
    const Time lo = static_cast<Time>(k) * width;
    const Time hi = std::min(end, lo + width);
    area[k] /= static_cast<double>(hi - lo);
  }
  return area;
}

double time_weighted_utilization(const MetricsLog& log, ElementKind kind) {
  if (log.samples.empty()) return 0.0;
  const Time end = log.samples.back().time;
  if (end <= 0) return value_of(log.samples.back(), kind);
  double area = 0;
  for_each_piece(log, kind,
                 [&](Time a, Time b, double v) { area += v * static_cast<double>(b - a); });
  return area / static_cast<double>(end);
}

std::vector<double> latency_proxy(const MetricsLog& log) {
  std::vector<double> out;
  for (const auto& s : log.samples) {
    if (s.kind == SampleKind::commit && s.outcome == Outcome::accepted && s.latency_proxy) {
      out.push_back(*s.latency_proxy);
    }
  }
  return out;
}

double mean_concurrent(const MetricsLog& log) {
  std::optional<Time> first, last;
  for (const auto& s : log.samples) {
    if (s.kind != SampleKind::arrival) continue;
    if (!first) first = s.time;
    last = s.time;
  }
  if (!first || *last <= *first) return 0.0;
  double area = 0;
  std::int64_t active = 0;
  Time prev = *first;
  for (const auto& s : log.samples) {
    const Time t = std::clamp(s.time, *first, *last);
    area += static_cast<double>(active) * static_cast<double>(t - prev);
    prev = t;
    if (s.kind == SampleKind::commit && s.outcome == Outcome::accepted) ++active;
    if (s.kind == SampleKind::departure) --active;
  }
  return area / static_cast<double>(*last - *first);
}

RunSummary summarize(const MetricsLog& log) {
  RunSummary r;
  std::map<RequestId, Time> arrived;
  double cost_sum = 0, latency_sum = 0, wait_sum = 0;
  for (const auto& s : log.samples) {
    if (s.kind == SampleKind::arrival) {
      ++r.arrivals;
      arrived[s.request] = s.time;
      if (s.outcome == Outcome::rejected) ++r.rejected;
    } else if (s.kind == SampleKind::commit) {
      if (s.outcome == Outcome::accepted) {
        ++r.accepted;
        cost_sum += static_cast<double>(s.cost.value_or(0));
        latency_sum += s.latency_proxy.value_or(0.0);
        auto it = arrived.find(s.request);
        if (it != arrived.end()) wait_sum += to_units(s.time - it->second);
      } else if (s.outcome == Outcome::rejected_at_commit) {
        ++r.rejected_at_commit;
      }
    }
  }
  if (!log.samples.empty()) {
    const auto& last = log.samples.back();
    r.rule_writes = last.rule_writes_cum;
    r.commit_events = last.commit_events_cum;
    r.remapped_links = last.remapped_links_cum;
  }
  if (r.arrivals > 0) r.acceptance_rate = static_cast<double>(r.accepted) / static_cast<double>(r.arrivals);
  if (r.accepted > 0) {
    const auto n = static_cast<double>(r.accepted);
    r.mean_cost = cost_sum / n;
    r.mean_latency = latency_sum / n;
    r.mean_wait = wait_sum / n;
  }
  r.avg_link_util = time_weighted_utilization(log, ElementKind::link);
  r.avg_switch_util = time_weighted_utilization(log, ElementKind::switch_node);
  r.mean_concurrent = mean_concurrent(log);
  return r;
}

std::string format_time(Time t) {
  const char* sign = t < 0 ? "-" : "";
  const auto mag = t < 0 ? -t : t;
  std::string frac = std::to_string(mag % kTicksPerUnit);
  frac.insert(0, 6 - frac.size(), '0');
  return sign + std::to_string(mag / kTicksPerUnit) + "." + frac;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

void write_csv(const MetricsLog& log, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& s : log.samples) {
    out << format_time(s.time) << ',' << to_string(s.kind) << ',' << s.request.value << ','
        << to_string(s.outcome) << ',' << (s.cost ? std::to_string(*s.cost) : "") << ','
        << format_double(s.cum_accept_rate) << ',' << format_double(s.avg_link_util) << ','
        << format_double(s.avg_switch_util) << ',' << s.rule_writes_cum << ','
        << s.commit_events_cum << ',' << s.remapped_links_cum << ','
        << (s.latency_proxy ? format_double(*s.latency_proxy) : "") << '\n';
  }
}

void export_csv(const MetricsLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(log, out);
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

namespace {

Time parse_time(const std::string& field) {
  auto dot = field.find('.');
  if (dot == std::string::npos || field.size() - dot - 1 != 6) {
    throw std::invalid_argument("bad time '" + field + "'");
  }
  const bool negative = !field.empty() && field[0] == '-';
  const auto whole = std::stoll(field.substr(negative ? 1 : 0, dot - (negative ? 1 : 0)));
  const auto frac = std::stoll(field.substr(dot + 1));
  const Time mag = whole * kTicksPerUnit + frac;
  return negative ? -mag : mag;
}

double parse_double(const std::string& field) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument("bad number '" + field + "'");
  }
  return v;
}

template <class E, std::size_t N>
E parse_enum(const std::string& field, const std::array<E, N>& values) {
  for (auto v : values) {
    if (field == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown value '" + field + "'");
}

}  // namespace

MetricsLog read_csv(std::istream& in) {
  MetricsLog log;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("line 1: unexpected CSV header");
  }
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> f;
    std::string field;
    std::istringstream cells(line);
    while (std::getline(cells, field, ',')) f.push_back(field);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 12) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 12 columns, got " +
                               std::to_string(f.size()));
    }
    try {
      Sample s;
      s.time = parse_time(f[0]);
      s.kind = parse_enum(f[1], std::array{SampleKind::arrival, SampleKind::commit,
                                           SampleKind::departure});
      s.request = RequestId(static_cast<std::uint32_t>(std::stoul(f[2])));
      s.outcome = parse_enum(f[3], std::array{Outcome::tentative, Outcome::rejected,
                                              Outcome::accepted, Outcome::rejected_at_commit,
                                              Outcome::departed});
      if (!f[4].empty()) s.cost = std::stoll(f[4]);
      s.cum_accept_rate = parse_double(f[5]);
      s.avg_link_util = parse_double(f[6]);
      s.avg_switch_util = parse_double(f[7]);
      s.rule_writes_cum = std::stoull(f[8]);
      s.commit_events_cum = std::stoull(f[9]);
      s.remapped_links_cum = std::stoull(f[10]);
      if (!f[11].empty()) s.latency_proxy = parse_double(f[11]);
      log.samples.push_back(std::move(s));
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

}  // namespace vnesim
