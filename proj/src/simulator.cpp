#include "vnesim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vnesim {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::departure:
      return "departure";
    case EventKind::arrival:
      return "arrival";
    case EventKind::trigger:
      return "trigger";
  }
  return "unknown";
}

void EventQueue::schedule(Time time, EventKind kind, std::uint64_t payload) {
  heap_.push(Event{time, kind, payload, next_sequence_++});
}

Event EventQueue::pop() {
  Event e = heap_.top();
  heap_.pop();
  return e;
}

namespace {

Time units_to_ticks(double units) {
  return static_cast<Time>(std::llround(units * static_cast<double>(kTicksPerUnit)));
}

}  // namespace

StrategyConfig RunConfig::resolved_strategy() const {
  StrategyConfig s = strategy;
  const double units = window_units.value_or(static_cast<double>(s.policy.n) *
                                             generator.mean_interarrival);
  s.policy.window = units_to_ticks(units);
  return s;
}

void RunConfig::validate() const {
  generator.validate();
  if (window_units && !(*window_units > 0.0)) {
    throw std::invalid_argument("window must be positive");
  }
  const auto s = resolved_strategy();
  s.policy.validate();
  effective_policy(s).validate();
  if (s.max_split_paths < 1) throw std::invalid_argument("split paths must be at least 1");
  if (horizon_units && !(*horizon_units > 0.0)) {
    throw std::invalid_argument("horizon must be positive");
  }
  if (latency.hop_delay < 0.0 || latency.write_delay < 0.0) {
    throw std::invalid_argument("latency coefficients must not be negative");
  }
  if (!csv_path.empty()) {
    auto parent = csv_path.parent_path();
    if (parent.empty()) parent = ".";
    if (!std::filesystem::is_directory(parent)) {
      throw std::invalid_argument("output directory " + parent.string() + " does not exist");
    }
    if (std::filesystem::is_directory(csv_path)) {
      throw std::invalid_argument("output path " + csv_path.string() + " is a directory");
    }
  }
  if (generator.source == SubstrateSource::file &&
      !std::filesystem::is_regular_file(generator.substrate_path)) {
    throw std::invalid_argument("substrate file " + generator.substrate_path.string() +
                                " does not exist");
  }
}

Engine::Engine(const Substrate& substrate, StrategyConfig strategy, LatencyModel latency,
               std::optional<Time> horizon)
    : substrate_(&substrate),
      controller_(substrate, strategy),
      latency_(latency),
      horizon_(horizon) {}

void Engine::mix(std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    hash_ ^= (value >> (8 * i)) & 0xffU;
    hash_ *= 0x100000001b3ULL;
  }
}

void Engine::record(Time time, SampleKind kind, RequestId id, Outcome outcome,
                    std::optional<Amount> cost, std::optional<double> latency) {
  const auto& view = controller_.view();
  Sample s;
  s.time = time;
  s.kind = kind;
  s.request = id;
  s.outcome = outcome;
  s.cost = cost;
  s.latency_proxy = latency;
  s.cum_accept_rate =
      arrivals_ == 0 ? 0.0 : static_cast<double>(accepted_) / static_cast<double>(arrivals_);
  double link_sum = 0, switch_sum = 0;
  for (std::size_t l = 0; l < substrate_->link_count(); ++l) {
    s.link_util.push_back(view.link_utilization(LinkId(l)));
    link_sum += s.link_util.back();
  }
  for (std::size_t i = 0; i < substrate_->switch_count(); ++i) {
    s.switch_util.push_back(view.switch_utilization(SwitchId(i)));
    switch_sum += s.switch_util.back();
  }
  if (!s.link_util.empty()) s.avg_link_util = link_sum / static_cast<double>(s.link_util.size());
  s.avg_switch_util = switch_sum / static_cast<double>(s.switch_util.size());
  s.rule_writes_cum = controller_.rules().writes;
  s.commit_events_cum = controller_.rules().commit_events;
  s.remapped_links_cum = controller_.stats().remapped_links;
  mix(static_cast<std::uint64_t>(outcome));
  mix(static_cast<std::uint64_t>(cost.value_or(-1)));
  log_.samples.push_back(std::move(s));
}

void Engine::handle_commit(const CommitReport& report) {
  if (commit_observer_ && !report.empty()) commit_observer_(report);
  for (const auto& c : report.committed) {
    ++accepted_;
    queue_.schedule(std::max(report.time, c.departure), EventKind::departure, c.id.value);
    record(report.time, SampleKind::commit, c.id, Outcome::accepted, c.cost,
           latency_proxy(latency_, c.mean_hops, c.wait));
  }
  for (auto id : report.cancelled) {
    record(report.time, SampleKind::commit, id, Outcome::rejected_at_commit, std::nullopt,
           std::nullopt);
  }
}

void Engine::dispatch(const Event& event, std::span<const VirtualNetworkRequest> workload) {
  mix(static_cast<std::uint64_t>(event.time));
  mix(static_cast<std::uint64_t>(event.kind));
  mix(event.payload);
  switch (event.kind) {
    case EventKind::arrival: {
      const auto& request = workload[event.payload];
      ++arrivals_;
      auto result = controller_.step(event, &request);
      const auto& a = *result.arrival;
      if (a.accepted) {
        record(event.time, SampleKind::arrival, request.id, Outcome::tentative, a.cost,
               std::nullopt);
      } else {
        record(event.time, SampleKind::arrival, request.id, Outcome::rejected, std::nullopt,
               std::nullopt);
      }
      if (a.window_deadline) queue_.schedule(*a.window_deadline, EventKind::trigger, a.batch_id);
      if (result.commit) handle_commit(*result.commit);
      break;
    }
    case EventKind::trigger: {
      auto result = controller_.step(event, nullptr);
      if (result.commit) handle_commit(*result.commit);
      break;
    }
    case EventKind::departure:
      controller_.step(event, nullptr);
      record(event.time, SampleKind::departure, RequestId(static_cast<std::uint32_t>(event.payload)),
             Outcome::departed, std::nullopt, std::nullopt);
      break;
  }
  ++events_;
  if (observer_) observer_(event, controller_);
}

RunResult Engine::run(std::span<const VirtualNetworkRequest> workload) {
  for (std::size_t i = 0; i < workload.size(); ++i) {
    if (workload[i].id.index() != i) throw std::invalid_argument("workload must be indexed by id");
    if (i > 0 && workload[i].arrival < workload[i - 1].arrival) {
      throw std::invalid_argument("workload must be sorted by arrival");
    }
    queue_.schedule(workload[i].arrival, EventKind::arrival, i);
  }

  Time now = 0;
  auto flush = [&](Time at) {
    Event pseudo{at, EventKind::trigger, controller_.batch().id, 0};
    mix(static_cast<std::uint64_t>(at));
    mix(static_cast<std::uint64_t>(EventKind::trigger));
    handle_commit(controller_.on_trigger(at));
    if (observer_) observer_(pseudo, controller_);
  };
  while (true) {
    if (queue_.empty()) {
      if (controller_.batch().empty()) break;
      flush(now);
      continue;
    }
    if (horizon_ && queue_.top().time > *horizon_) {
      if (!controller_.batch().empty()) flush(*horizon_);
      break;
    }
    auto event = queue_.pop();
    now = event.time;
    dispatch(event, workload);
  }

  RunResult result;
  result.log = std::move(log_);
  result.summary = summarize(result.log);
  result.stats = controller_.stats();
  result.trace_hash = hash_;
  result.events = events_;
  return result;
}

Scenario build_scenario(const RunConfig& config) {
  RandomStreams streams(config.seed);
  Scenario s;
  s.substrate = make_substrate(config.generator, streams);
  s.workload = generate_workload(streams, config.generator, config.request_count);
  return s;
}

RunResult run(const RunConfig& config, const Scenario& scenario) {
  std::optional<Time> horizon;
  if (config.horizon_units) horizon = units_to_ticks(*config.horizon_units);
  Engine engine(scenario.substrate, config.resolved_strategy(), config.latency, horizon);
  auto result = engine.run(scenario.workload);
  if (!config.csv_path.empty()) export_csv(result.log, config.csv_path);
  return result;
}

RunResult run(const RunConfig& config) {
  config.validate();
  auto scenario = build_scenario(config);
  return run(config, scenario);
}

std::string format_hash(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace vnesim
