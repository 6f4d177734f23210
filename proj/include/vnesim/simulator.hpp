#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "vnesim/controller.hpp"
#include "vnesim/event.hpp"
#include "vnesim/metrics.hpp"
#include "vnesim/workload.hpp"

namespace vnesim {

// Min-queue over the total event order.
class EventQueue {
 public:
  void schedule(Time time, EventKind kind, std::uint64_t payload);
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  const Event& top() const { return heap_.top(); }
  Event pop();

 private:
  std::priority_queue<Event, std::vector<Event>, std::greater<>> heap_;
  std::uint64_t next_sequence_ = 0;
};

struct RunConfig {
  StrategyConfig strategy;
  // Batch window in time units; unset means n * mean inter-arrival.
  std::optional<double> window_units;
  GeneratorSpec generator;
  std::size_t request_count = 1500;
  std::uint64_t seed = 1;
  std::optional<double> horizon_units;
  LatencyModel latency;
  std::filesystem::path csv_path;  // empty: no CSV

  // Strategy config with the window resolved.
  StrategyConfig resolved_strategy() const;
  // Throws std::invalid_argument describing the first invalid field.
  void validate() const;
};

struct RunResult {
  MetricsLog log;
  RunSummary summary;
  ControllerStats stats;
  std::uint64_t trace_hash = 0;
  std::size_t events = 0;
};

/**
 * Discrete-event loop. Events dispatch in (time, kind, sequence) order with
 * departures before arrivals before window triggers at equal times. A batch
 * still pending when the queue drains (or the horizon is reached) is
 * flushed so every arrival ends accepted or rejected.
 */
class Engine {
 public:
  // Called after every dispatched event (and after an end-of-run flush).
  using Observer = std::function<void(const Event&, const Controller&)>;

  Engine(const Substrate& substrate, StrategyConfig strategy, LatencyModel latency = {},
         std::optional<Time> horizon = std::nullopt);

  using CommitObserver = std::function<void(const CommitReport&)>;

  void set_observer(Observer observer) { observer_ = std::move(observer); }
  // Sees every non-empty commit report before its samples are recorded.
  void set_commit_observer(CommitObserver observer) { commit_observer_ = std::move(observer); }

  // `workload` must be sorted by arrival and indexed by request id.
  RunResult run(std::span<const VirtualNetworkRequest> workload);

  const Controller& controller() const { return controller_; }

 private:
  void dispatch(const Event& event, std::span<const VirtualNetworkRequest> workload);
  void handle_commit(const CommitReport& report);
  void record(Time time, SampleKind kind, RequestId id, Outcome outcome,
              std::optional<Amount> cost, std::optional<double> latency);
  void mix(std::uint64_t value);

  const Substrate* substrate_;
  Controller controller_;
  LatencyModel latency_;
  std::optional<Time> horizon_;
  EventQueue queue_;
  MetricsLog log_;
  Observer observer_;
  CommitObserver commit_observer_;
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
  std::uint64_t arrivals_ = 0;
  std::uint64_t accepted_ = 0;
  std::size_t events_ = 0;
};

struct Scenario {
  Substrate substrate;
  std::vector<VirtualNetworkRequest> workload;
};

// Substrate and request stream for a config; identical across strategies.
Scenario build_scenario(const RunConfig& config);

RunResult run(const RunConfig& config, const Scenario& scenario);
// Validates, builds the scenario, runs, and writes the CSV when configured.
RunResult run(const RunConfig& config);

std::string format_hash(std::uint64_t hash);

}  // namespace vnesim
