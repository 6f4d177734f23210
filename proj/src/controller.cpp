#include "vnesim/controller.hpp"

#include <algorithm>
#include <stdexcept>

#include "vnesim/weights.hpp"

namespace vnesim {

const char* to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::proposed_batched:
      return "proposed-batched";
    case StrategyKind::per_request_dynamic:
      return "per-request-dynamic";
    case StrategyKind::static_splitting:
      return "static-splitting";
  }
  return "unknown";
}

const char* to_string(TriggerMode m) {
  switch (m) {
    case TriggerMode::count_only:
      return "count";
    case TriggerMode::time_only:
      return "time";
    case TriggerMode::whichever_first:
      return "whichever-first";
  }
  return "unknown";
}

std::optional<StrategyKind> parse_strategy(const std::string& s) {
  for (auto k : {StrategyKind::proposed_batched, StrategyKind::per_request_dynamic,
                 StrategyKind::static_splitting}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<TriggerMode> parse_trigger_mode(const std::string& s) {
  for (auto m : {TriggerMode::count_only, TriggerMode::time_only, TriggerMode::whichever_first}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

void BatchPolicy::validate() const {
  if (n < 1) throw std::invalid_argument("batch size n must be at least 1");
  if (timed() && window <= 0) throw std::invalid_argument("batch window must be positive");
}

BatchPolicy effective_policy(const StrategyConfig& config) {
  BatchPolicy p = config.policy;
  switch (config.kind) {
    case StrategyKind::proposed_batched:
      break;
    case StrategyKind::per_request_dynamic:
      p.n = 1;
      p.mode = TriggerMode::count_only;
      break;
    case StrategyKind::static_splitting:
      p.mode = TriggerMode::time_only;
      break;
  }
  return p;
}

namespace {

std::vector<SwitchId> rule_switches(const SplitMapping& mapping) {
  std::vector<SwitchId> out;
  for (const auto& shares : mapping.link_map) {
    for (const auto& share : shares) out.insert(out.end(), share.path.begin(), share.path.end());
  }
  return out;
}

double mean_hops(const SplitMapping& mapping) {
  std::size_t paths = 0;
  std::size_t hops = 0;
  for (const auto& shares : mapping.link_map) {
    for (const auto& share : shares) {
      ++paths;
      hops += share.path.size() - 1;
    }
  }
  return paths == 0 ? 0.0 : static_cast<double>(hops) / static_cast<double>(paths);
}

}  // namespace

Controller::Controller(const Substrate& substrate, StrategyConfig config)
    : substrate_(&substrate),
      config_(config),
      policy_(effective_policy(config)),
      view_(substrate) {
  policy_.validate();
  if (config_.max_split_paths < 1) throw std::invalid_argument("max_split_paths must be >= 1");
  rules_.installed.assign(substrate.switch_count(), 0);
}

ArrivalResult Controller::on_arrival(const VirtualNetworkRequest& request, Time now) {
  ++stats_.arrivals;
  ArrivalResult result;
  SplitMapping placement;
  if (config_.kind == StrategyKind::static_splitting) {
    auto outcome = splitting_embed(view_, request, config_.max_split_paths);
    result.rejection = outcome.rejection;
    result.cost = outcome.cost;
    if (outcome.accepted()) placement = std::move(*outcome.mapping);
  } else {
    auto outcome = embed(view_, request);
    result.rejection = outcome.rejection;
    result.cost = outcome.cost;
    if (outcome.accepted()) placement = as_split(*outcome.mapping, request);
  }
  if (result.rejection != RejectStage::none) {
    ++stats_.rejected;
    result.cost = 0;
    return result;
  }
  if (auto status = view_.reserve(request, placement, Stage::tentative);
      status != ReserveStatus::ok) {
    throw std::logic_error(std::string("embedder produced an unreservable mapping: ") +
                           to_string(status));
  }
  result.accepted = true;
  if (batch_.empty()) {
    batch_.opened_at = now;
    if (policy_.timed()) result.window_deadline = now + policy_.window;
  }
  result.batch_id = batch_.id;
  batch_.entries.push_back({request, std::move(placement), result.cost});
  stats_.max_batch_size = std::max(stats_.max_batch_size, batch_.size());
  return result;
}

bool Controller::trigger_due() const { return policy_.counts() && batch_.size() >= policy_.n; }

CommitReport Controller::on_trigger(Time now) {
  CommitReport report;
  report.time = now;
  report.batch_size = batch_.size();
  if (batch_.empty()) return report;

  if (config_.kind == StrategyKind::static_splitting) {
    for (const auto& e : batch_.entries) report.cost_before_remap += e.cost;
    report.cost_after_remap = report.cost_before_remap;
  } else {
    auto remap = remap_pass(view_, batch_);
    report.links_remapped = remap.rerouted;
    report.cost_before_remap = remap.cost_before;
    report.cost_after_remap = remap.cost_after;
    stats_.remapped_links += remap.rerouted;
  }

  ++rules_.commit_events;
  for (const auto& entry : batch_.entries) {
    const auto id = entry.request.id;
    if (config_.verify_commits) {
      auto check = validate_mapping(*substrate_, view_.committed_only(), entry.request, entry.mapping);
      if (!check.ok()) throw std::logic_error("commit of an invalid mapping");
    }
    auto switches = rule_switches(entry.mapping);
    if (view_.commit(id, switches) != ReserveStatus::ok) {
      view_.release(id);
      report.cancelled.push_back(id);
      ++stats_.rejected_at_commit;
      continue;
    }
    for (auto s : switches) ++rules_.installed[s.index()];
    rules_.writes += switches.size();
    report.rules_written += switches.size();

    CommittedRequest c;
    c.id = id;
    c.cost = entry.cost;
    c.arrival = entry.request.arrival;
    c.departure = entry.request.departure();
    c.wait = now - entry.request.arrival;
    c.mean_hops = mean_hops(entry.mapping);
    c.rules = switches.size();
    report.committed.push_back(c);
    stats_.max_wait = std::max(stats_.max_wait, c.wait);
    ++stats_.committed;
    active_.emplace(id, std::move(switches));
  }
  batch_.entries.clear();
  batch_.opened_at = now;
  ++batch_.id;
  return report;
}

void Controller::on_departure(RequestId id, Time /*now*/) {
  auto it = active_.find(id);
  if (it == active_.end()) {
    throw std::invalid_argument("departure of request " + std::to_string(id.value) +
                                " which holds no committed resources");
  }
  view_.release(id);
  for (auto s : it->second) --rules_.installed[s.index()];
  active_.erase(it);
}

StepResult Controller::step(const Event& event, const VirtualNetworkRequest* request) {
  StepResult result;
  switch (event.kind) {
    case EventKind::arrival:
      if (request == nullptr) throw std::invalid_argument("arrival event without a request");
      result.arrival = on_arrival(*request, event.time);
      if (trigger_due()) result.commit = on_trigger(event.time);
      break;
    case EventKind::trigger:
      if (event.payload == batch_.id && !batch_.empty()) result.commit = on_trigger(event.time);
      break;
    case EventKind::departure:
      on_departure(RequestId(static_cast<std::uint32_t>(event.payload)), event.time);
      result.departed = true;
      break;
  }
  return result;
}

}  // namespace vnesim
