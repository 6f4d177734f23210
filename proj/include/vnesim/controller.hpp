#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vnesim/batch.hpp"
#include "vnesim/embedder.hpp"
#include "vnesim/event.hpp"
#include "vnesim/substrate_view.hpp"

namespace vnesim {

enum class StrategyKind {
  proposed_batched,     // tentative batch, remap pass, atomic rule write
  per_request_dynamic,  // embed, singleton remap pass, immediate commit
  static_splitting,     // path splitting, time window, never remaps
};

enum class TriggerMode { count_only, time_only, whichever_first };

const char* to_string(StrategyKind k);
const char* to_string(TriggerMode m);
std::optional<StrategyKind> parse_strategy(const std::string& s);
std::optional<TriggerMode> parse_trigger_mode(const std::string& s);

struct BatchPolicy {
  std::size_t n = 5;                // successful tentative mappings per batch
  Time window = time_units(25);     // oldest tentative mapping waits at most this long
  TriggerMode mode = TriggerMode::whichever_first;

  bool counts() const { return mode != TriggerMode::time_only; }
  bool timed() const { return mode != TriggerMode::count_only; }
  // Throws std::invalid_argument when n < 1 or a used window is not positive.
  void validate() const;
};

struct StrategyConfig {
  StrategyKind kind = StrategyKind::proposed_batched;
  BatchPolicy policy;
  std::size_t max_split_paths = 3;
  // Re-validate every mapping against committed-only residuals at commit and
  // throw std::logic_error on failure. Used by tests.
  bool verify_commits = false;
};

// The policy a strategy actually runs with.
BatchPolicy effective_policy(const StrategyConfig& config);

struct RuleTable {
  std::vector<Amount> installed;  // flow rules per switch, 1 memory unit each
  std::uint64_t writes = 0;       // one per rule written to one switch
  std::uint64_t commit_events = 0;
};

struct ArrivalResult {
  bool accepted = false;  // tentatively; final outcome is decided at commit
  RejectStage rejection = RejectStage::none;
  Amount cost = 0;
  // Set when this arrival opened a batch under a timed policy.
  std::optional<Time> window_deadline;
  std::uint64_t batch_id = 0;
};

struct CommittedRequest {
  RequestId id;
  Amount cost = 0;
  Time arrival = 0;
  Time departure = 0;  // arrival + lifetime
  Time wait = 0;       // time spent tentative before the rules were written
  double mean_hops = 0;
  std::size_t rules = 0;
};

struct CommitReport {
  Time time = 0;
  std::size_t batch_size = 0;
  std::vector<CommittedRequest> committed;
  std::vector<RequestId> cancelled;  // rule memory ran out at commit
  std::uint64_t rules_written = 0;
  std::size_t links_remapped = 0;
  Amount cost_before_remap = 0;
  Amount cost_after_remap = 0;

  bool empty() const { return batch_size == 0; }
};

struct StepResult {
  std::optional<ArrivalResult> arrival;
  std::optional<CommitReport> commit;
  bool departed = false;
};

struct ControllerStats {
  std::uint64_t arrivals = 0;
  std::uint64_t rejected = 0;
  std::uint64_t rejected_at_commit = 0;
  std::uint64_t committed = 0;
  std::uint64_t remapped_links = 0;
  std::size_t max_batch_size = 0;
  Time max_wait = 0;
};

/**
 * SDN controller emulation. Owns the resource ledger, the pending batch and
 * the rule tables. Single-threaded: the event loop drives it through step().
 */
class Controller {
 public:
  Controller(const Substrate& substrate, StrategyConfig config);

  ArrivalResult on_arrival(const VirtualNetworkRequest& request, Time now);
  // Count condition of the policy is met.
  bool trigger_due() const;
  // Remap (unless static), then write all rules of the batch at once.
  // An empty batch is a no-op.
  CommitReport on_trigger(Time now);
  // Throws std::invalid_argument for a request that holds no committed rules.
  void on_departure(RequestId id, Time now);

  // Routes one event to the handlers above. `request` is required for
  // arrivals and ignored otherwise. Triggers for an already committed batch
  // are ignored.
  StepResult step(const Event& event, const VirtualNetworkRequest* request);

  const SubstrateView& view() const { return view_; }
  const RuleTable& rules() const { return rules_; }
  const PendingBatch& batch() const { return batch_; }
  const ControllerStats& stats() const { return stats_; }
  const StrategyConfig& config() const { return config_; }
  const BatchPolicy& policy() const { return policy_; }
  std::size_t active_requests() const { return active_.size(); }

 private:
  const Substrate* substrate_;
  StrategyConfig config_;
  BatchPolicy policy_;
  SubstrateView view_;
  PendingBatch batch_;
  RuleTable rules_;
  ControllerStats stats_;
  std::map<RequestId, std::vector<SwitchId>> active_;  // committed request -> rule switches
};

}  // namespace vnesim
