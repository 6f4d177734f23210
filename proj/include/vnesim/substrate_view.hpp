#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vnesim/mapping.hpp"
#include "vnesim/substrate.hpp"

namespace vnesim {

// Plain residual snapshot, indexed by SwitchId / LinkId.
struct Residuals {
  std::vector<Amount> switches;
  std::vector<Amount> links;

  static Residuals totals(const Substrate& substrate);
  friend bool operator==(const Residuals&, const Residuals&) = default;
};

enum class Stage { tentative, committed };

enum class ReserveStatus {
  ok,
  insufficient_switch,
  insufficient_link,
  duplicate_request,
  invalid_state,
};

enum class ReleaseStatus { released, already_released };

const char* to_string(ReserveStatus s);

// Everything one request holds on the substrate.
struct Reservation {
  Stage stage = Stage::tentative;
  SplitMapping placement;
  std::vector<Amount> node_demands;
  std::vector<Amount> link_demands;
  std::vector<std::pair<SwitchId, Amount>> switch_use;  // aggregated node demand per host
  std::vector<std::pair<LinkId, Amount>> link_use;      // aggregated bandwidth per link
  std::vector<std::pair<SwitchId, Amount>> rule_use;    // rule-memory units, committed only

  Amount rule_count() const;
};

/**
 * The controller's resource picture: committed residuals per element plus
 * an overlay of tentative reservations that are not yet written to switches.
 *
 *   effective residual = committed residual - tentative load >= 0
 *   committed residual + committed node demands + rule memory = total
 *
 * Every mutation is atomic and bumps version().
 */
class SubstrateView {
 public:
  explicit SubstrateView(const Substrate& substrate);

  const Substrate& substrate() const { return *substrate_; }

  Amount switch_residual(SwitchId s) const;
  Amount link_residual(LinkId l) const;
  Amount committed_switch_residual(SwitchId s) const { return committed_switch_.at(s.index()); }
  Amount committed_link_residual(LinkId l) const { return committed_link_.at(l.index()); }
  Amount tentative_switch_load(SwitchId s) const { return tentative_switch_.at(s.index()); }
  Amount tentative_link_load(LinkId l) const { return tentative_link_.at(l.index()); }

  Residuals effective() const;
  Residuals committed_only() const;

  // Allocated share (committed + tentative) of an element, in [0, 1].
  double switch_utilization(SwitchId s) const;
  double link_utilization(LinkId l) const;

  ReserveStatus reserve(const VirtualNetworkRequest& request, const Mapping& mapping, Stage stage);
  ReserveStatus reserve(const VirtualNetworkRequest& request, const SplitMapping& mapping,
                        Stage stage);

  // Moves a tentative reservation to the committed ledger and charges one
  // rule-memory unit per entry in `rule_switches`. Refused without change if
  // any switch lacks headroom for its rules.
  ReserveStatus commit(RequestId id, std::span<const SwitchId> rule_switches);

  // Swaps the path of one single-path virtual link of a tentative request.
  ReserveStatus reroute_link(RequestId id, std::size_t vlink, const Path& new_path);

  // Returns every resource the request holds. Throws std::out_of_range for an
  // id that was never reserved; a second release is a no-op.
  ReleaseStatus release(RequestId id);

  const Reservation* find(RequestId id) const;
  const std::map<RequestId, Reservation>& reservations() const { return reservations_; }

  std::uint64_t version() const { return version_; }

  // Recomputes both ledger identities from the reservation records.
  // Returns a description of the first broken identity, if any.
  std::optional<std::string> conservation_error() const;

 private:
  ReserveStatus reserve_impl(RequestId id, Reservation reservation, Stage stage);

  const Substrate* substrate_;
  std::vector<Amount> committed_switch_;
  std::vector<Amount> committed_link_;
  std::vector<Amount> tentative_switch_;
  std::vector<Amount> tentative_link_;
  std::map<RequestId, Reservation> reservations_;
  std::set<RequestId> released_;
  std::uint64_t version_ = 0;
};

}  // namespace vnesim
