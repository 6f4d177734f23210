#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "vnesim/simulator.hpp"

namespace vnesim {

struct SummaryRow {
  std::string strategy;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  RunSummary summary;
  std::uint64_t trace_hash = 0;
};

inline constexpr const char* kSummaryHeader =
    "strategy,seed,n,arrivals,accepted,rejected,rejected_at_commit,acceptance_rate,mean_cost,"
    "avg_link_util,avg_switch_util,rule_writes,commit_events,remapped_links,mean_latency,"
    "mean_wait,trace_hash";

SummaryRow summary_row(const RunConfig& config, const RunResult& result);
void write_summary_row(std::ostream& out, const SummaryRow& row);

// Runs every config on up to `workers` threads. Results are in input order
// and do not depend on the worker count.
std::vector<SummaryRow> run_sweep(const std::vector<RunConfig>& configs, std::size_t workers);

// Entry point of the vnesim tool. Returns the process exit status.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vnesim
