#include "vnesim/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <exception>
#include <ostream>
#include <thread>

namespace vnesim {

SummaryRow summary_row(const RunConfig& config, const RunResult& result) {
  return SummaryRow{to_string(config.strategy.kind), config.seed,
                    effective_policy(config.resolved_strategy()).n, result.summary,
                    result.trace_hash};
}

void write_summary_row(std::ostream& out, const SummaryRow& row) {
  const auto& s = row.summary;
  out << row.strategy << ',' << row.seed << ',' << row.n << ',' << s.arrivals << ','
      << s.accepted << ',' << s.rejected << ',' << s.rejected_at_commit << ','
      << format_double(s.acceptance_rate) << ',' << format_double(s.mean_cost) << ','
      << format_double(s.avg_link_util) << ',' << format_double(s.avg_switch_util) << ','
      << s.rule_writes << ',' << s.commit_events << ',' << s.remapped_links << ','
      << format_double(s.mean_latency) << ',' << format_double(s.mean_wait) << ','
      << format_hash(row.trace_hash) << '\n';
}

std::vector<SummaryRow> run_sweep(const std::vector<RunConfig>& configs, std::size_t workers) {
  for (const auto& c : configs) c.validate();
  std::vector<SummaryRow> rows(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < configs.size();) {
      try {
        rows[i] = summary_row(configs[i], run(configs[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, configs.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

namespace {

struct Options {
  std::string strategy = "proposed-batched";
  std::string mode = "whichever-first";
  std::string substrate = "default";
  std::size_t workers = 1;
  std::size_t seeds = 1;
  std::vector<std::size_t> sweep_n;
  std::string topology_file;
};

void add_run_options(CLI::App& app, RunConfig& c, Options& o) {
  auto& g = c.generator;
  app.add_option("--strategy", o.strategy,
                 "proposed-batched, per-request-dynamic or static-splitting")
      ->capture_default_str();
  app.add_option("--n", c.strategy.policy.n, "tentative mappings per batch")->capture_default_str();
  app.add_option("--window", c.window_units, "batch window in time units [default: n * mean inter-arrival]");
  app.add_option("--mode", o.mode, "count, time or whichever-first")->capture_default_str();
  app.add_option("--split-paths", c.strategy.max_split_paths, "path limit for static-splitting")
      ->capture_default_str();
  app.add_option("--requests", c.request_count)->capture_default_str();
  app.add_option("--seed", c.seed)->capture_default_str();
  app.add_option("--substrate", o.substrate, "default, random, or a topology file")
      ->capture_default_str();
  app.add_option("--switches", g.switch_count, "switch count of a random substrate")
      ->capture_default_str();
  app.add_option("--substrate-edge-prob", g.substrate_edge_probability)->capture_default_str();
  app.add_option("--capacity-min", g.capacity.lo)->capture_default_str();
  app.add_option("--capacity-max", g.capacity.hi)->capture_default_str();
  app.add_option("--capacity-scale", g.capacity_scale)->capture_default_str();
  app.add_option("--nodes-min", g.node_count.lo)->capture_default_str();
  app.add_option("--nodes-max", g.node_count.hi)->capture_default_str();
  app.add_option("--node-demand-min", g.node_demand.lo)->capture_default_str();
  app.add_option("--node-demand-max", g.node_demand.hi)->capture_default_str();
  app.add_option("--link-demand-min", g.link_demand.lo)->capture_default_str();
  app.add_option("--link-demand-max", g.link_demand.hi)->capture_default_str();
  app.add_option("--edge-prob", g.edge_probability, "extra virtual link probability")
      ->capture_default_str();
  app.add_option("--mean-interarrival", g.mean_interarrival)->capture_default_str();
  app.add_option("--mean-lifetime", g.mean_lifetime)->capture_default_str();
  app.add_option("--horizon", c.horizon_units, "stop after this many time units");
  app.add_option("--hop-delay", c.latency.hop_delay)->capture_default_str();
  app.add_option("--write-delay", c.latency.write_delay)->capture_default_str();
}

// Applies the string-valued options to the config.
void resolve(RunConfig& c, const Options& o) {
  auto kind = parse_strategy(o.strategy);
  if (!kind) throw std::invalid_argument("unknown strategy '" + o.strategy + "'");
  c.strategy.kind = *kind;
  auto mode = parse_trigger_mode(o.mode);
  if (!mode) throw std::invalid_argument("unknown trigger mode '" + o.mode + "'");
  c.strategy.policy.mode = *mode;
  if (o.substrate == "default") {
    c.generator.source = SubstrateSource::builtin_default;
  } else if (o.substrate == "random") {
    c.generator.source = SubstrateSource::random;
  } else {
    c.generator.source = SubstrateSource::file;
    c.generator.substrate_path = o.substrate;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-event simulator for online virtual network embedding"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  RunConfig config;
  Options opts;
  add_run_options(app, config, opts);
  app.add_option("--out", config.csv_path, "CSV log path (run only)");

  auto* run_cmd = app.add_subcommand("run", "single run: CSV log plus a summary row");
  auto* compare_cmd = app.add_subcommand("compare", "all three strategies on one workload");
  auto* sweep_cmd = app.add_subcommand("sweep", "independent runs over seeds and batch sizes");
  sweep_cmd->add_option("--seeds", opts.seeds, "number of consecutive seeds from --seed")
      ->capture_default_str();
  sweep_cmd->add_option("--sweep-n", opts.sweep_n, "batch sizes to run [default: --n]")
      ->delimiter(',');
  sweep_cmd->add_option("--workers", opts.workers, "parallel engines")->capture_default_str();
  auto* topo_cmd = app.add_subcommand("validate-topology", "check a topology file");
  topo_cmd->add_option("file", opts.topology_file)->required();
  for (auto* sub : {run_cmd, compare_cmd, sweep_cmd, topo_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (topo_cmd->parsed()) {
      auto s = load_substrate(opts.topology_file);
      out << opts.topology_file << ": ok, " << s.switch_count() << " switches, "
          << s.link_count() << " links\n";
      return 0;
    }

    resolve(config, opts);
    if (!run_cmd->parsed() && !config.csv_path.empty()) {
      throw std::invalid_argument("--out applies to the run subcommand only");
    }
    if (run_cmd->parsed()) {
      config.validate();
      auto result = run(config);
      out << kSummaryHeader << '\n';
      write_summary_row(out, summary_row(config, result));
      return 0;
    }

    if (compare_cmd->parsed()) {
      config.validate();
      const auto scenario = build_scenario(config);
      out << kSummaryHeader << '\n';
      for (auto kind : {StrategyKind::proposed_batched, StrategyKind::per_request_dynamic,
                        StrategyKind::static_splitting}) {
        auto c = config;
        c.strategy.kind = kind;
        c.validate();
        write_summary_row(out, summary_row(c, run(c, scenario)));
      }
      return 0;
    }

    if (opts.seeds < 1) throw std::invalid_argument("--seeds must be at least 1");
    if (opts.workers < 1) throw std::invalid_argument("--workers must be at least 1");
    if (opts.sweep_n.empty()) opts.sweep_n.push_back(config.strategy.policy.n);
    std::vector<RunConfig> configs;
    for (auto n : opts.sweep_n) {
      for (std::size_t i = 0; i < opts.seeds; ++i) {
        auto c = config;
        c.strategy.policy.n = n;
        c.seed = config.seed + i;
        configs.push_back(c);
      }
    }
    auto rows = run_sweep(configs, opts.workers);
    out << kSummaryHeader << '\n';
    for (const auto& row : rows) write_summary_row(out, row);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace vnesim
