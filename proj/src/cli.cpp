// Copyright 2026 The streamplace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streamplace/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <optional>
#include <string>
#include <typeinfo>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "streamplace/adaptive.hpp"
#include "streamplace/errors.hpp"
#include "streamplace/report_io.hpp"
#include "streamplace/scenario_gen.hpp"
#include "streamplace/strategies.hpp"

namespace streamplace {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string scenario_path;
  std::string strategies = "gcl";
  std::string fps_sweep = "0.5,1,2,5,10,20";
  std::string out_dir = ".";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  int streams = 6;
  std::optional<double> util_cap;
  std::optional<double> alpha;
  std::optional<int> max_items;
  std::optional<int> max_classes;
  std::optional<std::uint64_t> node_budget;
  std::string migration_penalty = "0";
  std::string offer;
  std::string weights;
  bool raw_graph = false;
  std::string catalog_path;
};

fs::path default_world_catalog() { return fs::path(STREAMPLACE_DATA_DIR) / "catalogs" / "world.json"; }

Scenario load_configured(const RunConfig& cfg) {
  Scenario s = [&] {
    if (!cfg.scenario_path.empty()) return load_scenario(cfg.scenario_path);
    if (!cfg.seed) throw Error("need --scenario PATH or --seed N");
    GeneratorOptions g;
    g.streams = cfg.streams;
    const fs::path cat = cfg.catalog_path.empty() ? default_world_catalog() : fs::path(cfg.catalog_path);
    return random_world_scenario(load_catalog(cat), *cfg.seed, g);
  }();
  if (cfg.util_cap) {
    if (!(*cfg.util_cap > 0.0 && *cfg.util_cap <= 1.0)) throw Error("--util-cap must be in (0, 1]");
    s.solver.util_cap = *cfg.util_cap;
  }
  if (cfg.alpha) {
    if (!(*cfg.alpha > 0.0)) throw Error("--alpha must be > 0");
    s.network.rtt_budget_coeff = *cfg.alpha;
  }
  if (cfg.max_items) s.solver.exact_limits.max_items = *cfg.max_items;
  if (cfg.max_classes) s.solver.exact_limits.max_bin_classes = *cfg.max_classes;
  if (cfg.node_budget) s.solver.node_budget = *cfg.node_budget;
  return s;
}

std::vector<double> parse_fps_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string tok = text.substr(pos, comma - pos);
    if (!tok.empty()) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !(v > 0.0)) throw Error("bad fps value '" + tok + "'");
      out.push_back(v);
    }
    pos = comma + 1;
  }
  if (out.empty()) throw Error("empty --fps-sweep list");
  return out;
}

Money parse_penalty(const std::string& text) {
  if (text == "inf" || text == "INF" || text == "infinity") return kInfinitePenalty;
  std::size_t used = 0;
  double v = -1.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 0.0)) throw Error("bad --migration-penalty '" + text + "'");
  return Money::from_usd(v);
}

bool table_format(const RunConfig& cfg) {
  if (cfg.format == "table") return true;
  if (cfg.format == "csv") return false;
  throw Error("--format must be csv or table");
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw Error("cannot create output directory '" + cfg.out_dir + "'");
  return dir;
}

void note_search(const StrategyReport& r, std::ostream& err) {
  if (r.search_nodes == 0 || r.proven_optimal) return;
  const std::int64_t gap = r.total_cost.millis() - r.lower_bound.millis();
  fmt::print(err, "{}: node budget reached after {} nodes; lower bound {} USD/hr (gap {})\n",
             r.strategy, r.search_nodes, format_usd(r.lower_bound), format_usd(Money::from_millis(gap)));
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool table = table_format(cfg);
  const auto kinds = parse_strategy_list(cfg.strategies);
  const Scenario s = load_configured(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  const auto reports = run_strategies(s, kinds);
  bool infeasible = false;
  for (const StrategyReport& r : reports) {
    write_text_file(dir / ("placements_" + r.strategy + ".csv"), placements_csv(s, r));
    infeasible = infeasible || !r.fully_placed();
    note_search(r, err);
  }
  const std::string summary = summary_csv(reports);
  write_text_file(dir / "summary.csv", summary);
  out << (table ? summary_table(reports) : summary);
  return infeasible ? kExitInfeasible : kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool table = table_format(cfg);
  const auto kinds = parse_strategy_list(cfg.strategies);
  const auto fps = parse_fps_list(cfg.fps_sweep);
  const Scenario s = load_configured(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  const auto rows = fps_sweep(s, fps, kinds);
  bool infeasible = false;
  for (const SweepRow& row : rows) {
    infeasible = infeasible || !row.report.fully_placed();
    note_search(row.report, err);
  }
  const std::string csv = sweep_csv(rows);
  write_text_file(dir / "sweep.csv", csv);
  out << (table ? sweep_table(rows) : csv);
  return infeasible ? kExitInfeasible : kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Scenario s = load_configured(cfg);
  const PackingModel m = gcl_packing_model(s);
  const Allocation oracle = brute_force_oracle(m.items, m.classes);
  const Allocation exact = solve_mcvbp_exact(m.items, m.classes, s.solver.exact_limits);
  fmt::print(out, "items={} bin_classes={} infeasible={}\n", m.items.size(), m.classes.size(),
             m.infeasible_streams.size());
  fmt::print(out, "oracle_cost_usd_per_hr={}\nexact_cost_usd_per_hr={}\n",
             format_usd(oracle.total_cost), format_usd(exact.total_cost));
  const bool agree = oracle.objective() == exact.objective();
  fmt::print(out, "{}\n", agree ? "agree" : "DISAGREE");
  return agree ? kExitOk : kExitInfeasible;
}

int cmd_adaptive(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const bool table = table_format(cfg);
  const auto kinds = parse_strategy_list(cfg.strategies);
  const Money penalty = parse_penalty(cfg.migration_penalty);
  const Scenario s = load_configured(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  std::string csv(kAdaptiveHeader);
  csv += '\n';
  std::string totals;
  bool infeasible = false;
  for (StrategyKind k : kinds) {
    const AdaptiveRun run = run_adaptive(s, k, penalty);
    const std::string part = adaptive_csv(run);
    csv += part.substr(part.find('\n') + 1);
    for (const Epoch& e : run.epochs) infeasible = infeasible || !e.report.fully_placed();
    totals += fmt::format("{:<8} cumulative_cost_usd={}\n", run.strategy, format_usd(run.cumulative_cost()));
  }
  write_text_file(dir / "adaptive.csv", csv);
  out << csv;
  if (table) out << totals;
  return infeasible ? kExitInfeasible : kExitOk;
}

std::vector<std::int64_t> parse_weights(const std::string& text, const ArcFlowInstance& inst) {
  std::vector<std::int64_t> w(inst.items.size(), 1);
  std::size_t pos = 0;
  while (!text.empty() && pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string tok = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (tok.empty()) continue;
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos) throw Error("weight '" + tok + "' is not NAME=VALUE");
    const std::string name = tok.substr(0, eq);
    std::size_t k = 0;
    while (k < inst.item_names.size() && inst.item_names[k] != name) ++k;
    if (k == inst.item_names.size()) throw Error("weight names unknown item type '" + name + "'");
    try {
      w[k] = std::stoll(tok.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error("bad weight '" + tok + "'");
    }
  }
  return w;
}

int cmd_arcflow(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Scenario s = load_configured(cfg);
  const ArcFlowInstance inst = arcflow_instance(s, cfg.offer);
  const auto weights = parse_weights(cfg.weights, inst);
  const ArcFlowGraph raw = build_arcflow(inst.items, inst.capacity);
  const ArcFlowGraph compressed = compress_graph(raw);
  const ArcFlowGraph& shown = cfg.raw_graph ? raw : compressed;
  out << dump_arcflow(shown);
  const ArcFlowSolution sol = solve_arcflow(shown, weights);
  std::string picked;
  for (std::size_t k = 0; k < sol.counts.size(); ++k) {
    for (int c = 0; c < sol.counts[k]; ++c) picked += (picked.empty() ? "" : ",") + inst.item_names[k];
  }
  fmt::print(out, "# offer {} nodes raw={} compressed={}\n", inst.offer_key, raw.nodes.size(),
             compressed.nodes.size());
  fmt::print(out, "BEST {} {}\n", sol.value, picked.empty() ? "-" : picked);
  return kExitOk;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (!cfg.seed) throw Error("generate needs --seed N");
  const fs::path cat = cfg.catalog_path.empty() ? default_world_catalog() : fs::path(cfg.catalog_path);
  GeneratorOptions g;
  g.streams = cfg.streams;
  const Scenario s = random_world_scenario(load_catalog(cat), *cfg.seed, g);
  const std::string text = scenario_to_json(s).dump(2) + "\n";
  if (cfg.out_dir == "-" || cfg.out_dir.empty()) {
    out << text;
  } else {
    write_text_file(cfg.out_dir, text);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Cost-minimal cloud instance selection for camera streams", "streamplace"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", cfg.scenario_path, "Scenario JSON file");
    sub->add_option("--seed", cfg.seed, "Generate a random world scenario with this seed");
    sub->add_option("--streams", cfg.streams, "Streams in a generated scenario")->check(CLI::PositiveNumber);
    sub->add_option("--catalog", cfg.catalog_path, "Catalog for generated scenarios");
    sub->add_option("--util-cap", cfg.util_cap, "Per-dimension utilization cap");
    sub->add_option("--alpha", cfg.alpha, "RTT budget coefficient");
    sub->add_option("--max-items", cfg.max_items, "Exact-solver item limit");
    sub->add_option("--max-classes", cfg.max_classes, "Exact-solver bin-class limit");
    sub->add_option("--node-budget", cfg.node_budget, "Search nodes when above the exact limits");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_dir, "Output directory");
    sub->add_option("--format", cfg.format, "csv or table");
  };

  CLI::App* solve = app.add_subcommand("solve", "Run strategies and write placements and summary");
  add_common(solve);
  add_output(solve);
  solve->add_option("--strategy", cfg.strategies, "Comma list of nl,armvac,gcl,st1,st2,st3");

  CLI::App* compare = app.add_subcommand("compare", "Cost of each strategy across a frame-rate sweep");
  add_common(compare);
  add_output(compare);
  std::string compare_strategies = "nl,armvac,gcl";
  compare->add_option("--strategy", compare_strategies, "Comma list of strategies");
  compare->add_option("--fps-sweep", cfg.fps_sweep, "Comma list of frame rates");

  CLI::App* oracle = app.add_subcommand("oracle", "Compare exhaustive enumeration with the exact solver");
  add_common(oracle);

  CLI::App* adaptive = app.add_subcommand("adaptive", "Replay the scenario timeline");
  add_common(adaptive);
  add_output(adaptive);
  adaptive->add_option("--strategy", cfg.strategies, "Comma list of strategies");
  adaptive->add_option("--migration-penalty", cfg.migration_penalty, "USD per moved stream, or inf");

  CLI::App* arcflow = app.add_subcommand("arcflow", "Dump the single-bin arc-flow graph");
  add_common(arcflow);
  arcflow->add_option("--offer", cfg.offer, "Offer key type@region (default: first)");
  arcflow->add_option("--weights", cfg.weights, "NAME=VALUE list (default 1 each)");
  arcflow->add_flag("--raw", cfg.raw_graph, "Dump the uncompressed graph");

  CLI::App* generate = app.add_subcommand("generate", "Write a random world scenario");
  generate->add_option("--seed", cfg.seed, "Random seed")->required();
  generate->add_option("--streams", cfg.streams, "Number of streams")->check(CLI::PositiveNumber);
  generate->add_option("--catalog", cfg.catalog_path, "Catalog file");
  std::string generate_out = "-";
  generate->add_option("--out", generate_out, "Output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(cfg, out, err);
    if (*compare) {
      cfg.strategies = compare_strategies;
      return cmd_compare(cfg, out, err);
    }
    if (*oracle) return cmd_oracle(cfg, out, err);
    if (*adaptive) return cmd_adaptive(cfg, out, err);
    if (*arcflow) return cmd_arcflow(cfg, out, err);
    if (*generate) {
      cfg.out_dir = generate_out;
      return cmd_generate(cfg, out, err);
    }
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    // Plain Error means a bad flag value; show usage for those.
    if (typeid(e) == typeid(Error)) err << app.get_subcommands().front()->help();
    return kExitError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitError;
  }
  return kExitError;
}

}  // namespace streamplace
