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

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "streamplace/arcflow.hpp"
#include "streamplace/mcvbp.hpp"
#include "streamplace/scenario.hpp"

namespace streamplace {

/// NL: nearest region only. ARMVAC: RTT filter then greedy cheapest-first
/// fill. GCL: exact multiple-choice packing over every feasible (region,
/// type, mode). ST1/ST2/ST3: GCL restricted to CPU-only, GPU-only, or both.
enum class StrategyKind { NL, ARMVAC, GCL, ST1, ST2, ST3 };

std::string_view to_string(StrategyKind k);
/// Case-insensitive ("gcl", "st3"); throws Error on unknown names.
StrategyKind strategy_from_string(std::string_view s);
std::vector<StrategyKind> parse_strategy_list(std::string_view comma_separated);

struct StreamPlacement {
  std::string stream_id;
  std::string region;
  std::string instance_type;
  int instance_index = 0;  // index into the allocation's bins
  ExecMode mode = ExecMode::Cpu;
  double rtt_ms = 0.0;
  double fps = 0.0;
};

struct StrategyReport {
  std::string strategy;
  /// Bin classes are offer keys ("type@region"); mode ids are
  /// "<CPU|GPU>@<offer key>".
  Allocation allocation;
  Money total_cost;
  std::vector<StreamPlacement> per_stream;      // sorted by stream id
  std::vector<std::string> infeasible_streams;  // sorted
  /// GCL family only: false when the node budget stopped the search.
  bool proven_optimal = false;
  Money lower_bound;
  std::uint64_t search_nodes = 0;

  std::size_t instances_opened() const { return allocation.bins.size(); }
  bool fully_placed() const { return infeasible_streams.empty(); }
};

struct GclOptions {
  /// Objective surcharge per stream whose (instance type, region) differs
  /// from `previous_offer`. Streams absent from the map never pay it.
  Money migration_penalty;
  std::map<std::string, std::string> previous_offer;  // stream id -> offer key
};

/// Stands in for an infinite migration penalty.
inline constexpr Money kInfinitePenalty = Money::from_millis(std::int64_t{1} << 40);

StrategyReport allocate_nl(const Scenario& s);
StrategyReport allocate_armvac(const Scenario& s);
StrategyReport allocate_gcl(const Scenario& s, const GclOptions& options = {});
/// kind must be ST1, ST2 or ST3.
StrategyReport allocate_mode_strategy(const Scenario& s, StrategyKind kind,
                                      const GclOptions& options = {});

/// The integer instance a GCL-family strategy solves. `classes` keeps only
/// offers some item may use, in catalog order.
struct PackingModel {
  std::vector<PackItem> items;
  std::vector<BinClass> classes;
  std::vector<std::string> infeasible_streams;  // no placeable mode
};
PackingModel gcl_packing_model(const Scenario& s, StrategyKind kind = StrategyKind::GCL,
                               const GclOptions& options = {});

/// Single-bin view of a scenario for the arc-flow model: one item type per
/// profile (in profile order) with as many copies as jobs running it, each
/// job in its first allowed mode, against one offer. Only dimensions the bin
/// or some item uses are kept.
struct ArcFlowInstance {
  std::string offer_key;
  std::vector<std::string> item_names;
  std::vector<ArcFlowItem> items;
  IntVector capacity;
};
/// Empty `offer_key` picks the first catalog offer. Throws MissingOffer,
/// ValidationError when one profile's jobs differ in demand, and
/// DimensionLimitExceeded.
ArcFlowInstance arcflow_instance(const Scenario& s, std::string_view offer_key = {});

StrategyReport run_strategy(const Scenario& s, StrategyKind kind,
                            const GclOptions& options = {});

/// Runs the strategies concurrently; results are in input order.
std::vector<StrategyReport> run_strategies(const Scenario& s, std::span<const StrategyKind> kinds);

/// Copy of `s` with every job (including timeline additions) at `fps`.
Scenario with_uniform_fps(const Scenario& s, double fps);

struct SweepRow {
  double fps = 0.0;
  StrategyReport report;
};

/// One NL/ARMVAC/GCL (or `kinds`) report per sweep value, computed in
/// parallel over the sweep; rows ordered by (sweep value, kind order).
std::vector<SweepRow> fps_sweep(const Scenario& s, std::span<const double> fps_values,
                                std::span<const StrategyKind> kinds);
std::vector<SweepRow> fps_sweep_serial(const Scenario& s, std::span<const double> fps_values,
                                       std::span<const StrategyKind> kinds);

/// Independent check of a report against the raw model: every stream placed
/// once or listed infeasible, RTT within budget, per-dimension utilization
/// within util_cap of raw capacity, and costs matching catalog prices.
std::vector<std::string> check_report(const Scenario& s, const StrategyReport& r);

/// Highest per-dimension utilization (fraction of raw capacity) of any
/// instance in the report.
double max_utilization(const Scenario& s, const StrategyReport& r);

}  // namespace streamplace
