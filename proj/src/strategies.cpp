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

#include "streamplace/strategies.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "streamplace/errors.hpp"
#include "streamplace/integerize.hpp"
#include "streamplace/netmodel.hpp"

namespace streamplace {

std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::NL: return "nl";
    case StrategyKind::ARMVAC: return "armvac";
    case StrategyKind::GCL: return "gcl";
    case StrategyKind::ST1: return "st1";
    case StrategyKind::ST2: return "st2";
    case StrategyKind::ST3: return "st3";
  }
  return "?";
}

StrategyKind strategy_from_string(std::string_view s) {
  std::string low;
  for (char c : s) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (StrategyKind k : {StrategyKind::NL, StrategyKind::ARMVAC, StrategyKind::GCL,
                         StrategyKind::ST1, StrategyKind::ST2, StrategyKind::ST3}) {
    if (low == to_string(k)) return k;
  }
  throw Error("unknown strategy '" + std::string(s) + "' (expected nl, armvac, gcl, st1, st2, st3)");
}

std::vector<StrategyKind> parse_strategy_list(std::string_view comma_separated) {
  std::vector<StrategyKind> out;
  std::stringstream ss{std::string(comma_separated)};
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(strategy_from_string(tok));
  }
  if (out.empty()) throw Error("empty strategy list");
  return out;
}

namespace {

enum class OfferFilter { Any, CpuOnly, GpuOnly };

struct Policy {
  std::vector<ExecMode> modes;  // modes a job may use, intersected with its own
  OfferFilter offers = OfferFilter::Any;
};

Policy policy_for(StrategyKind k) {
  switch (k) {
    case StrategyKind::ST1: return {{ExecMode::Cpu}, OfferFilter::CpuOnly};
    case StrategyKind::ST2: return {{ExecMode::Gpu}, OfferFilter::GpuOnly};
    default: return {{ExecMode::Cpu, ExecMode::Gpu}, OfferFilter::Any};
  }
}

std::string mode_id(ExecMode m, const std::string& offer_key) {
  return std::string(to_string(m)) + "@" + offer_key;
}

struct ModelStream {
  const StreamJob* job = nullptr;
  std::vector<DemandMode> demands;  // policy-allowed, CPU before GPU
  std::vector<IntVector> cells;
  std::vector<double> rtt;        // per catalog region
  std::vector<char> region_ok;    // per catalog region
  std::size_t nearest = 0;        // catalog region index
};

// Integer view of a scenario under one mode/offer policy. The grid spans
// every catalog offer so all strategies share the same integer model.
struct Model {
  const Scenario* s = nullptr;
  Grid grid;
  std::vector<const InstanceOffer*> offers;  // policy-allowed
  std::vector<std::size_t> offer_region;      // catalog region index
  std::vector<BinClass> classes;              // parallel to offers
  std::vector<ModelStream> streams;           // sorted by id
  std::map<std::string, std::size_t> offer_index;
};

Model build_model(const Scenario& s, const Policy& policy) {
  Model m;
  m.s = &s;
  std::vector<CapacityVector> caps;
  for (const InstanceOffer& o : s.catalog.offers()) caps.push_back(o.capacity);
  m.grid = make_grid(caps, s.solver.grid);

  const auto& regions = s.catalog.regions();
  std::map<std::string, std::size_t> region_index;
  for (std::size_t r = 0; r < regions.size(); ++r) region_index[regions[r].id] = r;

  for (const InstanceOffer& o : s.catalog.offers()) {
    const bool has_gpu = o.capacity.gpu > 0.0;
    if (policy.offers == OfferFilter::CpuOnly && has_gpu) continue;
    if (policy.offers == OfferFilter::GpuOnly && !has_gpu) continue;
    m.offer_index[o.key()] = m.offers.size();
    m.offers.push_back(&o);
    m.offer_region.push_back(region_index.at(o.region));
    m.classes.push_back({o.key(), capacity_cells(o.capacity, s.solver.util_cap, m.grid),
                         o.price_per_hour, std::nullopt});
  }

  const RttMatrix rtt = rtt_matrix(s.jobs, regions, s.network);
  std::vector<std::size_t> order(s.jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return s.jobs[a].id < s.jobs[b].id; });
  for (std::size_t j : order) {
    const StreamJob& job = s.jobs[j];
    ModelStream st;
    st.job = &job;
    const ProgramProfile& prof = s.profile(job.program);
    for (ExecMode mode : job.allowed_modes) {
      if (std::find(policy.modes.begin(), policy.modes.end(), mode) == policy.modes.end()) continue;
      if (mode == ExecMode::Gpu && !prof.gpu_capable) continue;
      st.demands.push_back(demand_for(job, prof, mode));
      st.cells.push_back(demand_cells(st.demands.back().demand, m.grid));
    }
    const double budget = rtt_budget_ms(job.target_fps, s.network);
    for (std::size_t r = 0; r < regions.size(); ++r) {
      const double ms = rtt.at(j, r);
      st.rtt.push_back(ms);
      st.region_ok.push_back(ms <= budget ? 1 : 0);
      // Ties go to the smaller region id.
      if (r > 0) {
        const double best = st.rtt[st.nearest];
        if (ms < best || (ms == best && regions[r].id < regions[st.nearest].id)) st.nearest = r;
      }
    }
    m.streams.push_back(std::move(st));
  }
  return m;
}

bool fits_alone(const IntVector& dem, const IntVector& cap) {
  for (std::size_t d = 0; d < cap.size(); ++d) {
    if (dem[d] > cap[d]) return false;
  }
  return true;
}

// One mode per (execution mode, offer) the predicate admits and that fits.
template <typename OfferPred>
PackItem make_item(const Model& m, const ModelStream& st, OfferPred allow,
                   const GclOptions* options) {
  PackItem item{st.job->id, {}};
  const std::string* prev = nullptr;
  if (options != nullptr) {
    auto it = options->previous_offer.find(st.job->id);
    if (it != options->previous_offer.end()) prev = &it->second;
  }
  for (std::size_t d = 0; d < st.demands.size(); ++d) {
    for (std::size_t o = 0; o < m.offers.size(); ++o) {
      if (!allow(o) || !fits_alone(st.cells[d], m.classes[o].capacity)) continue;
      PackMode mode{mode_id(st.demands[d].mode, m.classes[o].class_id), st.cells[d],
                    {m.classes[o].class_id}, {}};
      if (prev != nullptr && *prev != m.classes[o].class_id) mode.extra_cost = options->migration_penalty;
      item.modes.push_back(std::move(mode));
    }
  }
  return item;
}

PackItem gcl_item(const Model& m, const ModelStream& st, const GclOptions* options) {
  return make_item(
      m, st, [&](std::size_t o) { return st.region_ok[m.offer_region[o]] != 0; }, options);
}

StrategyReport make_report(const Model& m, std::string name, const Allocation& a,
                           std::vector<std::string> infeasible) {
  StrategyReport r;
  r.strategy = std::move(name);
  r.allocation = a;
  r.total_cost = a.total_cost;
  std::sort(infeasible.begin(), infeasible.end());
  r.infeasible_streams = std::move(infeasible);
  for (const ModelStream& st : m.streams) {
    auto pl = a.placements.find(st.job->id);
    if (pl == a.placements.end()) continue;
    const std::string& key = a.bins.at(static_cast<std::size_t>(pl->second.bin)).class_id;
    const std::size_t o = m.offer_index.at(key);
    StreamPlacement p;
    p.stream_id = st.job->id;
    p.region = m.offers[o]->region;
    p.instance_type = m.offers[o]->type_name;
    p.instance_index = pl->second.bin;
    p.mode = exec_mode_from_string(pl->second.mode_id.substr(0, pl->second.mode_id.find('@')));
    p.rtt_ms = st.rtt[m.offer_region[o]];
    p.fps = st.job->target_fps;
    r.per_stream.push_back(std::move(p));
  }
  return r;
}

// Concatenates disjoint allocations and re-canonicalizes.
Allocation merge(std::span<const Allocation> parts, std::span<const PackItem> items,
                 std::span<const BinClass> classes) {
  Allocation all;
  for (const Allocation& a : parts) {
    const int offset = static_cast<int>(all.bins.size());
    all.bins.insert(all.bins.end(), a.bins.begin(), a.bins.end());
    for (const auto& [id, pl] : a.placements) all.placements[id] = {pl.mode_id, pl.bin + offset};
  }
  return canonicalize(all, items, classes);
}

struct Baseline {
  Allocation allocation;
  std::vector<std::string> infeasible;
};

Baseline nearest_location(const Model& m) {
  Baseline out;
  std::map<std::size_t, std::vector<PackItem>> by_region;
  std::vector<PackItem> all_items;
  for (const ModelStream& st : m.streams) {
    if (!st.region_ok[st.nearest]) {
      out.infeasible.push_back(st.job->id);
      continue;
    }
    PackItem item = make_item(
        m, st, [&](std::size_t o) { return m.offer_region[o] == st.nearest; }, nullptr);
    if (item.modes.empty()) {
      out.infeasible.push_back(st.job->id);
      continue;
    }
    all_items.push_back(item);
    by_region[st.nearest].push_back(std::move(item));
  }
  std::vector<Allocation> parts;
  for (const auto& [region, items] : by_region) {
    std::vector<BinClass> classes;
    for (std::size_t o = 0; o < m.offers.size(); ++o) {
      if (m.offer_region[o] == region) classes.push_back(m.classes[o]);
    }
    parts.push_back(solve_mcvbp_ffd(items, classes));
  }
  out.allocation = merge(parts, all_items, m.classes);
  return out;
}

Baseline armvac_greedy(const Model& m) {
  Baseline out;
  const std::size_t D = kResourceDims;
  std::vector<double> max_cap(D, 0.0);
  for (const BinClass& c : m.classes) {
    for (std::size_t d = 0; d < D; ++d) max_cap[d] = std::max(max_cap[d], static_cast<double>(c.capacity[d]));
  }

  // Streams with some (mode, feasible offer) that fits alone; others are
  // infeasible from the start.
  std::vector<std::size_t> order;
  std::vector<double> size(m.streams.size(), 0.0);
  for (std::size_t i = 0; i < m.streams.size(); ++i) {
    const ModelStream& st = m.streams[i];
    bool placeable = false;
    for (std::size_t o = 0; o < m.offers.size() && !placeable; ++o) {
      if (!st.region_ok[m.offer_region[o]]) continue;
      for (const IntVector& c : st.cells) placeable = placeable || fits_alone(c, m.classes[o].capacity);
    }
    if (!placeable) {
      out.infeasible.push_back(st.job->id);
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const IntVector& c : st.cells) {
      double s = 0.0;
      for (std::size_t d = 0; d < D; ++d) {
        if (max_cap[d] > 0.0) s = std::max(s, static_cast<double>(c[d]) / max_cap[d]);
      }
      best = std::min(best, s);
    }
    size[i] = best;
    order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return size[a] > size[b]; });

  // Cheapest first; ties by price per capacity cell, then offer key.
  std::vector<std::size_t> offers(m.offers.size());
  std::vector<double> per_cell(m.offers.size(), 0.0);
  for (std::size_t o = 0; o < offers.size(); ++o) {
    offers[o] = o;
    std::int64_t cells = 0;
    for (std::int64_t c : m.classes[o].capacity) cells += c;
    per_cell[o] = cells > 0 ? static_cast<double>(m.classes[o].unit_cost.millis()) / static_cast<double>(cells)
                            : std::numeric_limits<double>::infinity();
  }
  std::sort(offers.begin(), offers.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(m.classes[a].unit_cost, per_cell[a], m.classes[a].class_id) <
           std::tie(m.classes[b].unit_cost, per_cell[b], m.classes[b].class_id);
  });

  std::vector<char> assigned(m.streams.size(), 0);
  std::size_t remaining = order.size();
  Allocation a;
  std::map<std::string, int> per_class;
  std::vector<PackItem> items;

  while (remaining > 0) {
    bool opened = false;
    for (std::size_t o : offers) {
      const auto region = m.offer_region[o];
      const IntVector& cap = m.classes[o].capacity;
      bool region_useful = false;
      for (std::size_t i : order) region_useful = region_useful || (!assigned[i] && m.streams[i].region_ok[region]);
      if (!region_useful) continue;

      IntVector load(D, 0);
      std::vector<std::pair<std::size_t, std::size_t>> filled;  // (stream, demand idx)
      for (std::size_t i : order) {
        const ModelStream& st = m.streams[i];
        if (assigned[i] || !st.region_ok[region]) continue;
        // Smallest footprint on this offer first; CPU precedes GPU on ties.
        std::vector<std::pair<double, std::size_t>> modes;
        for (std::size_t d = 0; d < st.cells.size(); ++d) {
          double fp = 0.0;
          bool ok = true;
          for (std::size_t k = 0; k < D; ++k) {
            if (st.cells[d][k] == 0) continue;
            if (cap[k] == 0) ok = false;
            else fp = std::max(fp, static_cast<double>(st.cells[d][k]) / static_cast<double>(cap[k]));
          }
          if (ok) modes.emplace_back(fp, d);
        }
        std::stable_sort(modes.begin(), modes.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [fp, d] : modes) {
          IntVector next = load;
          for (std::size_t k = 0; k < D; ++k) next[k] += st.cells[d][k];
          if (!fits_alone(next, cap)) continue;
          load = std::move(next);
          filled.emplace_back(i, d);
          break;
        }
      }
      if (filled.empty()) continue;  // cheapest offer fits nothing: try the next one

      const int bin = static_cast<int>(a.bins.size());
      a.bins.push_back({m.classes[o].class_id, per_class[m.classes[o].class_id]++});
      for (const auto& [i, d] : filled) {
        const ModelStream& st = m.streams[i];
        a.placements[st.job->id] = {mode_id(st.demands[d].mode, m.classes[o].class_id), bin};
        assigned[i] = 1;
        --remaining;
      }
      opened = true;
      break;
    }
    if (!opened) {
      for (std::size_t i : order) {
        if (!assigned[i]) out.infeasible.push_back(m.streams[i].job->id);
      }
      break;
    }
  }
  for (const ModelStream& st : m.streams) {
    if (a.placements.contains(st.job->id)) items.push_back(gcl_item(m, st, nullptr));
  }
  out.allocation = canonicalize(a, items, m.classes);
  return out;
}

StrategyReport global_cheapest(const Scenario& s, const Policy& policy, std::string name,
                               const GclOptions& options) {
  const Model m = build_model(s, policy);
  std::vector<PackItem> items;
  std::vector<std::string> infeasible;
  std::set<std::string> used_classes;
  for (const ModelStream& st : m.streams) {
    PackItem item = gcl_item(m, st, &options);
    if (item.modes.empty()) {
      infeasible.push_back(st.job->id);
      continue;
    }
    for (const PackMode& pm : item.modes) used_classes.insert(pm.allowed_bin_classes.front());
    items.push_back(std::move(item));
  }

  SearchOptions so;
  const bool within_limits =
      static_cast<int>(items.size()) <= s.solver.exact_limits.max_items &&
      static_cast<int>(used_classes.size()) <= s.solver.exact_limits.max_bin_classes;
  so.node_budget = within_limits ? 0 : s.solver.node_budget;
  // The greedy baselines are feasible in this model whenever they place the
  // same streams, so they seed the incumbent.
  for (const Baseline& b : {nearest_location(m), armvac_greedy(m)}) {
    if (b.allocation.placements.size() == items.size()) so.warm_starts.push_back(b.allocation);
  }

  SearchResult res = solve_mcvbp_search(items, m.classes, so);
  StrategyReport r = make_report(m, std::move(name), res.allocation, std::move(infeasible));
  r.proven_optimal = res.proven_optimal;
  r.lower_bound = res.lower_bound;
  r.search_nodes = res.nodes;
  return r;
}

}  // namespace

PackingModel gcl_packing_model(const Scenario& s, StrategyKind kind, const GclOptions& options) {
  if (kind == StrategyKind::NL || kind == StrategyKind::ARMVAC) {
    throw Error("gcl_packing_model expects gcl, st1, st2 or st3");
  }
  const Model m = build_model(s, policy_for(kind));
  PackingModel out;
  std::set<std::string> used;
  for (const ModelStream& st : m.streams) {
    PackItem item = gcl_item(m, st, &options);
    if (item.modes.empty()) {
      out.infeasible_streams.push_back(st.job->id);
      continue;
    }
    for (const PackMode& pm : item.modes) used.insert(pm.allowed_bin_classes.front());
    out.items.push_back(std::move(item));
  }
  for (const BinClass& c : m.classes) {
    if (used.contains(c.class_id)) out.classes.push_back(c);
  }
  return out;
}

ArcFlowInstance arcflow_instance(const Scenario& s, std::string_view offer_key) {
  const InstanceOffer* offer = nullptr;
  for (const InstanceOffer& o : s.catalog.offers()) {
    if (offer == nullptr && (offer_key.empty() || o.key() == offer_key)) offer = &o;
  }
  if (offer == nullptr) throw MissingOffer("no offer '" + std::string(offer_key) + "'");
  std::vector<CapacityVector> caps;
  for (const InstanceOffer& o : s.catalog.offers()) caps.push_back(o.capacity);
  const Grid grid = make_grid(caps, s.solver.grid);
  const IntVector cap = capacity_cells(offer->capacity, s.solver.util_cap, grid);

  ArcFlowInstance out;
  out.offer_key = offer->key();
  std::vector<IntVector> demands;
  for (const ProgramProfile& prof : s.profiles) {
    std::optional<IntVector> dem;
    int count = 0;
    for (const StreamJob& job : s.jobs) {
      if (job.program != prof.name) continue;
      // TODO: let the arcflow subcommand pick the mode per profile instead of the first allowed one.
      IntVector d = demand_cells(demand_for(job, prof, job.allowed_modes.front()).demand, grid);
      if (dem && *dem != d) {
        throw ValidationError("profile '" + prof.name + "': jobs differ in demand");
      }
      dem = std::move(d);
      ++count;
    }
    if (count == 0) continue;
    out.item_names.push_back(prof.name);
    demands.push_back(*dem);
    out.items.push_back({{}, count});
  }
  std::vector<std::size_t> dims;
  for (std::size_t d = 0; d < kResourceDims; ++d) {
    bool used = cap[d] > 0;
    for (const IntVector& dem : demands) used = used || dem[d] > 0;
    if (used) dims.push_back(d);
  }
  if (dims.size() > kMaxArcFlowDims) {
    throw DimensionLimitExceeded(fmt::format("arc-flow supports at most {} dimensions, got {}",
                                             kMaxArcFlowDims, dims.size()));
  }
  for (std::size_t d : dims) {
    out.capacity.push_back(cap[d]);
    for (std::size_t k = 0; k < demands.size(); ++k) out.items[k].demand.push_back(demands[k][d]);
  }
  return out;
}

StrategyReport allocate_nl(const Scenario& s) {
  const Model m = build_model(s, policy_for(StrategyKind::NL));
  Baseline b = nearest_location(m);
  return make_report(m, "nl", b.allocation, std::move(b.infeasible));
}

StrategyReport allocate_armvac(const Scenario& s) {
  const Model m = build_model(s, policy_for(StrategyKind::ARMVAC));
  Baseline b = armvac_greedy(m);
  return make_report(m, "armvac", b.allocation, std::move(b.infeasible));
}

StrategyReport allocate_gcl(const Scenario& s, const GclOptions& options) {
  return global_cheapest(s, policy_for(StrategyKind::GCL), "gcl", options);
}

StrategyReport allocate_mode_strategy(const Scenario& s, StrategyKind kind,
                                      const GclOptions& options) {
  if (kind != StrategyKind::ST1 && kind != StrategyKind::ST2 && kind != StrategyKind::ST3) {
    throw Error("allocate_mode_strategy expects st1, st2 or st3");
  }
  return global_cheapest(s, policy_for(kind), std::string(to_string(kind)), options);
}

StrategyReport run_strategy(const Scenario& s, StrategyKind kind, const GclOptions& options) {
  switch (kind) {
    case StrategyKind::NL: return allocate_nl(s);
    case StrategyKind::ARMVAC: return allocate_armvac(s);
    case StrategyKind::GCL: return allocate_gcl(s, options);
    default: return allocate_mode_strategy(s, kind, options);
  }
}

std::vector<StrategyReport> run_strategies(const Scenario& s, std::span<const StrategyKind> kinds) {
  std::vector<StrategyReport> out(kinds.size());
  std::vector<std::exception_ptr> errors(kinds.size());
  const auto n = static_cast<std::ptrdiff_t>(kinds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = run_strategy(s, kinds[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Scenario with_uniform_fps(const Scenario& s, double fps) {
  Scenario out = s;
  for (StreamJob& j : out.jobs) j.target_fps = fps;
  for (TimelineEvent& e : out.timeline) {
    if (e.job) e.job->target_fps = fps;
  }
  return out;
}

std::vector<SweepRow> fps_sweep_serial(const Scenario& s, std::span<const double> fps_values,
                                       std::span<const StrategyKind> kinds) {
  std::vector<SweepRow> rows;
  for (double fps : fps_values) {
    const Scenario scaled = with_uniform_fps(s, fps);
    for (StrategyKind k : kinds) rows.push_back({fps, run_strategy(scaled, k)});
  }
  return rows;
}

std::vector<SweepRow> fps_sweep(const Scenario& s, std::span<const double> fps_values,
                                std::span<const StrategyKind> kinds) {
  const std::size_t nk = kinds.size();
  std::vector<SweepRow> rows(fps_values.size() * nk);
  std::vector<std::exception_ptr> errors(rows.size());
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double fps = fps_values[idx / nk];
    try {
      rows[idx] = {fps, run_strategy(with_uniform_fps(s, fps), kinds[idx % nk])};
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

namespace {

struct InstanceUse {
  const InstanceOffer* offer = nullptr;
  CapacityVector load;
};

std::map<int, InstanceUse> instance_loads(const Scenario& s, const StrategyReport& r,
                                          std::vector<std::string>* problems) {
  std::map<int, InstanceUse> inst;
  for (const StreamPlacement& p : r.per_stream) {
    const StreamJob* job = nullptr;
    for (const StreamJob& j : s.jobs) {
      if (j.id == p.stream_id) job = &j;
    }
    const InstanceOffer* offer = s.catalog.find_offer(p.instance_type, p.region);
    if (job == nullptr || offer == nullptr) {
      if (problems) problems->push_back("stream '" + p.stream_id + "' references unknown job or offer");
      continue;
    }
    InstanceUse& u = inst[p.instance_index];
    if (u.offer != nullptr && u.offer != offer) {
      if (problems) problems->push_back(fmt::format("instance {} has two offers", p.instance_index));
    }
    u.offer = offer;
    const CapacityVector dem = demand_for(*job, s.profile(job->program), p.mode).demand;
    for (std::size_t d = 0; d < kResourceDims; ++d) u.load[d] += dem[d];
  }
  return inst;
}

}  // namespace

std::vector<std::string> check_report(const Scenario& s, const StrategyReport& r) {
  std::vector<std::string> problems;
  std::map<std::string, int> seen;
  for (const StreamPlacement& p : r.per_stream) ++seen[p.stream_id];
  for (const std::string& id : r.infeasible_streams) ++seen[id];
  for (const StreamJob& j : s.jobs) {
    if (seen[j.id] != 1) {
      problems.push_back(fmt::format("stream '{}' appears {} times", j.id, seen[j.id]));
    }
  }
  if (seen.size() != s.jobs.size()) problems.push_back("report names streams not in the scenario");

  for (const StreamPlacement& p : r.per_stream) {
    const Region* region = s.catalog.find_region(p.region);
    for (const StreamJob& j : s.jobs) {
      if (j.id != p.stream_id || region == nullptr) continue;
      const double rtt = rtt_ms(j.camera_lat, j.camera_lon, *region, s.network);
      if (rtt > rtt_budget_ms(j.target_fps, s.network)) {
        problems.push_back(fmt::format("stream '{}' RTT {:.3f} ms over budget {:.3f} ms", j.id, rtt,
                                       rtt_budget_ms(j.target_fps, s.network)));
      }
    }
  }

  const auto inst = instance_loads(s, r, &problems);
  Money cost;
  for (const auto& [idx, u] : inst) {
    if (u.offer == nullptr) continue;
    cost += u.offer->price_per_hour;
    for (std::size_t d = 0; d < kResourceDims; ++d) {
      const double cap = s.solver.util_cap * u.offer->capacity[d];
      if (u.load[d] > cap * (1.0 + 1e-9) + 1e-12) {
        problems.push_back(fmt::format("instance {} ({}) uses {:.6f} of {} {} (cap {:.6f})", idx,
                                       u.offer->key(), u.load[d], u.offer->capacity[d],
                                       kResourceNames[d], cap));
      }
    }
  }
  if (inst.size() != r.allocation.bins.size()) {
    problems.push_back(fmt::format("{} instances carry streams but {} are opened", inst.size(),
                                   r.allocation.bins.size()));
  }
  if (cost != r.total_cost) {
    problems.push_back("total_cost " + format_usd(r.total_cost) + " != catalog sum " + format_usd(cost));
  }
  return problems;
}

double max_utilization(const Scenario& s, const StrategyReport& r) {
  double worst = 0.0;
  for (const auto& [idx, u] : instance_loads(s, r, nullptr)) {
    if (u.offer == nullptr) continue;
    for (std::size_t d = 0; d < kResourceDims; ++d) {
      if (u.offer->capacity[d] > 0.0) worst = std::max(worst, u.load[d] / u.offer->capacity[d]);
    }
  }
  return worst;
}

}  // namespace streamplace
