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

#include "streamplace/arcflow.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "streamplace/errors.hpp"

namespace streamplace {

std::size_t ArcFlowGraph::item_arc_count() const {
  return static_cast<std::size_t>(std::count_if(
      arcs.begin(), arcs.end(), [](const ArcFlowArc& a) { return a.item != kLossArc; }));
}

namespace {

using NodeKey = std::tuple<int, int, IntVector>;  // (last_type, copies, state)

bool fits(const IntVector& state, const IntVector& add, const IntVector& cap) {
  for (std::size_t d = 0; d < cap.size(); ++d) {
    if (state[d] + add[d] > cap[d]) return false;
  }
  return true;
}

IntVector plus(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t d = 0; d < a.size(); ++d) out[d] = a[d] + b[d];
  return out;
}

void sort_arcs(std::vector<ArcFlowArc>& arcs) {
  std::sort(arcs.begin(), arcs.end(), [](const ArcFlowArc& a, const ArcFlowArc& b) {
    return std::tie(a.from, a.to, a.item) < std::tie(b.from, b.to, b.item);
  });
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
}

// Collapse to the single-node graph when no item arc exists.
void finish_with_target(ArcFlowGraph& g) {
  if (g.item_arc_count() == 0) {
    g.nodes.resize(1);
    g.arcs.clear();
    g.source = g.target = 0;
    return;
  }
  g.target = static_cast<int>(g.nodes.size());
  g.nodes.push_back({g.capacity, -1, 0});
  for (int u = 0; u < g.target; ++u) g.arcs.push_back({u, g.target, kLossArc});
  sort_arcs(g.arcs);
}

}  // namespace

ArcFlowGraph build_arcflow(std::span<const ArcFlowItem> items, const IntVector& capacity) {
  if (capacity.size() > kMaxArcFlowDims) {
    throw DimensionLimitExceeded("arc-flow supports at most 3 dimensions, got " +
                                 std::to_string(capacity.size()));
  }
  for (const ArcFlowItem& it : items) {
    if (it.demand.size() != capacity.size()) {
      throw DimensionLimitExceeded("item dimension does not match capacity");
    }
  }

  ArcFlowGraph g;
  g.capacity = capacity;
  g.items.assign(items.begin(), items.end());
  g.nodes.push_back({IntVector(capacity.size(), 0), -1, 0});
  g.source = 0;

  std::map<NodeKey, int> index;
  index[{-1, 0, g.nodes[0].state}] = 0;

  for (int k = 0; k < static_cast<int>(items.size()); ++k) {
    const ArcFlowItem& item = items[static_cast<std::size_t>(k)];
    for (int copy = 1; copy <= item.count; ++copy) {
      const std::size_t existing = g.nodes.size();
      for (std::size_t u = 0; u < existing; ++u) {
        const ArcFlowNode& from = g.nodes[u];
        const bool enters_type = copy == 1 && from.last_type < k;
        const bool continues_type = from.last_type == k && from.copies == copy - 1;
        if (!enters_type && !continues_type) continue;
        if (!fits(from.state, item.demand, capacity)) continue;

        NodeKey key{k, copy, plus(from.state, item.demand)};
        auto [it, inserted] = index.try_emplace(key, static_cast<int>(g.nodes.size()));
        if (inserted) g.nodes.push_back({std::get<2>(key), k, copy});
        g.arcs.push_back({static_cast<int>(u), it->second, k});
      }
    }
  }
  sort_arcs(g.arcs);
  finish_with_target(g);
  return g;
}

ArcFlowGraph compress_graph(const ArcFlowGraph& g) {
  if (g.item_arc_count() == 0) return g;

  // label[u] = capacity - (componentwise max consumption of any completion
  // from u). Nodes agreeing on (last_type, copies, label) admit exactly the
  // same completions.
  const std::size_t n = g.nodes.size();
  std::vector<IntVector> label(n, g.capacity);
  std::vector<std::vector<const ArcFlowArc*>> out(n);
  for (const ArcFlowArc& a : g.arcs) {
    if (a.item != kLossArc) out[static_cast<std::size_t>(a.from)].push_back(&a);
  }
  for (std::size_t u = n; u-- > 0;) {
    if (static_cast<int>(u) == g.target) continue;
    for (const ArcFlowArc* a : out[u]) {
      const IntVector& w = g.items[static_cast<std::size_t>(a->item)].demand;
      const IntVector& lv = label[static_cast<std::size_t>(a->to)];
      for (std::size_t d = 0; d < g.capacity.size(); ++d) {
        label[u][d] = std::min(label[u][d], lv[d] - w[d]);
      }
    }
  }

  // Class keys sort topologically: along any item arc (last_type, copies)
  // strictly increases. The target sorts last.
  using ClassKey = std::tuple<int, int, int, IntVector>;  // (is_target, type, copies, label)
  std::map<ClassKey, int> classes;
  std::vector<ClassKey> key_of(n);
  for (std::size_t u = 0; u < n; ++u) {
    const ArcFlowNode& node = g.nodes[u];
    const bool is_target = static_cast<int>(u) == g.target;
    key_of[u] = {is_target ? 1 : 0, node.last_type, node.copies, label[u]};
    classes.emplace(key_of[u], 0);
  }
  ArcFlowGraph c;
  c.capacity = g.capacity;
  c.items = g.items;
  for (auto& [key, id] : classes) {
    id = static_cast<int>(c.nodes.size());
    c.nodes.push_back({std::get<3>(key), std::get<1>(key), std::get<2>(key)});
  }
  c.source = classes.at(key_of[static_cast<std::size_t>(g.source)]);
  c.target = classes.at(key_of[static_cast<std::size_t>(g.target)]);
  for (const ArcFlowArc& a : g.arcs) {
    if (a.item == kLossArc) continue;
    c.arcs.push_back({classes.at(key_of[static_cast<std::size_t>(a.from)]),
                      classes.at(key_of[static_cast<std::size_t>(a.to)]), a.item});
  }
  for (int u = 0; u < static_cast<int>(c.nodes.size()); ++u) {
    if (u != c.target) c.arcs.push_back({u, c.target, kLossArc});
  }
  sort_arcs(c.arcs);
  return c;
}

ArcFlowSolution solve_arcflow(const ArcFlowGraph& g, std::span<const std::int64_t> weights) {
  ArcFlowSolution sol;
  sol.counts.assign(g.items.size(), 0);
  if (g.source == g.target) return sol;

  const std::size_t n = g.nodes.size();
  std::vector<std::vector<const ArcFlowArc*>> out(n);
  for (const ArcFlowArc& a : g.arcs) out[static_cast<std::size_t>(a.from)].push_back(&a);

  std::vector<std::int64_t> best(n, 0);
  std::vector<const ArcFlowArc*> choice(n, nullptr);
  for (std::size_t u = n; u-- > 0;) {
    if (static_cast<int>(u) == g.target) continue;
    bool have = false;
    for (const ArcFlowArc* a : out[u]) {
      const std::int64_t gain =
          (a->item == kLossArc ? 0 : weights[static_cast<std::size_t>(a->item)]) +
          best[static_cast<std::size_t>(a->to)];
      if (!have || gain > best[u]) {
        best[u] = gain;
        choice[u] = a;
        have = true;
      }
    }
  }
  sol.value = best[static_cast<std::size_t>(g.source)];
  for (int u = g.source; u != g.target;) {
    const ArcFlowArc* a = choice[static_cast<std::size_t>(u)];
    if (a->item != kLossArc) ++sol.counts[static_cast<std::size_t>(a->item)];
    u = a->to;
  }
  return sol;
}

std::string dump_arcflow(const ArcFlowGraph& g) {
  std::ostringstream os;
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    const ArcFlowNode& node = g.nodes[u];
    os << "NODE " << u << ' ';
    for (std::size_t d = 0; d < node.state.size(); ++d) {
      if (d != 0) os << ',';
      os << node.state[d];
    }
    os << ' ' << node.last_type << ':' << node.copies << '\n';
  }
  os << "SOURCE " << g.source << '\n' << "TARGET " << g.target << '\n';
  for (const ArcFlowArc& a : g.arcs) {
    os << "ARC " << a.from << ' ' << a.to << ' ';
    if (a.item == kLossArc) {
      os << "LOSS";
    } else {
      os << a.item;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace streamplace
