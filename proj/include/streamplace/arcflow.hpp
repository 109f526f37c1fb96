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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "streamplace/integerize.hpp"

namespace streamplace {

/// Arc-flow model of a single bin: every source-to-target path is one
/// feasible packing.
///
/// Item types are added in index order. A node is a consumption state plus
/// the last item type used on the way in and how many copies of it; arcs of
/// type k only leave nodes whose last type is <= k, and a path never carries
/// more copies of a type than its demand. Loss arcs join every node to the
/// target.
inline constexpr std::size_t kMaxArcFlowDims = 3;
inline constexpr int kLossArc = -1;

struct ArcFlowItem {
  IntVector demand;
  int count = 0;
  friend bool operator==(const ArcFlowItem&, const ArcFlowItem&) = default;
};

struct ArcFlowNode {
  IntVector state;
  int last_type = -1;  // -1 at the source and the target
  int copies = 0;
  friend bool operator==(const ArcFlowNode&, const ArcFlowNode&) = default;
};

struct ArcFlowArc {
  int from = 0;
  int to = 0;
  int item = kLossArc;
  friend bool operator==(const ArcFlowArc&, const ArcFlowArc&) = default;
};

struct ArcFlowGraph {
  IntVector capacity;
  std::vector<ArcFlowItem> items;
  std::vector<ArcFlowNode> nodes;  // topologically ordered; source first
  std::vector<ArcFlowArc> arcs;    // sorted by (from, to, item)
  int source = 0;
  int target = 0;

  std::size_t item_arc_count() const;
  friend bool operator==(const ArcFlowGraph&, const ArcFlowGraph&) = default;
};

/// Throws DimensionLimitExceeded above kMaxArcFlowDims dimensions.
ArcFlowGraph build_arcflow(std::span<const ArcFlowItem> items, const IntVector& capacity);

/// Merges nodes with identical completion sets. Node states are relabelled
/// to the largest consumption that keeps the same completions, so the
/// optimum under any weight vector is unchanged.
ArcFlowGraph compress_graph(const ArcFlowGraph& g);

struct ArcFlowSolution {
  std::int64_t value = 0;
  std::vector<int> counts;  // copies of each item type on the best path
};

/// Longest source-to-target path under per-item-type `weights`.
ArcFlowSolution solve_arcflow(const ArcFlowGraph& g, std::span<const std::int64_t> weights);

/// Text dump, one record per line:
///   NODE <index> <s0,s1,...> <last_type>:<copies>
///   ARC <from> <to> <item|LOSS>
std::string dump_arcflow(const ArcFlowGraph& g);

}  // namespace streamplace
