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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "streamplace/integerize.hpp"
#include "streamplace/money.hpp"

namespace streamplace {

/// One way to place an item: an integer demand that may go into any of the
/// listed bin classes. `extra_cost` is added to the objective when the mode
/// is chosen (e.g. a migration surcharge); it is not an instance cost.
struct PackMode {
  std::string mode_id;
  IntVector demand;
  std::vector<std::string> allowed_bin_classes;
  Money extra_cost;
};

struct PackItem {
  std::string item_id;
  std::vector<PackMode> modes;
};

struct BinClass {
  std::string class_id;
  IntVector capacity;
  Money unit_cost;
  std::optional<int> max_count;  // nullopt = unbounded
};

struct OpenedBin {
  std::string class_id;
  int instance_index = 0;  // per-class ordinal
  friend bool operator==(const OpenedBin&, const OpenedBin&) = default;
};

struct Placement {
  std::string mode_id;
  int bin = 0;  // index into Allocation::bins
  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Opened bins plus the placement of every item.
///
/// Canonical form: per-class instance indices are numbered by first use when
/// items are scanned in id order, and `bins` is sorted by (class_id,
/// instance_index). All solvers return canonical allocations, so equal
/// allocations compare equal.
struct Allocation {
  std::vector<OpenedBin> bins;
  std::map<std::string, Placement> placements;
  Money total_cost;  // sum of unit_cost over bins
  Money extra_cost;  // sum of chosen modes' extra_cost

  Money objective() const { return total_cost + extra_cost; }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

using AllocationKey = std::vector<std::tuple<std::string, int, std::string>>;

/// (class_id, instance_index, mode_id) per item in item-id order. Among
/// equal-objective allocations the smallest key wins.
AllocationKey allocation_key(const Allocation& a);

/// Renumbers instances by first use (items in id order), drops empty bins,
/// sorts bins and recomputes costs.
Allocation canonicalize(const Allocation& a, std::span<const PackItem> items,
                        std::span<const BinClass> classes);

struct ExactLimits {
  int max_items = 12;
  int max_bin_classes = 6;
};

struct SearchOptions {
  /// 0 = unlimited. The count is deterministic, unlike wall-clock budgets.
  std::uint64_t node_budget = 0;
  /// Feasible allocations seeding the incumbent besides the FFD solution.
  std::vector<Allocation> warm_starts;
};

struct SearchResult {
  Allocation allocation;
  bool proven_optimal = false;
  Money lower_bound;  // on the optimal objective
  std::uint64_t nodes = 0;
};

/// Branch-and-bound over (item, bin, mode). Items are branched in id order
/// and options in (class_id, instance_index, mode_id) order, so the first
/// optimum reached is the tie-break winner. Throws Infeasible.
SearchResult solve_mcvbp_search(std::span<const PackItem> items,
                                std::span<const BinClass> classes,
                                const SearchOptions& options = {});

/// Provably optimal solve. Throws LimitExceeded if the instance is larger
/// than `limits` after dominated bin classes are dropped, Infeasible if some
/// item cannot be placed.
Allocation solve_mcvbp_exact(std::span<const PackItem> items,
                             std::span<const BinClass> classes,
                             const ExactLimits& limits = {});

/// First-fit decreasing. Items go in order of their largest normalized
/// demand component (descending, ties by id); a new bin takes the cheapest
/// class that fits. Throws Infeasible.
Allocation solve_mcvbp_ffd(std::span<const PackItem> items, std::span<const BinClass> classes);

struct OracleCaps {
  int max_items = 8;
  int max_bin_classes = 4;
  int max_bins_per_class = 4;
};

/// Exhaustive enumeration of every mode choice and item-to-bin assignment.
/// Same objective and tie-break as the exact solver. The first-level fan-out
/// runs under OpenMP. Throws LimitExceeded above the caps and Infeasible.
Allocation brute_force_oracle(std::span<const PackItem> items,
                              std::span<const BinClass> classes,
                              const OracleCaps& caps = {});
Allocation brute_force_oracle_serial(std::span<const PackItem> items,
                                     std::span<const BinClass> classes,
                                     const OracleCaps& caps = {});

/// Independent feasibility check. Returns an empty list when the allocation
/// places every item exactly once with an allowed mode, respects capacities
/// and class counts, and reports its costs correctly.
std::vector<std::string> verify_allocation(std::span<const PackItem> items,
                                           std::span<const BinClass> classes,
                                           const Allocation& a);

}  // namespace streamplace
