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

// Index-based view of a packing instance shared by the search and FFD.

#include <span>
#include <string>
#include <vector>

#include "streamplace/mcvbp.hpp"

namespace streamplace::detail {

struct ModeView {
  const PackMode* src = nullptr;
  std::vector<int> classes;  // allowed and individually fitting, ascending
  std::vector<char> allowed;  // per class
};

struct ItemView {
  const PackItem* src = nullptr;
  std::vector<ModeView> modes;  // sorted by mode_id
};

struct ClassView {
  const BinClass* src = nullptr;
  int max_count = 0;  // effective, never above the item count
};

struct Problem {
  std::size_t dims = 0;
  std::vector<ClassView> classes;  // sorted by class_id
  std::vector<ItemView> items;     // sorted by item_id
};

/// Validates ids and dimensions, sorts, and resolves allowed classes.
/// Throws Infeasible naming the first item with no placeable mode.
Problem make_problem(std::span<const PackItem> items, std::span<const BinClass> classes);

/// Drops classes that another class beats on price with at least the same
/// capacity, unbounded count, and a superset of allowing modes. Such classes
/// never appear in an optimal allocation.
void drop_dominated_classes(Problem& p);

bool fits(const IntVector& load, const IntVector& demand, const IntVector& cap);

/// Builds a canonical allocation from (item -> (class, per-class ordinal,
/// mode)) choices given in Problem indices.
struct Choice {
  int cls = 0;
  int instance = 0;
  int mode = 0;
};
Allocation to_allocation(const Problem& p, std::span<const Choice> choices);

}  // namespace streamplace::detail
