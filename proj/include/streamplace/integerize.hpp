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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "streamplace/catalog.hpp"

namespace streamplace {

using IntVector = std::vector<std::int64_t>;

/// Demand cells for a dimension that no bin can offer; never fits.
inline constexpr std::int64_t kNeverFits = std::int64_t{1} << 40;

/// Cell size per resource dimension. A zero cell means no capacity exists in
/// that dimension.
struct Grid {
  std::array<double, kResourceDims> cell{};
};

inline constexpr int kDefaultGridSteps = 100;

/// Cell = (largest capacity in the dimension) / steps, unless `override_cell`
/// gives explicit sizes.
Grid make_grid(std::span<const CapacityVector> capacities,
               const std::optional<CapacityVector>& override_cell = std::nullopt,
               int steps = kDefaultGridSteps);

/// Rounds up, so an integer fit implies a real fit.
IntVector demand_cells(const CapacityVector& demand, const Grid& grid);
/// Scales by util_cap first, then rounds down.
IntVector capacity_cells(const CapacityVector& capacity, double util_cap, const Grid& grid);

}  // namespace streamplace
