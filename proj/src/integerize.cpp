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

#include "streamplace/integerize.hpp"

#include <cmath>

namespace streamplace {

namespace {
// Absorbs representation error such as 8 * 0.9 / 0.08 = 89.99999999.
constexpr double kRoundSlack = 1e-9;
}  // namespace

Grid make_grid(std::span<const CapacityVector> capacities,
               const std::optional<CapacityVector>& override_cell, int steps) {
  Grid g;
  if (override_cell) {
    for (std::size_t d = 0; d < kResourceDims; ++d) g.cell[d] = (*override_cell)[d];
    return g;
  }
  for (std::size_t d = 0; d < kResourceDims; ++d) {
    double mx = 0.0;
    for (const CapacityVector& c : capacities) mx = std::max(mx, c[d]);
    g.cell[d] = mx / static_cast<double>(steps);
  }
  return g;
}

IntVector demand_cells(const CapacityVector& demand, const Grid& grid) {
  IntVector out(kResourceDims, 0);
  for (std::size_t d = 0; d < kResourceDims; ++d) {
    if (demand[d] <= 0.0) continue;
    if (grid.cell[d] <= 0.0) {
      out[d] = kNeverFits;
      continue;
    }
    const double x = demand[d] / grid.cell[d];
    out[d] = static_cast<std::int64_t>(std::ceil(x - kRoundSlack * std::max(1.0, x)));
  }
  return out;
}

IntVector capacity_cells(const CapacityVector& capacity, double util_cap, const Grid& grid) {
  IntVector out(kResourceDims, 0);
  for (std::size_t d = 0; d < kResourceDims; ++d) {
    if (grid.cell[d] <= 0.0 || capacity[d] <= 0.0) continue;
    const double x = util_cap * capacity[d] / grid.cell[d];
    out[d] = static_cast<std::int64_t>(std::floor(x + kRoundSlack * std::max(1.0, x)));
  }
  return out;
}

}  // namespace streamplace
