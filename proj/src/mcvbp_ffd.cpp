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

#include <algorithm>
#include <limits>
#include <tuple>

#include "mcvbp_problem.hpp"
#include "streamplace/errors.hpp"
#include "streamplace/mcvbp.hpp"

namespace streamplace {

Allocation solve_mcvbp_ffd(std::span<const PackItem> items, std::span<const BinClass> classes) {
  const detail::Problem p = detail::make_problem(items, classes);
  const std::size_t D = p.dims;

  std::vector<double> max_cap(D, 0.0);
  for (const detail::ClassView& c : p.classes) {
    for (std::size_t d = 0; d < D; ++d) {
      max_cap[d] = std::max(max_cap[d], static_cast<double>(c.src->capacity[d]));
    }
  }
  auto size_of = [&](const detail::ItemView& it) {
    double best = std::numeric_limits<double>::infinity();
    for (const detail::ModeView& m : it.modes) {
      double s = 0.0;
      for (std::size_t d = 0; d < D; ++d) {
        if (max_cap[d] > 0.0) s = std::max(s, static_cast<double>(m.src->demand[d]) / max_cap[d]);
      }
      best = std::min(best, s);
    }
    return best;
  };

  std::vector<std::size_t> order(p.items.size());
  std::vector<double> size(p.items.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
    size[i] = size_of(p.items[i]);
  }
  // p.items is id-sorted, so a stable sort keeps id order among ties.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return size[a] > size[b]; });

  struct Bin {
    int cls;
    int instance;
    IntVector load;
  };
  std::vector<Bin> bins;
  std::vector<int> per_class(p.classes.size(), 0);
  std::vector<detail::Choice> choices(p.items.size());

  for (std::size_t i : order) {
    const detail::ItemView& it = p.items[i];
    bool placed = false;
    for (Bin& b : bins) {
      for (std::size_t m = 0; m < it.modes.size() && !placed; ++m) {
        const detail::ModeView& mode = it.modes[m];
        if (!mode.allowed[static_cast<std::size_t>(b.cls)]) continue;
        if (!detail::fits(b.load, mode.src->demand,
                          p.classes[static_cast<std::size_t>(b.cls)].src->capacity)) {
          continue;
        }
        for (std::size_t d = 0; d < D; ++d) b.load[d] += mode.src->demand[d];
        choices[i] = {b.cls, b.instance, static_cast<int>(m)};
        placed = true;
      }
      if (placed) break;
    }
    if (placed) continue;

    // Open the cheapest (class, mode) pair; ties by class id then mode id,
    // which is index order.
    std::optional<std::tuple<std::int64_t, int, int>> pick;
    for (std::size_t m = 0; m < it.modes.size(); ++m) {
      for (int c : it.modes[m].classes) {
        if (per_class[static_cast<std::size_t>(c)] >= p.classes[static_cast<std::size_t>(c)].max_count) {
          continue;
        }
        const std::int64_t cost = p.classes[static_cast<std::size_t>(c)].src->unit_cost.millis() +
                                  it.modes[m].src->extra_cost.millis();
        std::tuple<std::int64_t, int, int> cand{cost, c, static_cast<int>(m)};
        if (!pick || cand < *pick) pick = cand;
      }
    }
    if (!pick) {
      throw Infeasible("first-fit decreasing could not open a bin for item '" + it.src->item_id + "'",
                       it.src->item_id);
    }
    const auto [cost, c, m] = *pick;
    Bin b{c, per_class[static_cast<std::size_t>(c)]++, IntVector(D, 0)};
    const IntVector& dem = it.modes[static_cast<std::size_t>(m)].src->demand;
    for (std::size_t d = 0; d < D; ++d) b.load[d] += dem[d];
    choices[i] = {c, b.instance, m};
    bins.push_back(std::move(b));
  }
  return detail::to_allocation(p, choices);
}

}  // namespace streamplace
