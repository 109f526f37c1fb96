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
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "streamplace/mcvbp.hpp"
#include "streamplace/scenario.hpp"

namespace streamplace::testing {

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(STREAMPLACE_DATA_DIR) / rel;
}

inline Scenario shipped(const std::string& name) {
  return load_scenario(data_path("scenarios/" + name + ".json"));
}

/// Random packing instance within the oracle caps: up to `max_items` items
/// with 1-2 modes each over 1-3 classes (at most 4 bins each).
struct PackInstance {
  std::vector<PackItem> items;
  std::vector<BinClass> classes;
};

inline PackInstance random_pack_instance(std::uint64_t seed, int max_items = 6, int dims = 2) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  PackInstance inst;
  const int nc = pick(1, 3);
  for (int c = 0; c < nc; ++c) {
    BinClass b;
    b.class_id = "k" + std::to_string(c);
    for (int d = 0; d < dims; ++d) b.capacity.push_back(pick(4, 10));
    b.unit_cost = Money::from_millis(pick(1, 9) * 100 + pick(0, 1) * 50);
    b.max_count = pick(2, 4);
    inst.classes.push_back(std::move(b));
  }
  const int n = pick(1, max_items);
  for (int i = 0; i < n; ++i) {
    PackItem it;
    it.item_id = "i" + std::to_string(i);
    const int nm = pick(1, 2);
    for (int m = 0; m < nm; ++m) {
      PackMode mode;
      mode.mode_id = m == 0 ? "cpu" : "gpu";
      for (int d = 0; d < dims; ++d) mode.demand.push_back(pick(0, 6));
      for (const BinClass& b : inst.classes) {
        if (pick(0, 3) > 0) mode.allowed_bin_classes.push_back(b.class_id);
      }
      if (mode.allowed_bin_classes.empty()) mode.allowed_bin_classes.push_back(inst.classes[0].class_id);
      mode.extra_cost = Money::from_millis(pick(0, 3) == 0 ? pick(1, 3) * 10 : 0);
      it.modes.push_back(std::move(mode));
    }
    inst.items.push_back(std::move(it));
  }
  return inst;
}

/// Instance with at least one feasible allocation: every item has a mode
/// that fits a class alone, and the class counts can hold one item per bin.
inline PackInstance random_feasible_instance(std::uint64_t seed, int max_items = 6) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    PackInstance inst = random_pack_instance(seed * 7919 + attempt, max_items);
    int total_bins = 0;
    for (const BinClass& c : inst.classes) total_bins += *c.max_count;
    bool each_fits = true;
    for (const PackItem& it : inst.items) {
      bool any = false;
      for (const PackMode& m : it.modes) {
        for (const std::string& cid : m.allowed_bin_classes) {
          for (const BinClass& c : inst.classes) {
            if (c.class_id != cid) continue;
            bool fit = true;
            for (std::size_t d = 0; d < c.capacity.size(); ++d) fit = fit && m.demand[d] <= c.capacity[d];
            any = any || fit;
          }
        }
      }
      each_fits = each_fits && any;
    }
    if (each_fits && total_bins >= static_cast<int>(inst.items.size())) return inst;
  }
}

}  // namespace streamplace::testing
