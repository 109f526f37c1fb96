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

#include <map>
#include <set>

#include <fmt/format.h>

#include "streamplace/mcvbp.hpp"

namespace streamplace {

std::vector<std::string> verify_allocation(std::span<const PackItem> items,
                                           std::span<const BinClass> classes,
                                           const Allocation& a) {
  std::vector<std::string> problems;
  std::map<std::string, const BinClass*> class_of;
  for (const BinClass& c : classes) class_of[c.class_id] = &c;

  std::vector<IntVector> load(a.bins.size());
  std::vector<int> used(a.bins.size(), 0);
  std::map<std::string, int> per_class;
  Money bins_cost;
  std::set<std::pair<std::string, int>> seen_bins;
  for (std::size_t b = 0; b < a.bins.size(); ++b) {
    auto c = class_of.find(a.bins[b].class_id);
    if (c == class_of.end()) {
      problems.push_back(fmt::format("bin {} has unknown class '{}'", b, a.bins[b].class_id));
      continue;
    }
    if (!seen_bins.insert({a.bins[b].class_id, a.bins[b].instance_index}).second) {
      problems.push_back(fmt::format("bin {} duplicates instance {}#{}", b, a.bins[b].class_id,
                                     a.bins[b].instance_index));
    }
    load[b] = IntVector(c->second->capacity.size(), 0);
    bins_cost += c->second->unit_cost;
    ++per_class[a.bins[b].class_id];
  }

  Money extra;
  std::set<std::string> expected;
  for (const PackItem& it : items) {
    expected.insert(it.item_id);
    auto pl = a.placements.find(it.item_id);
    if (pl == a.placements.end()) {
      problems.push_back("item '" + it.item_id + "' is not placed");
      continue;
    }
    const PackMode* mode = nullptr;
    for (const PackMode& m : it.modes) {
      if (m.mode_id == pl->second.mode_id) mode = &m;
    }
    if (mode == nullptr) {
      problems.push_back("item '" + it.item_id + "' uses unknown mode '" + pl->second.mode_id + "'");
      continue;
    }
    const int b = pl->second.bin;
    if (b < 0 || static_cast<std::size_t>(b) >= a.bins.size() || load[static_cast<std::size_t>(b)].empty()) {
      problems.push_back("item '" + it.item_id + "' references a missing bin");
      continue;
    }
    const std::string& cid = a.bins[static_cast<std::size_t>(b)].class_id;
    bool allowed = false;
    for (const std::string& x : mode->allowed_bin_classes) allowed = allowed || x == cid;
    if (!allowed) {
      problems.push_back("item '" + it.item_id + "' mode '" + mode->mode_id +
                         "' may not use class '" + cid + "'");
    }
    IntVector& l = load[static_cast<std::size_t>(b)];
    if (mode->demand.size() != l.size()) {
      problems.push_back("item '" + it.item_id + "': dimension mismatch");
      continue;
    }
    for (std::size_t d = 0; d < l.size(); ++d) l[d] += mode->demand[d];
    ++used[static_cast<std::size_t>(b)];
    extra += mode->extra_cost;
  }
  for (const auto& [id, pl] : a.placements) {
    if (!expected.contains(id)) problems.push_back("placement for unknown item '" + id + "'");
  }

  for (std::size_t b = 0; b < a.bins.size(); ++b) {
    auto c = class_of.find(a.bins[b].class_id);
    if (c == class_of.end()) continue;
    if (used[b] == 0) problems.push_back(fmt::format("bin {} is empty", b));
    for (std::size_t d = 0; d < load[b].size(); ++d) {
      if (load[b][d] > c->second->capacity[d]) {
        problems.push_back(fmt::format("bin {} ({}) over capacity in dimension {}: {} > {}", b,
                                       a.bins[b].class_id, d, load[b][d],
                                       c->second->capacity[d]));
      }
    }
  }
  for (const auto& [cid, n] : per_class) {
    const BinClass* c = class_of.at(cid);
    if (c->max_count && n > *c->max_count) {
      problems.push_back(fmt::format("class {} opened {} times (max {})", cid, n, *c->max_count));
    }
  }
  if (bins_cost != a.total_cost) {
    problems.push_back(fmt::format("total_cost {} != sum of unit costs {}",
                                   format_usd(a.total_cost), format_usd(bins_cost)));
  }
  if (extra != a.extra_cost) problems.push_back("extra_cost does not match chosen modes");
  return problems;
}

}  // namespace streamplace
