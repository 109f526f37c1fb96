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

// Exhaustive reference solver. Deliberately shares no code with the
// branch-and-bound beyond the public data types and canonicalize().

#include <algorithm>
#include <map>
#include <optional>

#include <fmt/format.h>

#include "streamplace/errors.hpp"
#include "streamplace/mcvbp.hpp"

namespace streamplace {

namespace {

struct Candidate {
  std::int64_t objective = 0;
  AllocationKey key;
  Allocation allocation;
};

bool better(const Candidate& a, const std::optional<Candidate>& b) {
  if (!b) return true;
  return std::tie(a.objective, a.key) < std::tie(b->objective, b->key);
}

class Enumerator {
 public:
  Enumerator(std::vector<PackItem> items, std::vector<BinClass> classes, int bins_per_class)
      : items_(std::move(items)), classes_(std::move(classes)) {
    for (const BinClass& c : classes_) {
      limit_.push_back(std::min(bins_per_class, c.max_count.value_or(bins_per_class)));
    }
    counts_.assign(classes_.size(), 0);
  }

  struct Step {
    std::size_t mode;
    std::size_t cls;
    int bin;  // index into bins_, or -1 for a new bin
  };

  // Choices for the first item; with no bins open they all open a bin.
  std::vector<Step> first_steps() const {
    std::vector<Step> out;
    if (items_.empty()) return out;
    for (std::size_t m = 0; m < items_[0].modes.size(); ++m) {
      for (std::size_t c = 0; c < classes_.size(); ++c) {
        if (allowed(items_[0].modes[m], c) && limit_[c] > 0 &&
            fits_in(IntVector(classes_[c].capacity.size(), 0), items_[0].modes[m].demand, c)) {
          out.push_back({m, c, -1});
        }
      }
    }
    return out;
  }

  void run_from(const Step& first) {
    apply(0, first);
    recurse(1);
  }

  void run() { recurse(0); }

  const std::optional<Candidate>& best() const { return best_; }

 private:
  struct Bin {
    std::size_t cls;
    int instance;
    IntVector load;
  };

  bool allowed(const PackMode& m, std::size_t c) const {
    return std::find(m.allowed_bin_classes.begin(), m.allowed_bin_classes.end(),
                     classes_[c].class_id) != m.allowed_bin_classes.end();
  }

  bool fits_in(const IntVector& load, const IntVector& demand, std::size_t c) const {
    for (std::size_t d = 0; d < load.size(); ++d) {
      if (load[d] + demand[d] > classes_[c].capacity[d]) return false;
    }
    return true;
  }

  void apply(std::size_t i, const Step& s) {
    const IntVector& dem = items_[i].modes[s.mode].demand;
    int b = s.bin;
    if (b < 0) {
      b = static_cast<int>(bins_.size());
      bins_.push_back({s.cls, counts_[s.cls]++, IntVector(dem.size(), 0)});
    }
    for (std::size_t d = 0; d < dem.size(); ++d) bins_[static_cast<std::size_t>(b)].load[d] += dem[d];
    assignment_.push_back({s.mode, b});
  }

  void revert(std::size_t i, const Step& s) {
    const auto [mode, b] = assignment_.back();
    assignment_.pop_back();
    const IntVector& dem = items_[i].modes[mode].demand;
    for (std::size_t d = 0; d < dem.size(); ++d) bins_[static_cast<std::size_t>(b)].load[d] -= dem[d];
    if (s.bin < 0) {
      --counts_[s.cls];
      bins_.pop_back();
    }
  }

  void recurse(std::size_t i) {
    if (i == items_.size()) {
      record();
      return;
    }
    const PackItem& it = items_[i];
    for (std::size_t m = 0; m < it.modes.size(); ++m) {
      const PackMode& mode = it.modes[m];
      for (std::size_t b = 0; b < bins_.size(); ++b) {
        if (!allowed(mode, bins_[b].cls) || !fits_in(bins_[b].load, mode.demand, bins_[b].cls)) {
          continue;
        }
        const Step s{m, bins_[b].cls, static_cast<int>(b)};
        apply(i, s);
        recurse(i + 1);
        revert(i, s);
      }
      for (std::size_t c = 0; c < classes_.size(); ++c) {
        if (!allowed(mode, c) || counts_[c] >= limit_[c]) continue;
        if (!fits_in(IntVector(mode.demand.size(), 0), mode.demand, c)) continue;
        const Step s{m, c, -1};
        apply(i, s);
        recurse(i + 1);
        revert(i, s);
      }
    }
  }

  void record() {
    Money objective;
    for (const Bin& b : bins_) objective += classes_[b.cls].unit_cost;
    for (std::size_t i = 0; i < items_.size(); ++i) objective += items_[i].modes[assignment_[i].first].extra_cost;
    if (best_ && objective.millis() > best_->objective) return;
    Allocation a;
    for (const Bin& b : bins_) a.bins.push_back({classes_[b.cls].class_id, b.instance});
    for (std::size_t i = 0; i < items_.size(); ++i) {
      a.placements[items_[i].item_id] =
          Placement{items_[i].modes[assignment_[i].first].mode_id, assignment_[i].second};
    }
    Candidate cand;
    cand.allocation = canonicalize(a, items_, classes_);
    cand.objective = cand.allocation.objective().millis();
    if (best_ && cand.objective > best_->objective) return;
    cand.key = allocation_key(cand.allocation);
    if (better(cand, best_)) best_ = std::move(cand);
  }

  std::vector<PackItem> items_;
  std::vector<BinClass> classes_;
  std::vector<int> limit_;
  std::vector<int> counts_;
  std::vector<Bin> bins_;
  std::vector<std::pair<std::size_t, int>> assignment_;
  std::optional<Candidate> best_;
};

std::pair<std::vector<PackItem>, std::vector<BinClass>> prepare(
    std::span<const PackItem> items, std::span<const BinClass> classes, const OracleCaps& caps) {
  if (static_cast<int>(items.size()) > caps.max_items ||
      static_cast<int>(classes.size()) > caps.max_bin_classes) {
    throw LimitExceeded(fmt::format("oracle caps: {} items (max {}), {} bin classes (max {})",
                                    items.size(), caps.max_items, classes.size(),
                                    caps.max_bin_classes));
  }
  std::vector<PackItem> its(items.begin(), items.end());
  std::sort(its.begin(), its.end(),
            [](const PackItem& a, const PackItem& b) { return a.item_id < b.item_id; });
  std::vector<BinClass> cls(classes.begin(), classes.end());
  std::sort(cls.begin(), cls.end(),
            [](const BinClass& a, const BinClass& b) { return a.class_id < b.class_id; });
  return {std::move(its), std::move(cls)};
}

Allocation finish(const std::optional<Candidate>& best, const std::vector<PackItem>& items,
                  const std::vector<BinClass>& classes) {
  if (items.empty()) return Allocation{};
  if (best) return best->allocation;
  for (const PackItem& it : items) {
    bool any = false;
    for (const PackMode& m : it.modes) {
      for (const BinClass& c : classes) {
        if (std::find(m.allowed_bin_classes.begin(), m.allowed_bin_classes.end(), c.class_id) ==
            m.allowed_bin_classes.end()) {
          continue;
        }
        bool ok = c.max_count.value_or(1) > 0;
        for (std::size_t d = 0; d < m.demand.size(); ++d) ok = ok && m.demand[d] <= c.capacity[d];
        any = any || ok;
      }
    }
    if (!any) throw Infeasible("item '" + it.item_id + "' has no placeable mode", it.item_id);
  }
  throw Infeasible("no assignment within the oracle's bin caps", "");
}

}  // namespace

Allocation brute_force_oracle_serial(std::span<const PackItem> items,
                                     std::span<const BinClass> classes, const OracleCaps& caps) {
  auto [its, cls] = prepare(items, classes, caps);
  Enumerator e(its, cls, caps.max_bins_per_class);
  if (!its.empty()) e.run();
  return finish(e.best(), its, cls);
}

Allocation brute_force_oracle(std::span<const PackItem> items, std::span<const BinClass> classes,
                              const OracleCaps& caps) {
  auto [its, cls] = prepare(items, classes, caps);
  if (its.empty()) return Allocation{};
  const std::vector<Enumerator::Step> steps =
      Enumerator(its, cls, caps.max_bins_per_class).first_steps();
  std::vector<std::optional<Candidate>> partial(steps.size());
  const auto n = static_cast<std::ptrdiff_t>(steps.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    Enumerator e(its, cls, caps.max_bins_per_class);
    e.run_from(steps[static_cast<std::size_t>(s)]);
    partial[static_cast<std::size_t>(s)] = e.best();
  }
  std::optional<Candidate> best;
  for (const auto& p : partial) {
    if (p && better(*p, best)) best = p;
  }
  return finish(best, its, cls);
}

}  // namespace streamplace
