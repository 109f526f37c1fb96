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

#include "streamplace/mcvbp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "mcvbp_problem.hpp"
#include "streamplace/errors.hpp"

namespace streamplace {

AllocationKey allocation_key(const Allocation& a) {
  AllocationKey key;
  key.reserve(a.placements.size());
  for (const auto& [item, pl] : a.placements) {
    const OpenedBin& b = a.bins.at(static_cast<std::size_t>(pl.bin));
    key.emplace_back(b.class_id, b.instance_index, pl.mode_id);
  }
  return key;
}

Allocation canonicalize(const Allocation& a, std::span<const PackItem> items,
                        std::span<const BinClass> classes) {
  std::map<std::string, Money> cost_of;
  for (const BinClass& c : classes) cost_of[c.class_id] = c.unit_cost;
  std::map<std::string, const PackItem*> item_of;
  for (const PackItem& it : items) item_of[it.item_id] = &it;

  std::map<int, OpenedBin> renumbered;
  std::map<std::string, int> next_index;
  for (const auto& [id, pl] : a.placements) {
    if (renumbered.contains(pl.bin)) continue;
    const std::string& cls = a.bins.at(static_cast<std::size_t>(pl.bin)).class_id;
    renumbered[pl.bin] = OpenedBin{cls, next_index[cls]++};
  }
  std::vector<OpenedBin> bins;
  for (const auto& [old, b] : renumbered) bins.push_back(b);
  std::sort(bins.begin(), bins.end(), [](const OpenedBin& x, const OpenedBin& y) {
    return std::tie(x.class_id, x.instance_index) < std::tie(y.class_id, y.instance_index);
  });
  auto position = [&](const OpenedBin& b) {
    return static_cast<int>(std::lower_bound(bins.begin(), bins.end(), b,
                                             [](const OpenedBin& x, const OpenedBin& y) {
                                               return std::tie(x.class_id, x.instance_index) <
                                                      std::tie(y.class_id, y.instance_index);
                                             }) -
                            bins.begin());
  };

  Allocation out;
  for (const auto& [id, pl] : a.placements) {
    out.placements[id] = Placement{pl.mode_id, position(renumbered.at(pl.bin))};
    auto it = item_of.find(id);
    if (it == item_of.end()) continue;
    for (const PackMode& m : it->second->modes) {
      if (m.mode_id == pl.mode_id) out.extra_cost += m.extra_cost;
    }
  }
  for (const OpenedBin& b : bins) {
    auto c = cost_of.find(b.class_id);
    if (c != cost_of.end()) out.total_cost += c->second;
  }
  out.bins = std::move(bins);
  return out;
}

namespace detail {

bool fits(const IntVector& load, const IntVector& demand, const IntVector& cap) {
  for (std::size_t d = 0; d < cap.size(); ++d) {
    if (load[d] + demand[d] > cap[d]) return false;
  }
  return true;
}

Problem make_problem(std::span<const PackItem> items, std::span<const BinClass> classes) {
  Problem p;
  p.dims = classes.empty() ? (items.empty() || items[0].modes.empty()
                                  ? 0
                                  : items[0].modes[0].demand.size())
                           : classes[0].capacity.size();

  std::set<std::string> class_ids;
  for (const BinClass& c : classes) {
    if (!class_ids.insert(c.class_id).second) {
      throw ValidationError("duplicate bin class '" + c.class_id + "'");
    }
    if (c.capacity.size() != p.dims) {
      throw ValidationError("bin class '" + c.class_id + "': dimension mismatch");
    }
    if (c.unit_cost <= Money{}) {
      throw ValidationError("bin class '" + c.class_id + "': unit_cost must be > 0");
    }
    p.classes.push_back({&c, static_cast<int>(items.size())});
    if (c.max_count) p.classes.back().max_count = std::min(*c.max_count, p.classes.back().max_count);
  }
  std::sort(p.classes.begin(), p.classes.end(), [](const ClassView& a, const ClassView& b) {
    return a.src->class_id < b.src->class_id;
  });
  std::map<std::string, int> class_index;
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    class_index[p.classes[c].src->class_id] = static_cast<int>(c);
  }

  std::set<std::string> item_ids;
  for (const PackItem& it : items) {
    if (!item_ids.insert(it.item_id).second) {
      throw ValidationError("duplicate item '" + it.item_id + "'");
    }
    ItemView view{&it, {}};
    for (const PackMode& m : it.modes) {
      if (m.demand.size() != p.dims) {
        throw ValidationError("item '" + it.item_id + "' mode '" + m.mode_id +
                              "': dimension mismatch");
      }
      for (std::int64_t v : m.demand) {
        if (v < 0) throw ValidationError("item '" + it.item_id + "': negative demand");
      }
      ModeView mv{&m, {}, std::vector<char>(p.classes.size(), 0)};
      const IntVector zero(p.dims, 0);
      for (const std::string& cid : m.allowed_bin_classes) {
        auto ci = class_index.find(cid);
        if (ci == class_index.end()) continue;
        const ClassView& cv = p.classes[static_cast<std::size_t>(ci->second)];
        if (cv.max_count > 0 && fits(zero, m.demand, cv.src->capacity)) {
          mv.allowed[static_cast<std::size_t>(ci->second)] = 1;
        }
      }
      for (std::size_t c = 0; c < p.classes.size(); ++c) {
        if (mv.allowed[c]) mv.classes.push_back(static_cast<int>(c));
      }
      if (!mv.classes.empty()) view.modes.push_back(std::move(mv));
    }
    std::sort(view.modes.begin(), view.modes.end(), [](const ModeView& a, const ModeView& b) {
      return a.src->mode_id < b.src->mode_id;
    });
    for (std::size_t m = 1; m < view.modes.size(); ++m) {
      if (view.modes[m].src->mode_id == view.modes[m - 1].src->mode_id) {
        throw ValidationError("item '" + it.item_id + "': duplicate mode '" +
                              view.modes[m].src->mode_id + "'");
      }
    }
    p.items.push_back(std::move(view));
  }
  std::sort(p.items.begin(), p.items.end(), [](const ItemView& a, const ItemView& b) {
    return a.src->item_id < b.src->item_id;
  });
  for (const ItemView& it : p.items) {
    if (it.modes.empty()) {
      throw Infeasible("item '" + it.src->item_id + "' has no mode that fits any bin class",
                       it.src->item_id);
    }
  }
  return p;
}

void drop_dominated_classes(Problem& p) {
  const std::size_t n = p.classes.size();
  const int unbounded = static_cast<int>(p.items.size());
  std::vector<char> drop(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t o = 0; o < n && !drop[c]; ++o) {
      if (o == c || drop[o]) continue;
      const BinClass& a = *p.classes[c].src;
      const BinClass& b = *p.classes[o].src;
      if (!(b.unit_cost < a.unit_cost) || p.classes[o].max_count < unbounded) continue;
      bool bigger = true;
      for (std::size_t d = 0; d < p.dims; ++d) bigger = bigger && b.capacity[d] >= a.capacity[d];
      if (!bigger) continue;
      // Every way to use `a` has a no-larger, no-dearer way to use `b`.
      bool covered = true;
      for (const ItemView& it : p.items) {
        for (const ModeView& m : it.modes) {
          if (!m.allowed[c]) continue;
          bool alt = false;
          for (const ModeView& m2 : it.modes) {
            if (!m2.allowed[o] || m2.src->extra_cost > m.src->extra_cost) continue;
            bool le = true;
            for (std::size_t d = 0; d < p.dims; ++d) le = le && m2.src->demand[d] <= m.src->demand[d];
            alt = alt || le;
          }
          covered = covered && alt;
        }
      }
      if (covered) drop[c] = 1;
    }
  }
  if (std::none_of(drop.begin(), drop.end(), [](char x) { return x != 0; })) return;

  std::vector<int> remap(n, -1);
  std::vector<ClassView> kept;
  for (std::size_t c = 0; c < n; ++c) {
    if (drop[c]) continue;
    remap[c] = static_cast<int>(kept.size());
    kept.push_back(p.classes[c]);
  }
  for (ItemView& it : p.items) {
    for (ModeView& m : it.modes) {
      std::vector<char> allowed(kept.size(), 0);
      std::vector<int> cls;
      for (int c : m.classes) {
        if (remap[static_cast<std::size_t>(c)] >= 0) {
          allowed[static_cast<std::size_t>(remap[static_cast<std::size_t>(c)])] = 1;
          cls.push_back(remap[static_cast<std::size_t>(c)]);
        }
      }
      m.allowed = std::move(allowed);
      m.classes = std::move(cls);
    }
  }
  p.classes = std::move(kept);
}

Allocation to_allocation(const Problem& p, std::span<const Choice> choices) {
  Allocation a;
  std::map<std::pair<int, int>, int> bin_of;
  std::vector<PackItem> items;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    const Choice& ch = choices[i];
    auto [it, inserted] =
        bin_of.try_emplace({ch.cls, ch.instance}, static_cast<int>(a.bins.size()));
    if (inserted) {
      a.bins.push_back({p.classes[static_cast<std::size_t>(ch.cls)].src->class_id, ch.instance});
    }
    const ModeView& m = p.items[i].modes[static_cast<std::size_t>(ch.mode)];
    a.placements[p.items[i].src->item_id] = Placement{m.src->mode_id, it->second};
    items.push_back(*p.items[i].src);
  }
  std::vector<BinClass> classes;
  for (const ClassView& c : p.classes) classes.push_back(*c.src);
  return canonicalize(a, items, classes);
}

}  // namespace detail

namespace {

using detail::Choice;
using detail::ItemView;
using detail::ModeView;
using detail::Problem;

// Cost values are integers (thousandths of a USD); this margin absorbs the
// floating error of the fractional bound before rounding it up.
constexpr double kBoundSlack = 1e-6;
// The subset bound tabulates 2^n sets and 3^n transitions.
constexpr std::size_t kSubsetBoundMaxItems = 14;
constexpr std::int64_t kInfeasibleCost = std::numeric_limits<std::int64_t>::max() / 4;

class BranchAndBound {
 public:
  BranchAndBound(const Problem& p, std::uint64_t budget) : p_(p), budget_(budget) {
    const std::size_t n = p_.items.size();
    const std::size_t nc = p_.classes.size();
    same_as_prev_.assign(n, 0);
    for (std::size_t i = 1; i < n; ++i) same_as_prev_[i] = identical(p_.items[i - 1], p_.items[i]);

    share_suffix_.assign((n + 1) * p_.dims, 0.0);
    demand_suffix_.assign((n + 1) * p_.dims, 0);
    extra_suffix_.assign(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
      std::int64_t min_extra = std::numeric_limits<std::int64_t>::max();
      for (std::size_t d = 0; d < p_.dims; ++d) {
        double share = std::numeric_limits<double>::infinity();
        std::int64_t dem = std::numeric_limits<std::int64_t>::max();
        for (const ModeView& m : p_.items[i].modes) {
          dem = std::min(dem, m.src->demand[d]);
          for (int c : m.classes) {
            const BinClass& bc = *p_.classes[static_cast<std::size_t>(c)].src;
            const double s = m.src->demand[d] == 0
                                 ? 0.0
                                 : static_cast<double>(bc.unit_cost.millis()) *
                                       static_cast<double>(m.src->demand[d]) /
                                       static_cast<double>(bc.capacity[d]);
            share = std::min(share, s);
          }
        }
        share_suffix_[i * p_.dims + d] = share_suffix_[(i + 1) * p_.dims + d] + share;
        demand_suffix_[i * p_.dims + d] = demand_suffix_[(i + 1) * p_.dims + d] + dem;
      }
      for (const ModeView& m : p_.items[i].modes) {
        min_extra = std::min(min_extra, m.src->extra_cost.millis());
      }
      extra_suffix_[i] = extra_suffix_[i + 1] + min_extra;
    }

    max_cap_.assign(p_.dims, 0);
    min_cost_ = std::numeric_limits<std::int64_t>::max();
    for (const detail::ClassView& c : p_.classes) {
      min_cost_ = std::min(min_cost_, c.src->unit_cost.millis());
      for (std::size_t d = 0; d < p_.dims; ++d) {
        max_cap_[d] = std::max(max_cap_[d], c.src->capacity[d]);
      }
    }
    class_bins_.assign(nc, {});
    choices_.assign(n, {});
    if (n <= kSubsetBoundMaxItems) build_subset_bound();
  }

  void set_incumbent(std::int64_t objective, std::vector<Choice> choices) {
    best_objective_ = objective;
    best_choices_ = std::move(choices);
    have_incumbent_ = true;
  }

  // Returns false if the node budget ran out.
  bool run() {
    root_bound_ = bound(0);
    if (root_bound_ >= kInfeasibleCost) return true;
    dfs(0);
    return !budget_hit_;
  }

  bool have_solution() const { return have_incumbent_; }
  std::int64_t best_objective() const { return best_objective_; }
  const std::vector<Choice>& best_choices() const { return best_choices_; }
  std::int64_t root_bound() const { return root_bound_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Bin {
    int cls;
    IntVector load;
  };

  struct LoadState {
    IntVector load;
    std::int64_t extra;
  };

  // single_[S]: cheapest one-bin packing of item set S (unit cost plus
  // extras). subset_[S]: cheapest packing of S into fresh bins, ignoring
  // class counts. Monotone in S.
  void build_subset_bound() {
    const std::size_t n = p_.items.size();
    const std::size_t full = std::size_t{1} << n;
    single_.assign(full, kInfeasibleCost);
    min_extra_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) min_extra_[i] = extra_suffix_[i] - extra_suffix_[i + 1];
    for (std::size_t c = 0; c < p_.classes.size(); ++c) {
      grow(c, 0, 0, {LoadState{IntVector(p_.dims, 0), 0}});
    }
    subset_.assign(full, kInfeasibleCost);
    subset_[0] = 0;
    for (std::size_t mask = 1; mask < full; ++mask) {
      const std::size_t low = mask & (~mask + 1);
      const std::size_t rest = mask ^ low;
      std::int64_t best = kInfeasibleCost;
      for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
        const std::size_t part = sub | low;
        if (single_[part] < kInfeasibleCost && subset_[mask ^ part] < kInfeasibleCost) {
          best = std::min(best, single_[part] + subset_[mask ^ part]);
        }
        if (sub == 0) break;
      }
      subset_[mask] = best;
    }
    bool unbounded = true;
    for (const detail::ClassView& cv : p_.classes) unbounded = unbounded && cv.max_count >= static_cast<int>(n);
    subset_exact_ = unbounded;
    have_subset_ = true;
  }

  void grow(std::size_t c, std::size_t next, std::size_t mask, const std::vector<LoadState>& states) {
    const BinClass& bc = *p_.classes[c].src;
    for (std::size_t j = next; j < p_.items.size(); ++j) {
      std::vector<LoadState> out;
      for (const LoadState& st : states) {
        for (const ModeView& m : p_.items[j].modes) {
          if (!m.allowed[c] || !detail::fits(st.load, m.src->demand, bc.capacity)) continue;
          LoadState ns{st.load, st.extra + m.src->extra_cost.millis()};
          for (std::size_t d = 0; d < p_.dims; ++d) ns.load[d] += m.src->demand[d];
          out.push_back(std::move(ns));
        }
      }
      if (out.empty()) continue;
      keep_pareto(out);
      const std::size_t nm = mask | (std::size_t{1} << j);
      std::int64_t extra = out.front().extra;
      for (const LoadState& st : out) extra = std::min(extra, st.extra);
      single_[nm] = std::min(single_[nm], bc.unit_cost.millis() + extra);
      grow(c, j + 1, nm, out);
    }
  }

  static void keep_pareto(std::vector<LoadState>& states) {
    std::sort(states.begin(), states.end(), [](const LoadState& a, const LoadState& b) {
      return std::tie(a.load, a.extra) < std::tie(b.load, b.extra);
    });
    std::vector<LoadState> kept;
    for (LoadState& st : states) {
      bool dominated = false;
      for (const LoadState& k : kept) {
        bool le = k.extra <= st.extra;
        for (std::size_t d = 0; d < st.load.size() && le; ++d) le = k.load[d] <= st.load[d];
        if (le) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(std::move(st));
    }
    states = std::move(kept);
  }

  // Items i.. that fit no open bin must go to fresh bins; the rest pay at
  // least their cheapest extra.
  std::int64_t subset_bound(std::size_t i) const {
    std::size_t fresh_mask = 0;
    std::int64_t extras = 0;
    for (std::size_t j = i; j < p_.items.size(); ++j) {
      bool absorbable = false;
      for (const Bin& b : bins_) {
        const BinClass& bc = *p_.classes[static_cast<std::size_t>(b.cls)].src;
        for (const ModeView& m : p_.items[j].modes) {
          if (m.allowed[static_cast<std::size_t>(b.cls)] && detail::fits(b.load, m.src->demand, bc.capacity)) {
            absorbable = true;
            break;
          }
        }
        if (absorbable) break;
      }
      if (absorbable) extras += min_extra_[j];
      else fresh_mask |= std::size_t{1} << j;
    }
    const std::int64_t rest = subset_[fresh_mask];
    if (rest >= kInfeasibleCost) return kInfeasibleCost;
    return cost_ + extra_ + extras + rest;
  }

  static bool identical(const ItemView& a, const ItemView& b) {
    if (a.modes.size() != b.modes.size()) return false;
    for (std::size_t m = 0; m < a.modes.size(); ++m) {
      const PackMode& x = *a.modes[m].src;
      const PackMode& y = *b.modes[m].src;
      if (x.mode_id != y.mode_id || x.demand != y.demand || x.extra_cost != y.extra_cost ||
          a.modes[m].allowed != b.modes[m].allowed) {
        return false;
      }
    }
    return true;
  }

  std::int64_t bound(std::size_t i) const {
    const std::size_t D = p_.dims;
    double frac = 0.0;
    std::int64_t count_bound = 0;
    for (std::size_t d = 0; d < D; ++d) {
      double credit = 0.0;
      std::int64_t residual = 0;
      for (const Bin& b : bins_) {
        const BinClass& bc = *p_.classes[static_cast<std::size_t>(b.cls)].src;
        const std::int64_t r = bc.capacity[d] - b.load[d];
        residual += r;
        if (bc.capacity[d] > 0) {
          credit += static_cast<double>(bc.unit_cost.millis()) * static_cast<double>(r) /
                    static_cast<double>(bc.capacity[d]);
        }
      }
      frac = std::max(frac, share_suffix_[i * D + d] - credit);
      const std::int64_t excess = demand_suffix_[i * D + d] - residual;
      if (excess > 0 && max_cap_[d] > 0) {
        count_bound = std::max(count_bound, (excess + max_cap_[d] - 1) / max_cap_[d] * min_cost_);
      }
    }
    const auto frac_bound = static_cast<std::int64_t>(std::ceil(frac - kBoundSlack));
    const std::int64_t lb = cost_ + extra_ + extra_suffix_[i] + std::max(frac_bound, count_bound);
    return have_subset_ ? std::max(lb, subset_bound(i)) : lb;
  }

  bool prune(std::int64_t lb) const {
    if (!have_incumbent_) return false;
    return lb > best_objective_ || (lb == best_objective_ && found_in_search_);
  }

  static bool option_less(const Choice& a, const Choice& b) {
    return std::tie(a.cls, a.instance, a.mode) < std::tie(b.cls, b.instance, b.mode);
  }

  void dfs(std::size_t i) {
    if (budget_hit_ || done_) return;
    if (i == p_.items.size()) {
      const std::int64_t obj = cost_ + extra_;
      if (!have_incumbent_ || obj < best_objective_ ||
          (obj == best_objective_ && !found_in_search_)) {
        best_objective_ = obj;
        best_choices_ = choices_;
        have_incumbent_ = true;
        found_in_search_ = true;
      }
      // DFS meets solutions in key order, so the first exact optimum wins.
      if (subset_exact_ && obj == subset_[(std::size_t{1} << p_.items.size()) - 1]) done_ = true;
      return;
    }
    const ItemView& item = p_.items[i];
    for (std::size_t c = 0; c < p_.classes.size(); ++c) {
      const BinClass& bc = *p_.classes[c].src;
      std::vector<int>& open = class_bins_[c];
      const int open_count = static_cast<int>(open.size());
      for (int j = 0; j <= open_count; ++j) {
        const bool fresh = j == open_count;
        if (fresh && open_count >= p_.classes[c].max_count) break;
        for (std::size_t m = 0; m < item.modes.size(); ++m) {
          const ModeView& mode = item.modes[m];
          if (!mode.allowed[c]) continue;
          const Choice option{static_cast<int>(c), j, static_cast<int>(m)};
          if (same_as_prev_[i] && option_less(option, choices_[i - 1])) continue;
          if (!fresh &&
              !detail::fits(bins_[static_cast<std::size_t>(open[static_cast<std::size_t>(j)])].load,
                            mode.src->demand, bc.capacity)) {
            continue;
          }
          if (budget_ != 0 && nodes_ >= budget_) {
            budget_hit_ = true;
            return;
          }
          ++nodes_;
          apply(i, option, fresh);
          if (!prune(bound(i + 1))) dfs(i + 1);
          undo(i, option, fresh);
          if (budget_hit_ || done_) return;
        }
      }
    }
  }

  void apply(std::size_t i, const Choice& option, bool fresh) {
    const PackMode& m = *p_.items[i].modes[static_cast<std::size_t>(option.mode)].src;
    const auto c = static_cast<std::size_t>(option.cls);
    if (fresh) {
      class_bins_[c].push_back(static_cast<int>(bins_.size()));
      bins_.push_back({option.cls, IntVector(p_.dims, 0)});
      cost_ += p_.classes[c].src->unit_cost.millis();
    }
    Bin& b = bins_[static_cast<std::size_t>(class_bins_[c][static_cast<std::size_t>(option.instance)])];
    for (std::size_t d = 0; d < p_.dims; ++d) b.load[d] += m.demand[d];
    extra_ += m.extra_cost.millis();
    choices_[i] = option;
  }

  void undo(std::size_t i, const Choice& option, bool fresh) {
    const PackMode& m = *p_.items[i].modes[static_cast<std::size_t>(option.mode)].src;
    const auto c = static_cast<std::size_t>(option.cls);
    Bin& b = bins_[static_cast<std::size_t>(class_bins_[c][static_cast<std::size_t>(option.instance)])];
    for (std::size_t d = 0; d < p_.dims; ++d) b.load[d] -= m.demand[d];
    extra_ -= m.extra_cost.millis();
    if (fresh) {
      bins_.pop_back();
      class_bins_[c].pop_back();
      cost_ -= p_.classes[c].src->unit_cost.millis();
    }
  }

  const Problem& p_;
  std::uint64_t budget_;
  std::vector<char> same_as_prev_;
  std::vector<double> share_suffix_;
  std::vector<std::int64_t> demand_suffix_;
  std::vector<std::int64_t> extra_suffix_;
  IntVector max_cap_;
  std::int64_t min_cost_ = 0;

  std::vector<Bin> bins_;
  std::vector<std::vector<int>> class_bins_;
  std::vector<Choice> choices_;
  std::int64_t cost_ = 0;
  std::int64_t extra_ = 0;

  bool have_incumbent_ = false;
  bool found_in_search_ = false;
  std::int64_t best_objective_ = 0;
  std::vector<Choice> best_choices_;
  std::int64_t root_bound_ = 0;
  std::uint64_t nodes_ = 0;
  bool budget_hit_ = false;
  bool done_ = false;

  bool have_subset_ = false;
  bool subset_exact_ = false;
  std::vector<std::int64_t> single_;
  std::vector<std::int64_t> subset_;
  std::vector<std::int64_t> min_extra_;
};

// Maps an allocation onto Problem indices; nullopt if it does not fit the
// problem (unknown ids, disallowed or dropped classes, overfull bins).
std::optional<std::vector<Choice>> to_choices(const Problem& p, const Allocation& a) {
  std::vector<Choice> out(p.items.size());
  std::vector<std::vector<std::int64_t>> loads(a.bins.size(), IntVector(p.dims, 0));
  std::vector<int> bin_class(a.bins.size(), -1);
  for (std::size_t b = 0; b < a.bins.size(); ++b) {
    for (std::size_t c = 0; c < p.classes.size(); ++c) {
      if (p.classes[c].src->class_id == a.bins[b].class_id) bin_class[b] = static_cast<int>(c);
    }
    if (bin_class[b] < 0) return std::nullopt;
  }
  if (a.placements.size() != p.items.size()) return std::nullopt;
  for (std::size_t i = 0; i < p.items.size(); ++i) {
    auto pl = a.placements.find(p.items[i].src->item_id);
    if (pl == a.placements.end()) return std::nullopt;
    const auto b = static_cast<std::size_t>(pl->second.bin);
    if (b >= a.bins.size()) return std::nullopt;
    int mode = -1;
    for (std::size_t m = 0; m < p.items[i].modes.size(); ++m) {
      if (p.items[i].modes[m].src->mode_id == pl->second.mode_id) mode = static_cast<int>(m);
    }
    if (mode < 0) return std::nullopt;
    const ModeView& mv = p.items[i].modes[static_cast<std::size_t>(mode)];
    if (!mv.allowed[static_cast<std::size_t>(bin_class[b])]) return std::nullopt;
    for (std::size_t d = 0; d < p.dims; ++d) loads[b][d] += mv.src->demand[d];
    out[i] = Choice{bin_class[b], a.bins[b].instance_index, mode};
  }
  std::vector<int> per_class(p.classes.size(), 0);
  for (std::size_t b = 0; b < a.bins.size(); ++b) {
    const auto c = static_cast<std::size_t>(bin_class[b]);
    if (!detail::fits(IntVector(p.dims, 0), loads[b], p.classes[c].src->capacity)) {
      return std::nullopt;
    }
    if (++per_class[c] > p.classes[c].max_count) return std::nullopt;
  }
  return out;
}

}  // namespace

SearchResult solve_mcvbp_search(std::span<const PackItem> items,
                                std::span<const BinClass> classes,
                                const SearchOptions& options) {
  Problem p = detail::make_problem(items, classes);
  SearchResult result;
  if (p.items.empty()) {
    result.proven_optimal = true;
    return result;
  }
  detail::drop_dominated_classes(p);

  BranchAndBound bb(p, options.node_budget);

  // Incumbent: cheapest of FFD and the warm starts, ties by key.
  std::vector<Allocation> seeds;
  try {
    seeds.push_back(solve_mcvbp_ffd(items, classes));
  } catch (const Infeasible&) {
  }
  for (const Allocation& w : options.warm_starts) seeds.push_back(w);
  std::optional<std::pair<std::int64_t, AllocationKey>> best_seed;
  for (const Allocation& s : seeds) {
    auto ch = to_choices(p, s);
    if (!ch) continue;
    const Allocation canon = detail::to_allocation(p, *ch);
    std::pair<std::int64_t, AllocationKey> k{canon.objective().millis(), allocation_key(canon)};
    if (!best_seed || k < *best_seed) {
      best_seed = k;
      bb.set_incumbent(k.first, *ch);
    }
  }

  const bool complete = bb.run();
  if (!bb.have_solution()) {
    throw Infeasible("no allocation satisfies the bin class counts", "");
  }
  result.allocation = detail::to_allocation(p, bb.best_choices());
  result.proven_optimal = complete;
  result.lower_bound = Money::from_millis(
      complete ? result.allocation.objective().millis()
               : std::min(bb.root_bound(), result.allocation.objective().millis()));
  result.nodes = bb.nodes();
  return result;
}

Allocation solve_mcvbp_exact(std::span<const PackItem> items,
                             std::span<const BinClass> classes, const ExactLimits& limits) {
  Problem p = detail::make_problem(items, classes);
  detail::drop_dominated_classes(p);
  std::size_t used_classes = 0;
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    bool used = false;
    for (const ItemView& it : p.items) {
      for (const ModeView& m : it.modes) used = used || m.allowed[c];
    }
    used_classes += used ? 1 : 0;
  }
  if (static_cast<int>(p.items.size()) > limits.max_items ||
      static_cast<int>(used_classes) > limits.max_bin_classes) {
    throw LimitExceeded(fmt::format(
        "exact solver limits: {} items (max {}), {} bin classes (max {})", p.items.size(),
        limits.max_items, used_classes, limits.max_bin_classes));
  }
  return solve_mcvbp_search(items, classes, {}).allocation;
}

}  // namespace streamplace
