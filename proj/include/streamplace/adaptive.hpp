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
#include <string>
#include <vector>

#include "streamplace/strategies.hpp"

namespace streamplace {

struct Epoch {
  std::int64_t t = 0;           // seconds
  std::int64_t duration_s = 0;  // until the next epoch or the horizon
  StrategyReport report;
  /// Streams present in both this and the previous epoch whose offer
  /// (instance type and region) changed. Zero for the first epoch.
  int migrations = 0;
};

struct AdaptiveRun {
  std::string strategy;
  std::vector<Epoch> epochs;
  /// Exact sum of cost_millis_per_hour x seconds.
  std::int64_t cost_millis_seconds = 0;

  /// Cumulative USD, rounded to the nearest thousandth.
  Money cumulative_cost() const;
};

/// Replays the scenario timeline. Events sharing a timestamp are applied
/// together; events at t = 0 precede the first solve. `migration_penalty`
/// applies to the GCL family only.
/// Throws EventReferenceError for removals or fps changes of unknown streams
/// and for duplicate additions.
AdaptiveRun run_adaptive(const Scenario& s, StrategyKind kind, Money migration_penalty = {});

inline constexpr std::string_view kAdaptiveHeader =
    "epoch_t,strategy,cost_usd_per_hr,migrations,infeasible";
std::string adaptive_csv(const AdaptiveRun& run);

}  // namespace streamplace
