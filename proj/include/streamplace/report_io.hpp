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

#include <filesystem>
#include <span>
#include <string>

#include "streamplace/strategies.hpp"

namespace streamplace {

// Column orders are part of the output contract.
inline constexpr std::string_view kPlacementsHeader =
    "stream_id,strategy,region,instance_type,instance_index,mode,rtt_ms,fps";
inline constexpr std::string_view kSummaryHeader =
    "strategy,total_cost_usd_per_hr,instances_opened,infeasible_count";
inline constexpr std::string_view kSweepHeader = "fps,strategy,cost_usd_per_hr,infeasible_count";

/// One row per stream in id order. Infeasible streams carry an empty region
/// and type, instance_index -1 and mode "infeasible".
std::string placements_csv(const Scenario& s, const StrategyReport& r);
std::string summary_csv(std::span<const StrategyReport> reports);
std::string sweep_csv(std::span<const SweepRow> rows);

/// Fixed-width rendering of the summary for terminals.
std::string summary_table(std::span<const StrategyReport> reports);
std::string sweep_table(std::span<const SweepRow> rows);

/// Shortest round-trip decimal ("0.5", "25").
std::string format_number(double v);

/// Writes atomically enough for tests: truncates, then writes all bytes.
/// Throws Error on I/O failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace streamplace
