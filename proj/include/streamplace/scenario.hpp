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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "streamplace/catalog.hpp"
#include "streamplace/mcvbp.hpp"
#include "streamplace/netmodel.hpp"
#include "streamplace/workload.hpp"

namespace streamplace {

enum class EventKind { AddStream, RemoveStream, SetFps };

struct TimelineEvent {
  std::int64_t t = 0;  // seconds from scenario start
  EventKind kind = EventKind::SetFps;
  std::optional<StreamJob> job;  // AddStream
  std::string stream_id;         // RemoveStream, SetFps
  double fps = 0.0;              // SetFps
};

struct SolverSettings {
  double util_cap = 0.90;
  /// Explicit integer cell sizes; default is 1/100 of the largest capacity.
  std::optional<CapacityVector> grid;
  ExactLimits exact_limits;
  /// Node budget used when an instance exceeds the exact limits.
  std::uint64_t node_budget = 2'000'000;
};

struct Scenario {
  std::string name;
  Catalog catalog;
  std::vector<ProgramProfile> profiles;
  std::vector<StreamJob> jobs;
  NetworkParams network;
  std::vector<TimelineEvent> timeline;
  /// End of the replayed horizon in seconds; epochs run until here.
  std::int64_t horizon_s = 3600;
  SolverSettings solver;

  /// Throws UnknownProfile.
  const ProgramProfile& profile(const std::string& name) const;
};

/// `base_dir` resolves a catalog given as a relative path.
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
nlohmann::json scenario_to_json(const Scenario& s);

/// Throws ParseError or ValidationError with the record path.
Scenario load_scenario(const std::filesystem::path& path);

/// Checks one job against the scenario's profiles (used for added streams).
void validate_job(const StreamJob& job, const std::vector<ProgramProfile>& profiles,
                  const std::string& where);

StreamJob job_from_json(const nlohmann::json& j);
nlohmann::json job_to_json(const StreamJob& job);

}  // namespace streamplace
