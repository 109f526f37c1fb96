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
#include <vector>

#include "streamplace/scenario.hpp"

namespace streamplace {

struct GeneratorOptions {
  int streams = 6;
  double fps_min = 0.5;   // fps is log-uniform in [fps_min, fps_max]
  double fps_max = 10.0;
  /// Probability that a camera sits within a few degrees of some region;
  /// the rest are uniform over inhabited latitudes.
  double clustered_share = 0.7;
};

/// The two detection-program profiles used by the shipped scenarios.
std::vector<ProgramProfile> default_profiles();

/// Deterministic for a given (catalog, seed, options) on one standard library.
Scenario random_world_scenario(const Catalog& catalog, std::uint64_t seed,
                               const GeneratorOptions& options = {});

}  // namespace streamplace
