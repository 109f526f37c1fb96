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

#include "streamplace/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

namespace streamplace {

std::vector<ProgramProfile> default_profiles() {
  return {
      {"VGG16", 4.0, 0.25, 0.25, 2.0, 1.5, true},
      {"ZF", 1.5, 0.1, 0.1, 1.0, 1.0, true},
  };
}

Scenario random_world_scenario(const Catalog& catalog, std::uint64_t seed,
                               const GeneratorOptions& options) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  Scenario s{fmt::format("random-{}", seed), catalog, default_profiles(), {}, {}, {}, 3600, {}};
  const auto& regions = catalog.regions();
  const double log_lo = std::log(options.fps_min);
  const double log_hi = std::log(options.fps_max);
  for (int i = 0; i < options.streams; ++i) {
    StreamJob job;
    job.id = fmt::format("cam{:02}", i);
    if (unit(rng) < options.clustered_share) {
      const Region& r = regions[static_cast<std::size_t>(unit(rng) * regions.size()) % regions.size()];
      job.camera_lat = std::clamp(r.lat + uniform(-5.0, 5.0), -90.0, 90.0);
      job.camera_lon = std::clamp(r.lon + uniform(-5.0, 5.0), -180.0, 180.0);
    } else {
      job.camera_lat = uniform(-50.0, 65.0);
      job.camera_lon = uniform(-180.0, 180.0);
    }
    // Round so the generated file reproduces the scenario exactly.
    job.camera_lat = std::round(job.camera_lat * 1e4) / 1e4;
    job.camera_lon = std::round(job.camera_lon * 1e4) / 1e4;
    job.target_fps = std::round(std::exp(uniform(log_lo, log_hi)) * 100.0) / 100.0;
    job.target_fps = std::max(job.target_fps, 0.01);
    const bool hd = unit(rng) < 0.3;
    job.frame_width = hd ? 1280 : 640;
    job.frame_height = hd ? 720 : 360;
    job.program = unit(rng) < 0.5 ? "VGG16" : "ZF";
    job.allowed_modes = {ExecMode::Cpu, ExecMode::Gpu};
    s.jobs.push_back(std::move(job));
  }
  return s;
}

}  // namespace streamplace
