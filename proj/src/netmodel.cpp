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

#include "streamplace/netmodel.hpp"

#include <cmath>
#include <numbers>

namespace streamplace {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  const double p1 = lat1 * kDegToRad;
  const double p2 = lat2 * kDegToRad;
  const double dp = (lat2 - lat1) * kDegToRad;
  const double dl = (lon2 - lon1) * kDegToRad;
  const double s1 = std::sin(dp / 2.0);
  const double s2 = std::sin(dl / 2.0);
  double h = s1 * s1 + std::cos(p1) * std::cos(p2) * s2 * s2;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double rtt_ms(double cam_lat, double cam_lon, const Region& region,
              const NetworkParams& params) {
  return params.base_rtt_ms +
         params.ms_per_km * haversine_km(cam_lat, cam_lon, region.lat, region.lon);
}

double rtt_budget_ms(double fps, const NetworkParams& params) {
  return 1000.0 * params.rtt_budget_coeff / fps;
}

std::vector<std::string> feasible_regions(const StreamJob& job, const Catalog& catalog,
                                          const NetworkParams& params) {
  const double budget = rtt_budget_ms(job.target_fps, params);
  std::vector<std::string> out;
  for (const Region& r : catalog.regions()) {
    if (rtt_ms(job.camera_lat, job.camera_lon, r, params) <= budget) out.push_back(r.id);
  }
  return out;
}

RttMatrix rtt_matrix(std::span<const StreamJob> jobs, std::span<const Region> regions,
                     const NetworkParams& params) {
  RttMatrix m{jobs.size(), regions.size(), std::vector<double>(jobs.size() * regions.size())};
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const StreamJob& job = jobs[static_cast<std::size_t>(i)];
    double* row = m.ms.data() + static_cast<std::size_t>(i) * m.cols;
    for (std::size_t r = 0; r < regions.size(); ++r) {
      row[r] = rtt_ms(job.camera_lat, job.camera_lon, regions[r], params);
    }
  }
  return m;
}

RttMatrix rtt_matrix_serial(std::span<const StreamJob> jobs, std::span<const Region> regions,
                            const NetworkParams& params) {
  RttMatrix m{jobs.size(), regions.size(), {}};
  m.ms.reserve(jobs.size() * regions.size());
  for (const StreamJob& job : jobs) {
    for (const Region& r : regions) {
      m.ms.push_back(rtt_ms(job.camera_lat, job.camera_lon, r, params));
    }
  }
  return m;
}

}  // namespace streamplace
