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

#include <span>
#include <string>
#include <vector>

#include "streamplace/catalog.hpp"
#include "streamplace/workload.hpp"

namespace streamplace {

inline constexpr double kEarthRadiusKm = 6371.0;

/// RTT = base_rtt_ms + ms_per_km * great-circle km. A stream at `fps` may
/// use a region iff RTT <= 1000 * rtt_budget_coeff / fps.
struct NetworkParams {
  double base_rtt_ms = 5.0;
  double ms_per_km = 0.01;
  double rtt_budget_coeff = 1.0;
};

double haversine_km(double lat1, double lon1, double lat2, double lon2);

double rtt_ms(double cam_lat, double cam_lon, const Region& region,
              const NetworkParams& params);

/// Largest RTT (ms) a stream at `fps` tolerates.
double rtt_budget_ms(double fps, const NetworkParams& params);

/// Region ids (catalog order) within the stream's RTT budget. May be empty.
std::vector<std::string> feasible_regions(const StreamJob& job, const Catalog& catalog,
                                          const NetworkParams& params);

/// Row-major jobs x regions RTT table.
struct RttMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> ms;

  double at(std::size_t job, std::size_t region) const { return ms[job * cols + region]; }
};

/// OpenMP-parallel over jobs.
RttMatrix rtt_matrix(std::span<const StreamJob> jobs, std::span<const Region> regions,
                     const NetworkParams& params);
/// Reference implementation; must agree exactly with rtt_matrix.
RttMatrix rtt_matrix_serial(std::span<const StreamJob> jobs, std::span<const Region> regions,
                            const NetworkParams& params);

}  // namespace streamplace
