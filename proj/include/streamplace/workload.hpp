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

#include <string>
#include <string_view>
#include <vector>

#include "streamplace/catalog.hpp"

namespace streamplace {

enum class ExecMode { Cpu, Gpu };

std::string_view to_string(ExecMode m);
/// Accepts "CPU"/"GPU" (case-insensitive). Throws ParseError otherwise.
ExecMode exec_mode_from_string(std::string_view s);

/// Per-megapixel cost of one analysis program. Rates are per frame megapixel,
/// so a stream's demand is rate x megapixels x fps.
struct ProgramProfile {
  std::string name;
  double cpu_sec_per_megapixel_cpu_mode = 0.0;
  double cpu_sec_per_megapixel_gpu_mode = 0.0;
  double gpu_sec_per_megapixel = 0.0;
  double mem_gib_base = 0.0;
  double gpu_mem_gib_base = 0.0;
  bool gpu_capable = false;

  /// CPU-mode vCPU rate over GPU-mode GPU rate; 0 when not GPU capable.
  double speedup() const;
};

struct StreamJob {
  std::string id;
  double camera_lat = 0.0;
  double camera_lon = 0.0;
  double target_fps = 1.0;
  int frame_width = 0;
  int frame_height = 0;
  std::string program;
  std::vector<ExecMode> allowed_modes;  // sorted, unique
  /// Content-dependent demand scale; 1.0 means "typical content".
  double content_multiplier = 1.0;

  double megapixels() const {
    return static_cast<double>(frame_width) * static_cast<double>(frame_height) / 1e6;
  }
  bool allows(ExecMode m) const;
};

struct DemandMode {
  ExecMode mode = ExecMode::Cpu;
  CapacityVector demand;
};

/// Linear demand model:
///   vcpu = rate(mode) * MP * fps * content_multiplier
///   gpu  = gpu_sec_per_megapixel * MP * fps * content_multiplier (GPU mode)
///   mem_gib / gpu_mem_gib are per-analysis constants.
/// GPU demand is the fraction of one device busy per wall-clock second.
///
/// Throws UnknownProfile if `profile` is not the job's program and
/// ModeNotAllowed if the job does not allow `mode`.
DemandMode demand_for(const StreamJob& job, const ProgramProfile& profile, ExecMode mode);

}  // namespace streamplace
