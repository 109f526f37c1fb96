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

#include "streamplace/workload.hpp"

#include <algorithm>
#include <cctype>

#include "streamplace/errors.hpp"

namespace streamplace {

std::string_view to_string(ExecMode m) { return m == ExecMode::Cpu ? "CPU" : "GPU"; }

ExecMode exec_mode_from_string(std::string_view s) {
  std::string up;
  for (char c : s) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "CPU") return ExecMode::Cpu;
  if (up == "GPU") return ExecMode::Gpu;
  throw ParseError("unknown execution mode '" + std::string(s) + "'");
}

double ProgramProfile::speedup() const {
  if (!gpu_capable || gpu_sec_per_megapixel <= 0.0) return 0.0;
  return cpu_sec_per_megapixel_cpu_mode / gpu_sec_per_megapixel;
}

bool StreamJob::allows(ExecMode m) const {
  return std::find(allowed_modes.begin(), allowed_modes.end(), m) != allowed_modes.end();
}

DemandMode demand_for(const StreamJob& job, const ProgramProfile& profile, ExecMode mode) {
  if (profile.name != job.program) {
    throw UnknownProfile("job '" + job.id + "' runs '" + job.program + "', not '" +
                         profile.name + "'");
  }
  if (!job.allows(mode) || (mode == ExecMode::Gpu && !profile.gpu_capable)) {
    throw ModeNotAllowed("job '" + job.id + "' does not allow " +
                         std::string(to_string(mode)) + " mode");
  }
  const double work = job.megapixels() * job.target_fps * job.content_multiplier;

  DemandMode out;
  out.mode = mode;
  out.demand.mem_gib = profile.mem_gib_base;
  if (mode == ExecMode::Cpu) {
    out.demand.vcpu = profile.cpu_sec_per_megapixel_cpu_mode * work;
  } else {
    out.demand.vcpu = profile.cpu_sec_per_megapixel_gpu_mode * work;
    out.demand.gpu = profile.gpu_sec_per_megapixel * work;
    out.demand.gpu_mem_gib = profile.gpu_mem_gib_base;
  }
  return out;
}

}  // namespace streamplace
