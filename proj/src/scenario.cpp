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

#include "streamplace/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "streamplace/errors.hpp"

namespace streamplace {

const ProgramProfile& Scenario::profile(const std::string& name) const {
  for (const ProgramProfile& p : profiles) {
    if (p.name == name) return p;
  }
  throw UnknownProfile("unknown program profile '" + name + "'");
}

namespace {

ProgramProfile profile_from_json(const nlohmann::json& j) {
  ProgramProfile p;
  p.name = j.at("name").get<std::string>();
  p.cpu_sec_per_megapixel_cpu_mode = j.value("cpu_sec_per_megapixel_cpu_mode", 0.0);
  p.cpu_sec_per_megapixel_gpu_mode = j.value("cpu_sec_per_megapixel_gpu_mode", 0.0);
  p.gpu_sec_per_megapixel = j.value("gpu_sec_per_megapixel", 0.0);
  p.mem_gib_base = j.value("mem_gib_base", 0.0);
  p.gpu_mem_gib_base = j.value("gpu_mem_gib_base", 0.0);
  p.gpu_capable = j.value("gpu_capable", false);
  return p;
}

nlohmann::json profile_to_json(const ProgramProfile& p) {
  return {{"name", p.name},
          {"cpu_sec_per_megapixel_cpu_mode", p.cpu_sec_per_megapixel_cpu_mode},
          {"cpu_sec_per_megapixel_gpu_mode", p.cpu_sec_per_megapixel_gpu_mode},
          {"gpu_sec_per_megapixel", p.gpu_sec_per_megapixel},
          {"mem_gib_base", p.mem_gib_base},
          {"gpu_mem_gib_base", p.gpu_mem_gib_base},
          {"gpu_capable", p.gpu_capable}};
}

void validate_profile(const ProgramProfile& p, const std::string& where) {
  if (p.name.empty()) throw ValidationError(where + ": empty name");
  for (double v : {p.cpu_sec_per_megapixel_cpu_mode, p.cpu_sec_per_megapixel_gpu_mode,
                   p.gpu_sec_per_megapixel, p.mem_gib_base, p.gpu_mem_gib_base}) {
    if (!(v >= 0.0)) throw ValidationError(where + ": rates must be >= 0");
  }
  if (p.gpu_capable && !(p.gpu_sec_per_megapixel > 0.0)) {
    throw ValidationError(where + ": gpu_capable profile needs gpu_sec_per_megapixel > 0");
  }
}

TimelineEvent event_from_json(const nlohmann::json& j) {
  TimelineEvent e;
  const auto& t = j.at("t");
  if (!t.is_number_integer()) throw ParseError("timeline event 't' must be integer seconds");
  e.t = t.get<std::int64_t>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "add_stream") {
    e.kind = EventKind::AddStream;
    e.job = job_from_json(j.at("job"));
  } else if (kind == "remove_stream") {
    e.kind = EventKind::RemoveStream;
    e.stream_id = j.at("stream_id").get<std::string>();
  } else if (kind == "set_fps") {
    e.kind = EventKind::SetFps;
    e.stream_id = j.at("stream_id").get<std::string>();
    e.fps = j.at("fps").get<double>();
  } else {
    throw ParseError("unknown timeline event kind '" + kind + "'");
  }
  return e;
}

nlohmann::json event_to_json(const TimelineEvent& e) {
  switch (e.kind) {
    case EventKind::AddStream:
      return {{"t", e.t}, {"kind", "add_stream"}, {"job", job_to_json(*e.job)}};
    case EventKind::RemoveStream:
      return {{"t", e.t}, {"kind", "remove_stream"}, {"stream_id", e.stream_id}};
    case EventKind::SetFps:
      break;
  }
  return {{"t", e.t}, {"kind", "set_fps"}, {"stream_id", e.stream_id}, {"fps", e.fps}};
}

}  // namespace

StreamJob job_from_json(const nlohmann::json& j) {
  StreamJob job;
  job.id = j.at("id").get<std::string>();
  job.camera_lat = j.at("lat").get<double>();
  job.camera_lon = j.at("lon").get<double>();
  job.target_fps = j.at("fps").get<double>();
  job.frame_width = j.at("width").get<int>();
  job.frame_height = j.at("height").get<int>();
  job.program = j.at("program").get<std::string>();
  job.content_multiplier = j.value("content_multiplier", 1.0);
  if (j.contains("modes")) {
    for (const auto& m : j.at("modes")) job.allowed_modes.push_back(exec_mode_from_string(m.get<std::string>()));
    std::sort(job.allowed_modes.begin(), job.allowed_modes.end());
    job.allowed_modes.erase(std::unique(job.allowed_modes.begin(), job.allowed_modes.end()),
                            job.allowed_modes.end());
  }
  return job;
}

nlohmann::json job_to_json(const StreamJob& job) {
  nlohmann::json modes = nlohmann::json::array();
  for (ExecMode m : job.allowed_modes) modes.push_back(std::string(to_string(m)));
  nlohmann::json j = {{"id", job.id},
                      {"lat", job.camera_lat},
                      {"lon", job.camera_lon},
                      {"fps", job.target_fps},
                      {"width", job.frame_width},
                      {"height", job.frame_height},
                      {"program", job.program},
                      {"modes", modes}};
  if (job.content_multiplier != 1.0) j["content_multiplier"] = job.content_multiplier;
  return j;
}

void validate_job(const StreamJob& job, const std::vector<ProgramProfile>& profiles,
                  const std::string& where) {
  if (job.id.empty()) throw ValidationError(where + ": empty id");
  if (!(job.target_fps > 0.0)) throw ValidationError(where + ": fps must be > 0");
  if (job.frame_width <= 0 || job.frame_height <= 0) {
    throw ValidationError(where + ": frame dimensions must be > 0");
  }
  if (job.camera_lat < -90.0 || job.camera_lat > 90.0 || job.camera_lon < -180.0 ||
      job.camera_lon > 180.0) {
    throw ValidationError(where + ": coordinates out of bounds");
  }
  if (!(job.content_multiplier > 0.0)) {
    throw ValidationError(where + ": content_multiplier must be > 0");
  }
  const ProgramProfile* prof = nullptr;
  for (const ProgramProfile& p : profiles) {
    if (p.name == job.program) prof = &p;
  }
  if (prof == nullptr) {
    throw ValidationError(where + ": unknown program '" + job.program + "'");
  }
  if (job.allowed_modes.empty()) throw ValidationError(where + ": no allowed modes");
  if (job.allows(ExecMode::Gpu) && !prof->gpu_capable) {
    throw ValidationError(where + ": GPU mode requested but '" + job.program +
                          "' is not gpu_capable");
  }
}

namespace {

// A job without "modes" may run in every mode its profile supports.
void default_modes(StreamJob& job, const std::vector<ProgramProfile>& profiles) {
  if (!job.allowed_modes.empty()) return;
  job.allowed_modes.push_back(ExecMode::Cpu);
  for (const ProgramProfile& p : profiles) {
    if (p.name == job.program && p.gpu_capable) job.allowed_modes.push_back(ExecMode::Gpu);
  }
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  try {
    if (!j.is_object()) throw ParseError("scenario: expected a JSON object");
    const auto& cat = j.at("catalog");
    Catalog catalog = cat.is_string()
                          ? load_catalog(base_dir / cat.get<std::string>())
                          : catalog_from_json(cat);
    Scenario s{j.value("name", std::string{}), std::move(catalog), {}, {}, {}, {}, 3600, {}};

    std::set<std::string> names;
    std::size_t idx = 0;
    for (const auto& p : j.value("profiles", nlohmann::json::array())) {
      ProgramProfile prof = profile_from_json(p);
      const std::string where = fmt::format("profiles[{}] '{}'", idx++, prof.name);
      validate_profile(prof, where);
      if (!names.insert(prof.name).second) throw ValidationError(where + ": duplicate name");
      s.profiles.push_back(std::move(prof));
    }

    std::set<std::string> ids;
    idx = 0;
    for (const auto& jj : j.value("jobs", nlohmann::json::array())) {
      StreamJob job = job_from_json(jj);
      const std::string where = fmt::format("jobs[{}] '{}'", idx++, job.id);
      default_modes(job, s.profiles);
      validate_job(job, s.profiles, where);
      if (!ids.insert(job.id).second) throw ValidationError(where + ": duplicate id");
      s.jobs.push_back(std::move(job));
    }

    if (j.contains("network")) {
      const auto& n = j.at("network");
      s.network.base_rtt_ms = n.value("base_rtt_ms", s.network.base_rtt_ms);
      s.network.ms_per_km = n.value("ms_per_km", s.network.ms_per_km);
      s.network.rtt_budget_coeff = n.value("rtt_budget_coeff", s.network.rtt_budget_coeff);
    }
    if (!(s.network.base_rtt_ms >= 0.0) || !(s.network.ms_per_km > 0.0) ||
        !(s.network.rtt_budget_coeff > 0.0)) {
      throw ValidationError("network: need base_rtt_ms >= 0, ms_per_km > 0, rtt_budget_coeff > 0");
    }

    idx = 0;
    std::int64_t last_t = 0;
    for (const auto& e : j.value("timeline", nlohmann::json::array())) {
      TimelineEvent ev = event_from_json(e);
      const std::string where = fmt::format("timeline[{}]", idx++);
      if (ev.t < 0) throw ValidationError(where + ": t must be >= 0");
      if (ev.t < last_t) throw ValidationError(where + ": events must be sorted by t");
      last_t = ev.t;
      if (ev.kind == EventKind::AddStream) {
        default_modes(*ev.job, s.profiles);
        validate_job(*ev.job, s.profiles, where + " job '" + ev.job->id + "'");
      }
      if (ev.kind == EventKind::SetFps && !(ev.fps > 0.0)) {
        throw ValidationError(where + ": fps must be > 0");
      }
      s.timeline.push_back(std::move(ev));
    }
    s.horizon_s = j.value("horizon_s", last_t + 3600);
    if (s.horizon_s < last_t) throw ValidationError("horizon_s precedes the last event");

    if (j.contains("solver")) {
      const auto& sv = j.at("solver");
      s.solver.util_cap = sv.value("util_cap", s.solver.util_cap);
      if (sv.contains("grid")) {
        const auto& g = sv.at("grid");
        s.solver.grid = CapacityVector{g.value("vcpu", 0.0), g.value("mem_gib", 0.0),
                                       g.value("gpu", 0.0), g.value("gpu_mem_gib", 0.0)};
      }
      if (sv.contains("exact_limits")) {
        s.solver.exact_limits.max_items =
            sv.at("exact_limits").value("max_items", s.solver.exact_limits.max_items);
        s.solver.exact_limits.max_bin_classes =
            sv.at("exact_limits").value("max_bin_classes", s.solver.exact_limits.max_bin_classes);
      }
      s.solver.node_budget = sv.value("node_budget", s.solver.node_budget);
    }
    if (!(s.solver.util_cap > 0.0 && s.solver.util_cap <= 1.0)) {
      throw ValidationError("solver.util_cap must be in (0, 1]");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json profiles = nlohmann::json::array();
  for (const ProgramProfile& p : s.profiles) profiles.push_back(profile_to_json(p));
  nlohmann::json jobs = nlohmann::json::array();
  for (const StreamJob& job : s.jobs) jobs.push_back(job_to_json(job));
  nlohmann::json timeline = nlohmann::json::array();
  for (const TimelineEvent& e : s.timeline) timeline.push_back(event_to_json(e));
  nlohmann::json solver = {{"util_cap", s.solver.util_cap},
                           {"exact_limits",
                            {{"max_items", s.solver.exact_limits.max_items},
                             {"max_bin_classes", s.solver.exact_limits.max_bin_classes}}},
                           {"node_budget", s.solver.node_budget}};
  if (s.solver.grid) {
    solver["grid"] = {{"vcpu", s.solver.grid->vcpu},
                      {"mem_gib", s.solver.grid->mem_gib},
                      {"gpu", s.solver.grid->gpu},
                      {"gpu_mem_gib", s.solver.grid->gpu_mem_gib}};
  }
  return {{"name", s.name},
          {"catalog", catalog_to_json(s.catalog)},
          {"profiles", profiles},
          {"jobs", jobs},
          {"network",
           {{"base_rtt_ms", s.network.base_rtt_ms},
            {"ms_per_km", s.network.ms_per_km},
            {"rtt_budget_coeff", s.network.rtt_budget_coeff}}},
          {"timeline", timeline},
          {"horizon_s", s.horizon_s},
          {"solver", solver}};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  Scenario s = scenario_from_json(j, path.parent_path());
  if (s.name.empty()) s.name = path.stem().string();
  return s;
}

}  // namespace streamplace
