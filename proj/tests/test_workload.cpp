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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "streamplace/errors.hpp"
#include "streamplace/scenario.hpp"
#include "streamplace/workload.hpp"
#include "support.hpp"

using namespace streamplace;
using streamplace::testing::shipped;

namespace {

ProgramProfile accel16() { return {"accel16", 16.0, 0.5, 1.0, 2.0, 1.0, true}; }

StreamJob job_1mp(double fps) {
  StreamJob j;
  j.id = "j";
  j.target_fps = fps;
  j.frame_width = 1000;
  j.frame_height = 1000;
  j.program = "accel16";
  j.allowed_modes = {ExecMode::Cpu, ExecMode::Gpu};
  return j;
}

nlohmann::json base_scenario() {
  return nlohmann::json::parse(R"({
    "catalog": {"regions": [{"id": "r", "display_name": "R", "lat": 0, "lon": 0}],
                "offers": [{"type_name": "t", "region": "r", "price_per_hour": 1,
                            "capacity": {"vcpu": 8, "mem_gib": 8, "gpu": 0, "gpu_mem_gib": 0}}]},
    "profiles": [{"name": "cpu_only", "cpu_sec_per_megapixel_cpu_mode": 1,
                  "cpu_sec_per_megapixel_gpu_mode": 0, "gpu_sec_per_megapixel": 0,
                  "mem_gib_base": 1, "gpu_mem_gib_base": 0, "gpu_capable": false}],
    "jobs": [{"id": "a", "lat": 0, "lon": 0, "fps": 1, "width": 640, "height": 360,
              "program": "cpu_only"}]
  })");
}

}  // namespace

TEST_CASE("16x profile at 1 MP and 8 fps") {
  const StreamJob j = job_1mp(8.0);
  const DemandMode cpu = demand_for(j, accel16(), ExecMode::Cpu);
  const DemandMode gpu = demand_for(j, accel16(), ExecMode::Gpu);
  CHECK(cpu.demand.vcpu == doctest::Approx(128.0));
  CHECK(cpu.demand.gpu == 0.0);
  CHECK(cpu.demand.gpu_mem_gib == 0.0);
  CHECK(cpu.demand.mem_gib == 2.0);
  CHECK(gpu.demand.gpu == doctest::Approx(8.0));
  CHECK(gpu.demand.vcpu == doctest::Approx(4.0));  // host share 0.5 s/MP
  CHECK(gpu.demand.gpu_mem_gib == 1.0);
  CHECK(accel16().speedup() == 16.0);
}

TEST_CASE("near-zero fps leaves only the memory bases") {
  const StreamJob j = job_1mp(1e-9);
  const DemandMode cpu = demand_for(j, accel16(), ExecMode::Cpu);
  const DemandMode gpu = demand_for(j, accel16(), ExecMode::Gpu);
  CHECK(cpu.demand.vcpu < 1e-7);
  CHECK(gpu.demand.gpu < 1e-7);
  CHECK(cpu.demand.mem_gib == 2.0);
  CHECK(gpu.demand.gpu_mem_gib == 1.0);
}

TEST_CASE("demand is linear in fps and frame area") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> fps(0.1, 30.0);
  for (int t = 0; t < 200; ++t) {
    StreamJob j = job_1mp(fps(rng));
    j.frame_width = 320 + static_cast<int>(rng() % 1600);
    j.frame_height = 240 + static_cast<int>(rng() % 900);
    StreamJob twice = j;
    twice.target_fps = 2.0 * j.target_fps;
    for (ExecMode m : {ExecMode::Cpu, ExecMode::Gpu}) {
      const auto a = demand_for(j, accel16(), m).demand;
      const auto b = demand_for(twice, accel16(), m).demand;
      CHECK(b.vcpu == 2.0 * a.vcpu);
      CHECK(b.gpu == 2.0 * a.gpu);
      CHECK(b.mem_gib == a.mem_gib);
      CHECK(b.gpu_mem_gib == a.gpu_mem_gib);
      for (std::size_t d = 0; d < kResourceDims; ++d) CHECK(a[d] >= 0.0);
    }
    StreamJob wide = j;
    wide.frame_width = 2 * j.frame_width;
    CHECK(demand_for(wide, accel16(), ExecMode::Cpu).demand.vcpu ==
          doctest::Approx(2.0 * demand_for(j, accel16(), ExecMode::Cpu).demand.vcpu));
    // GPU-mode device share equals CPU-mode vCPU demand over the speedup.
    CHECK(demand_for(j, accel16(), ExecMode::Gpu).demand.gpu ==
          doctest::Approx(demand_for(j, accel16(), ExecMode::Cpu).demand.vcpu / accel16().speedup()));
  }
}

TEST_CASE("content multiplier scales compute only") {
  StreamJob j = job_1mp(2.0);
  j.content_multiplier = 1.5;
  const auto d = demand_for(j, accel16(), ExecMode::Cpu).demand;
  CHECK(d.vcpu == doctest::Approx(48.0));
  CHECK(d.mem_gib == 2.0);
}

TEST_CASE("demand_for errors") {
  StreamJob j = job_1mp(1.0);
  j.allowed_modes = {ExecMode::Cpu};
  CHECK_THROWS_AS(demand_for(j, accel16(), ExecMode::Gpu), ModeNotAllowed);
  ProgramProfile other = accel16();
  other.name = "other";
  CHECK_THROWS_AS(demand_for(j, other, ExecMode::Cpu), UnknownProfile);
}

TEST_CASE("exec mode names") {
  CHECK(exec_mode_from_string("cpu") == ExecMode::Cpu);
  CHECK(exec_mode_from_string("GPU") == ExecMode::Gpu);
  CHECK(to_string(ExecMode::Gpu) == "GPU");
  CHECK_THROWS_AS(exec_mode_from_string("tpu"), ParseError);
}

TEST_CASE("shipped ten-camera scenario") {
  const Scenario s = shipped("ten-cameras");
  REQUIRE(s.jobs.size() == 10);
  double lo = 1e9, hi = 0;
  for (const StreamJob& j : s.jobs) {
    lo = std::min(lo, j.target_fps);
    hi = std::max(hi, j.target_fps);
  }
  CHECK(lo == 0.2);
  CHECK(hi == 8.0);
  CHECK(s.name == "ten-cameras");
  CHECK(s.catalog.offers().size() == 13);
}

TEST_CASE("scenario validation") {
  SUBCASE("minimal scenario loads with defaults") {
    const Scenario s = scenario_from_json(base_scenario(), ".");
    REQUIRE(s.jobs.size() == 1);
    CHECK(s.jobs[0].allowed_modes == std::vector<ExecMode>{ExecMode::Cpu});
    CHECK(s.network.base_rtt_ms == 5.0);
    CHECK(s.network.ms_per_km == 0.01);
    CHECK(s.network.rtt_budget_coeff == 1.0);
    CHECK(s.solver.util_cap == 0.9);
  }
  SUBCASE("unknown program") {
    auto j = base_scenario();
    j["jobs"][0]["program"] = "nope";
    CHECK_THROWS_WITH_AS(scenario_from_json(j, "."), doctest::Contains("jobs[0]"), ValidationError);
  }
  SUBCASE("gpu mode on a cpu-only profile") {
    auto j = base_scenario();
    j["jobs"][0]["modes"] = {"GPU"};
    CHECK_THROWS_AS(scenario_from_json(j, "."), ValidationError);
  }
  SUBCASE("non-positive fps") {
    auto j = base_scenario();
    j["jobs"][0]["fps"] = 0;
    CHECK_THROWS_AS(scenario_from_json(j, "."), ValidationError);
  }
  SUBCASE("duplicate job id") {
    auto j = base_scenario();
    j["jobs"].push_back(j["jobs"][0]);
    CHECK_THROWS_AS(scenario_from_json(j, "."), ValidationError);
  }
  SUBCASE("unsorted timeline") {
    auto j = base_scenario();
    j["timeline"] = nlohmann::json::parse(
        R"([{"t": 10, "kind": "set_fps", "stream_id": "a", "fps": 2},
            {"t": 5, "kind": "set_fps", "stream_id": "a", "fps": 3}])");
    CHECK_THROWS_AS(scenario_from_json(j, "."), ValidationError);
  }
  SUBCASE("fractional event time") {
    auto j = base_scenario();
    j["timeline"] = nlohmann::json::parse(R"([{"t": 1.5, "kind": "remove_stream", "stream_id": "a"}])");
    CHECK_THROWS_AS(scenario_from_json(j, "."), ParseError);
  }
  SUBCASE("bad network") {
    auto j = base_scenario();
    j["network"] = {{"ms_per_km", 0}};
    CHECK_THROWS_AS(scenario_from_json(j, "."), ValidationError);
  }
  SUBCASE("wrong type is a parse error") {
    auto j = base_scenario();
    j["jobs"][0]["fps"] = "fast";
    CHECK_THROWS_AS(scenario_from_json(j, "."), ParseError);
  }
}

TEST_CASE("scenario JSON round trip") {
  for (const char* name : {"ten-cameras", "mixed-fps", "sidebar-73", "world-20"}) {
    const Scenario s = shipped(name);
    const Scenario back = scenario_from_json(scenario_to_json(s), ".");
    CHECK(scenario_to_json(back) == scenario_to_json(s));
    CHECK(back.catalog == s.catalog);
    CHECK(back.jobs.size() == s.jobs.size());
  }
}
