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

#include <array>

#include "streamplace/errors.hpp"
#include "streamplace/scenario_gen.hpp"
#include "streamplace/strategies.hpp"
#include "support.hpp"

using namespace streamplace;
using streamplace::testing::data_path;
using streamplace::testing::shipped;

namespace {

constexpr std::array kAll{StrategyKind::NL,  StrategyKind::ARMVAC, StrategyKind::GCL,
                          StrategyKind::ST1, StrategyKind::ST2,    StrategyKind::ST3};

const char* const kShipped[] = {"sidebar-73",  "cameras-in-cloud-8", "six-continents", "three-clusters",
                                "ten-cameras", "mixed-fps",          "world-20"};

Money usd(double x) { return Money::from_usd(x); }

// Six VGG16 cameras next to the Virginia region.
Scenario virginia_vgg(double fps) {
  Scenario s = random_world_scenario(load_catalog(data_path("catalogs/table1.json")), 1);
  s.jobs.clear();
  for (int i = 0; i < 6; ++i) {
    StreamJob j;
    j.id = "v" + std::to_string(i);
    j.camera_lat = 39.0;
    j.camera_lon = -77.5;
    j.target_fps = fps;
    j.frame_width = 640;
    j.frame_height = 360;
    j.program = "VGG16";
    j.allowed_modes = {ExecMode::Cpu, ExecMode::Gpu};
    s.jobs.push_back(j);
  }
  return s;
}

int gpu_streams(const StrategyReport& r) {
  int n = 0;
  for (const StreamPlacement& p : r.per_stream) n += p.mode == ExecMode::Gpu ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("strategy names") {
  for (StrategyKind k : kAll) CHECK(strategy_from_string(to_string(k)) == k);
  CHECK(strategy_from_string("GcL") == StrategyKind::GCL);
  CHECK_THROWS_AS(strategy_from_string("cheapest"), Error);
  CHECK(parse_strategy_list("nl,armvac,gcl") ==
        std::vector<StrategyKind>{StrategyKind::NL, StrategyKind::ARMVAC, StrategyKind::GCL});
}

TEST_CASE("every report on shipped scenarios passes the independent check") {
  for (const char* name : kShipped) {
    const Scenario s = shipped(name);
    const auto reports = run_strategies(s, kAll);
    for (const StrategyReport& r : reports) {
      CAPTURE(name);
      CAPTURE(r.strategy);
      CHECK(check_report(s, r).empty());
      CHECK(max_utilization(s, r) <= s.solver.util_cap + 1e-9);
      CHECK(r.per_stream.size() + r.infeasible_streams.size() == s.jobs.size());
    }
  }
}

TEST_CASE("cost ordering between strategies") {
  auto check_chain = [](const Scenario& s) {
    const auto r = run_strategies(s, kAll);
    const auto& nl = r[0];
    const auto& armvac = r[1];
    const auto& gcl = r[2];
    const auto& st1 = r[3];
    const auto& st2 = r[4];
    const auto& st3 = r[5];
    CAPTURE(s.name);
    if (nl.fully_placed() && gcl.fully_placed()) CHECK(gcl.total_cost <= nl.total_cost);
    if (armvac.fully_placed() && gcl.fully_placed()) CHECK(gcl.total_cost <= armvac.total_cost);
    if (st1.fully_placed() && st3.fully_placed()) CHECK(st3.total_cost <= st1.total_cost);
    if (st2.fully_placed() && st3.fully_placed()) CHECK(st3.total_cost <= st2.total_cost);
    CHECK(st3.total_cost == gcl.total_cost);
    CHECK(st3.infeasible_streams.size() <= st1.infeasible_streams.size());
    CHECK(st3.infeasible_streams.size() <= st2.infeasible_streams.size());
  };
  for (const char* name : kShipped) check_chain(shipped(name));
  const Catalog world = load_catalog(data_path("catalogs/world.json"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) check_chain(random_world_scenario(world, seed));
}

TEST_CASE("three clusters consolidate in the cheapest region at low fps") {
  const Scenario s = shipped("three-clusters");
  const StrategyReport armvac = allocate_armvac(s);
  CHECK(armvac.total_cost == usd(1.152));
  REQUIRE(armvac.instances_opened() == 3);
  for (const OpenedBin& b : armvac.allocation.bins) CHECK(b.class_id == "D8v3@virginia");
  const StrategyReport gcl = allocate_gcl(s);
  CHECK(gcl.total_cost == usd(1.152));
  CHECK(gcl.proven_optimal);
  const StrategyReport nl = allocate_nl(s);
  CHECK(nl.total_cost == usd(2.26));
}

TEST_CASE("six continents: nearest location opens one instance per region") {
  const Scenario s = shipped("six-continents");
  const StrategyReport nl = allocate_nl(s);
  CHECK(nl.instances_opened() == 6);
  std::set<std::string> regions;
  for (const StreamPlacement& p : nl.per_stream) regions.insert(p.region);
  CHECK(regions.size() == 6);
  CHECK(allocate_gcl(s).total_cost <= nl.total_cost);
}

TEST_CASE("cameras-in-cloud-8 strategies") {
  const Scenario s = shipped("cameras-in-cloud-8");
  CHECK(allocate_gcl(s).total_cost == usd(3.0));
  CHECK(allocate_gcl(s).instances_opened() == 1);
  CHECK(allocate_nl(s).total_cost == usd(4.0));
  CHECK(allocate_armvac(s).total_cost == usd(4.0));
}

TEST_CASE("low fps favours CPU instances") {
  const Scenario s = virginia_vgg(0.5);
  const StrategyReport st1 = allocate_mode_strategy(s, StrategyKind::ST1);
  const StrategyReport st2 = allocate_mode_strategy(s, StrategyKind::ST2);
  const StrategyReport st3 = allocate_mode_strategy(s, StrategyKind::ST3);
  CHECK(st1.total_cost == usd(0.384));
  CHECK(st2.total_cost == usd(2.28));
  CHECK(st3.total_cost == st1.total_cost);
  CHECK(gpu_streams(st3) == 0);
}

TEST_CASE("high fps favours GPU instances") {
  const Scenario s = virginia_vgg(15.0);
  const StrategyReport st1 = allocate_mode_strategy(s, StrategyKind::ST1);
  const StrategyReport st3 = allocate_mode_strategy(s, StrategyKind::ST3);
  CHECK(st1.total_cost == usd(4.773));  // 3 x c4.8xlarge
  CHECK(st3.total_cost == usd(4.56));   // 2 x g3.8xlarge
  CHECK(st3.proven_optimal);
  CHECK(gpu_streams(st3) >= 1);
  for (const OpenedBin& b : st3.allocation.bins) CHECK(b.class_id == "g3.8xlarge@virginia");
  CHECK(check_report(s, st3).empty());
}

TEST_CASE("mode strategy rejects baseline kinds") {
  const Scenario s = shipped("sidebar-73");
  CHECK_THROWS_AS(allocate_mode_strategy(s, StrategyKind::NL), Error);
  CHECK_THROWS_AS(gcl_packing_model(s, StrategyKind::ARMVAC), Error);
}

TEST_CASE("raising fps never lowers the optimal cost") {
  const Scenario base = shipped("ten-cameras");
  Money prev;
  std::size_t prev_infeasible = 0;
  for (double fps : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const StrategyReport r = allocate_gcl(with_uniform_fps(base, fps));
    CAPTURE(fps);
    REQUIRE(r.proven_optimal);
    if (r.infeasible_streams.size() == prev_infeasible) CHECK(r.total_cost >= prev);
    prev = r.total_cost;
    prev_infeasible = r.infeasible_streams.size();
  }
}

TEST_CASE("fps sweep: parallel equals serial and single values equal solve") {
  const Scenario s = shipped("ten-cameras");
  const std::vector<double> fps{0.5, 2.0, 8.0};
  const std::array kinds{StrategyKind::NL, StrategyKind::ARMVAC, StrategyKind::GCL};
  const auto par = fps_sweep(s, fps, kinds);
  const auto ser = fps_sweep_serial(s, fps, kinds);
  REQUIRE(par.size() == 9);
  REQUIRE(ser.size() == 9);
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].fps == ser[i].fps);
    CHECK(par[i].report.allocation == ser[i].report.allocation);
    CHECK(par[i].report.strategy == std::string(to_string(kinds[i % 3])));
  }
  const Scenario at2 = with_uniform_fps(s, 2.0);
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    CHECK(par[3 + k].report.allocation == run_strategy(at2, kinds[k]).allocation);
  }
}

TEST_CASE("with_uniform_fps rewrites jobs and timeline additions") {
  const Scenario s = with_uniform_fps(shipped("mixed-fps"), 3.0);
  for (const StreamJob& j : s.jobs) CHECK(j.target_fps == 3.0);
  for (const TimelineEvent& e : s.timeline) {
    if (e.kind == EventKind::AddStream) CHECK(e.job->target_fps == 3.0);
  }
}

TEST_CASE("strategies are deterministic") {
  const Scenario s = shipped("world-20");
  for (StrategyKind k : {StrategyKind::NL, StrategyKind::ARMVAC}) {
    CHECK(run_strategy(s, k).allocation == run_strategy(s, k).allocation);
  }
}

TEST_CASE("unreachable streams are listed as infeasible") {
  // At 25 fps the six-continents budget is 40 ms; a camera in mid-Pacific is
  // more than 3500 km from every region.
  Scenario s = shipped("six-continents");
  StreamJob far = s.jobs.front();
  far.id = "zz-pacific";
  far.camera_lat = -30.0;
  far.camera_lon = -140.0;
  s.jobs.push_back(far);
  for (StrategyKind k : kAll) {
    const StrategyReport r = run_strategy(s, k);
    CAPTURE(r.strategy);
    CHECK(check_report(s, r).empty());
    if (k == StrategyKind::ST2) {
      // The profile has no GPU mode, so nothing is placeable.
      CHECK(r.infeasible_streams.size() == s.jobs.size());
      continue;
    }
    CHECK(r.infeasible_streams == std::vector<std::string>{"zz-pacific"});
  }
}
