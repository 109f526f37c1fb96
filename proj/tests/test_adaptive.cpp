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

#include "streamplace/adaptive.hpp"
#include "streamplace/errors.hpp"
#include "streamplace/report_io.hpp"
#include "support.hpp"

using namespace streamplace;
using streamplace::testing::shipped;

namespace {

TimelineEvent set_fps(std::int64_t t, std::string id, double fps) {
  TimelineEvent e;
  e.t = t;
  e.kind = EventKind::SetFps;
  e.stream_id = std::move(id);
  e.fps = fps;
  return e;
}

TimelineEvent remove(std::int64_t t, std::string id) {
  TimelineEvent e;
  e.t = t;
  e.kind = EventKind::RemoveStream;
  e.stream_id = std::move(id);
  return e;
}

// The scenario as it stands after every event up to and including `t`, with
// the events folded into the job list.
Scenario state_at(const Scenario& s, std::int64_t t) {
  Scenario out = s;
  out.timeline.clear();
  for (const TimelineEvent& e : s.timeline) {
    if (e.t > t) continue;
    auto it = std::find_if(out.jobs.begin(), out.jobs.end(),
                           [&](const StreamJob& j) { return j.id == e.stream_id; });
    switch (e.kind) {
      case EventKind::AddStream:
        out.jobs.push_back(*e.job);
        break;
      case EventKind::RemoveStream:
        out.jobs.erase(it);
        break;
      case EventKind::SetFps:
        it->target_fps = e.fps;
        break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("no timeline: one epoch equal to the static solve") {
  const Scenario s = shipped("ten-cameras");
  REQUIRE(s.timeline.empty());
  for (StrategyKind k : {StrategyKind::NL, StrategyKind::ARMVAC, StrategyKind::GCL}) {
    const AdaptiveRun run = run_adaptive(s, k);
    REQUIRE(run.epochs.size() == 1);
    const StrategyReport fresh = run_strategy(s, k);
    CHECK(run.epochs[0].report.allocation == fresh.allocation);
    CHECK(run.epochs[0].migrations == 0);
    CHECK(run.epochs[0].duration_s == s.horizon_s);
    CHECK(run.cost_millis_seconds == fresh.total_cost.millis() * s.horizon_s);
    if (s.horizon_s == 3600) CHECK(run.cumulative_cost() == fresh.total_cost);
  }
}

TEST_CASE("mixed-fps epochs follow the timeline") {
  const Scenario s = shipped("mixed-fps");
  const AdaptiveRun run = run_adaptive(s, StrategyKind::GCL);
  REQUIRE(run.epochs.size() == 4);
  const std::int64_t starts[] = {0, 1800, 3600, 5400};
  std::int64_t total = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(run.epochs[i].t == starts[i]);
    total += run.epochs[i].duration_s;
    CHECK(check_report(state_at(s, starts[i]), run.epochs[i].report).empty());
  }
  CHECK(total == s.horizon_s);
  CHECK(run.epochs[2].report.per_stream.size() + run.epochs[2].report.infeasible_streams.size() == 9);
  CHECK(run.epochs[3].report.per_stream.size() + run.epochs[3].report.infeasible_streams.size() == 8);
}

TEST_CASE("zero penalty re-solves every epoch from scratch") {
  const Scenario s = shipped("mixed-fps");
  const AdaptiveRun run = run_adaptive(s, StrategyKind::GCL, Money{});
  std::int64_t acc = 0;
  for (const Epoch& e : run.epochs) {
    const AdaptiveRun fresh = run_adaptive(state_at(s, e.t), StrategyKind::GCL);
    CAPTURE(e.t);
    CHECK(e.report.allocation == fresh.epochs[0].report.allocation);
    acc += e.report.total_cost.millis() * e.duration_s;
  }
  CHECK(run.cost_millis_seconds == acc);
}

TEST_CASE("infinite penalty keeps every stream where it was") {
  const Scenario s = shipped("mixed-fps");
  const AdaptiveRun free = run_adaptive(s, StrategyKind::GCL);
  const AdaptiveRun sticky = run_adaptive(s, StrategyKind::GCL, kInfinitePenalty);
  REQUIRE(sticky.epochs.size() == free.epochs.size());
  for (const Epoch& e : sticky.epochs) {
    CAPTURE(e.t);
    CHECK(e.migrations == 0);
  }
  // Staying put can only cost as much or more in instance dollars.
  CHECK(sticky.cost_millis_seconds >= free.cost_millis_seconds);
  CHECK(sticky.epochs[0].report.allocation == free.epochs[0].report.allocation);
}

TEST_CASE("migrations count changed offers of surviving streams") {
  const Scenario s = shipped("mixed-fps");
  const AdaptiveRun run = run_adaptive(s, StrategyKind::GCL);
  for (std::size_t i = 1; i < run.epochs.size(); ++i) {
    std::map<std::string, std::string> before;
    for (const StreamPlacement& p : run.epochs[i - 1].report.per_stream) {
      before[p.stream_id] = p.instance_type + "@" + p.region;
    }
    int moved = 0;
    for (const StreamPlacement& p : run.epochs[i].report.per_stream) {
      auto it = before.find(p.stream_id);
      if (it != before.end() && it->second != p.instance_type + "@" + p.region) ++moved;
    }
    CHECK(run.epochs[i].migrations == moved);
  }
}

TEST_CASE("halving every stream's fps never raises the cost") {
  Scenario s = shipped("ten-cameras");
  for (const StreamJob& j : s.jobs) s.timeline.push_back(set_fps(1200, j.id, j.target_fps / 2));
  const AdaptiveRun run = run_adaptive(s, StrategyKind::GCL);
  REQUIRE(run.epochs.size() == 2);
  REQUIRE(run.epochs[0].report.proven_optimal);
  REQUIRE(run.epochs[1].report.proven_optimal);
  CHECK(run.epochs[1].report.total_cost <= run.epochs[0].report.total_cost);
  CHECK(run.epochs[1].report.infeasible_streams.size() <= run.epochs[0].report.infeasible_streams.size());
}

TEST_CASE("an event that changes nothing only splits the epoch") {
  const Scenario s = shipped("mixed-fps");
  Scenario split = s;
  const StreamJob& j = s.jobs.front();
  split.timeline.push_back(set_fps(900, j.id, j.target_fps));
  for (StrategyKind k : {StrategyKind::NL, StrategyKind::ARMVAC, StrategyKind::GCL}) {
    const AdaptiveRun a = run_adaptive(s, k);
    const AdaptiveRun b = run_adaptive(split, k);
    CHECK(b.epochs.size() == a.epochs.size() + 1);
    CHECK(b.cost_millis_seconds == a.cost_millis_seconds);
    CHECK(b.cumulative_cost() == a.cumulative_cost());
  }
}

TEST_CASE("events at t=0 apply before the first solve") {
  Scenario s = shipped("ten-cameras");
  const std::string gone = s.jobs.front().id;
  s.timeline.push_back(remove(0, gone));
  const AdaptiveRun run = run_adaptive(s, StrategyKind::NL);
  REQUIRE(run.epochs.size() == 1);
  for (const StreamPlacement& p : run.epochs[0].report.per_stream) CHECK(p.stream_id != gone);
}

TEST_CASE("bad event references") {
  const Scenario base = shipped("mixed-fps");
  SUBCASE("remove unknown") {
    Scenario s = base;
    s.timeline.push_back(remove(100, "nope"));
    CHECK_THROWS_AS(run_adaptive(s, StrategyKind::NL), EventReferenceError);
  }
  SUBCASE("set_fps on a removed stream") {
    Scenario s = base;
    s.timeline.push_back(remove(100, base.jobs.front().id));
    s.timeline.push_back(set_fps(200, base.jobs.front().id, 2.0));
    CHECK_THROWS_AS(run_adaptive(s, StrategyKind::NL), EventReferenceError);
  }
  SUBCASE("non-positive fps") {
    Scenario s = base;
    s.timeline.push_back(set_fps(100, base.jobs.front().id, 0.0));
    CHECK_THROWS_AS(run_adaptive(s, StrategyKind::NL), EventReferenceError);
  }
  SUBCASE("duplicate add") {
    Scenario s = base;
    TimelineEvent e;
    e.t = 100;
    e.kind = EventKind::AddStream;
    e.job = base.jobs.front();
    s.timeline.push_back(e);
    CHECK_THROWS_AS(run_adaptive(s, StrategyKind::NL), EventReferenceError);
  }
}

TEST_CASE("adaptive CSV has one row per epoch") {
  const AdaptiveRun run = run_adaptive(shipped("mixed-fps"), StrategyKind::ARMVAC);
  const std::string csv = adaptive_csv(run);
  CHECK(csv.rfind(std::string(kAdaptiveHeader) + "\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(run.epochs.size() + 1));
  CHECK(csv.find("\n1800,armvac,") != std::string::npos);
}
