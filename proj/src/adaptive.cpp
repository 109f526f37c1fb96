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

#include "streamplace/adaptive.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "streamplace/errors.hpp"

namespace streamplace {

Money AdaptiveRun::cumulative_cost() const {
  return Money::from_millis((cost_millis_seconds + 1800) / 3600);
}

namespace {

void apply(std::vector<StreamJob>& jobs, const TimelineEvent& e, const Scenario& s) {
  auto find = [&](const std::string& id) {
    return std::find_if(jobs.begin(), jobs.end(), [&](const StreamJob& j) { return j.id == id; });
  };
  switch (e.kind) {
    case EventKind::AddStream: {
      if (!e.job) throw EventReferenceError(fmt::format("t={}: add_stream without a job", e.t));
      if (find(e.job->id) != jobs.end()) {
        throw EventReferenceError(fmt::format("t={}: stream '{}' already exists", e.t, e.job->id));
      }
      validate_job(*e.job, s.profiles, fmt::format("timeline t={}", e.t));
      jobs.push_back(*e.job);
      break;
    }
    case EventKind::RemoveStream: {
      auto it = find(e.stream_id);
      if (it == jobs.end()) {
        throw EventReferenceError(fmt::format("t={}: unknown stream '{}'", e.t, e.stream_id));
      }
      jobs.erase(it);
      break;
    }
    case EventKind::SetFps: {
      auto it = find(e.stream_id);
      if (it == jobs.end()) {
        throw EventReferenceError(fmt::format("t={}: unknown stream '{}'", e.t, e.stream_id));
      }
      if (!(e.fps > 0.0)) throw EventReferenceError(fmt::format("t={}: fps must be > 0", e.t));
      it->target_fps = e.fps;
      break;
    }
  }
}

bool gcl_family(StrategyKind k) {
  return k != StrategyKind::NL && k != StrategyKind::ARMVAC;
}

std::map<std::string, std::string> offers_of(const StrategyReport& r) {
  std::map<std::string, std::string> out;
  for (const StreamPlacement& p : r.per_stream) out[p.stream_id] = p.instance_type + "@" + p.region;
  return out;
}

}  // namespace

AdaptiveRun run_adaptive(const Scenario& s, StrategyKind kind, Money migration_penalty) {
  AdaptiveRun run;
  run.strategy = std::string(to_string(kind));

  std::vector<std::int64_t> times{0};
  for (const TimelineEvent& e : s.timeline) {
    if (e.t != times.back()) times.push_back(e.t);
  }

  Scenario current = s;
  current.timeline.clear();
  std::size_t next_event = 0;
  std::map<std::string, std::string> previous;
  for (std::size_t k = 0; k < times.size(); ++k) {
    while (next_event < s.timeline.size() && s.timeline[next_event].t == times[k]) {
      apply(current.jobs, s.timeline[next_event++], s);
    }
    GclOptions opts;
    if (k > 0 && gcl_family(kind)) {
      opts.migration_penalty = migration_penalty;
      for (const StreamJob& j : current.jobs) {
        auto it = previous.find(j.id);
        if (it != previous.end()) opts.previous_offer.insert(*it);
      }
    }
    Epoch ep;
    ep.t = times[k];
    ep.duration_s = (k + 1 < times.size() ? times[k + 1] : std::max(s.horizon_s, times[k])) - times[k];
    ep.report = run_strategy(current, kind, opts);
    const auto now = offers_of(ep.report);
    if (k > 0) {
      for (const auto& [id, offer] : now) {
        auto it = previous.find(id);
        if (it != previous.end() && it->second != offer) ++ep.migrations;
      }
    }
    previous = now;
    run.cost_millis_seconds += ep.report.total_cost.millis() * ep.duration_s;
    run.epochs.push_back(std::move(ep));
  }
  return run;
}

std::string adaptive_csv(const AdaptiveRun& run) {
  std::string out(kAdaptiveHeader);
  out += '\n';
  for (const Epoch& e : run.epochs) {
    out += fmt::format("{},{},{},{},{}\n", e.t, run.strategy, format_usd(e.report.total_cost),
                       e.migrations, e.report.infeasible_streams.size());
  }
  return out;
}

}  // namespace streamplace
