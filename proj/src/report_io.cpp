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

#include "streamplace/report_io.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "streamplace/errors.hpp"

namespace streamplace {

namespace {

std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{}", v); }

std::string placements_csv(const Scenario& s, const StrategyReport& r) {
  struct Row {
    std::string id;
    std::string line;
  };
  std::vector<Row> rows;
  for (const StreamPlacement& p : r.per_stream) {
    rows.push_back({p.stream_id,
                    fmt::format("{},{},{},{},{},{},{:.3f},{}", csv_field(p.stream_id),
                                csv_field(r.strategy), csv_field(p.region),
                                csv_field(p.instance_type), p.instance_index, to_string(p.mode),
                                p.rtt_ms, format_number(p.fps))});
  }
  for (const std::string& id : r.infeasible_streams) {
    double fps = 0.0;
    for (const StreamJob& j : s.jobs) {
      if (j.id == id) fps = j.target_fps;
    }
    rows.push_back({id, fmt::format("{},{},,,-1,infeasible,,{}", csv_field(id),
                                    csv_field(r.strategy), format_number(fps))});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });
  std::string out(kPlacementsHeader);
  out += '\n';
  for (const Row& row : rows) out += row.line + '\n';
  return out;
}

std::string summary_csv(std::span<const StrategyReport> reports) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const StrategyReport& r : reports) {
    out += fmt::format("{},{},{},{}\n", csv_field(r.strategy), format_usd(r.total_cost),
                       r.instances_opened(), r.infeasible_streams.size());
  }
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const SweepRow& row : rows) {
    out += fmt::format("{},{},{},{}\n", format_number(row.fps), csv_field(row.report.strategy),
                       format_usd(row.report.total_cost), row.report.infeasible_streams.size());
  }
  return out;
}

std::string summary_table(std::span<const StrategyReport> reports) {
  std::string out = fmt::format("{:<8} {:>14} {:>10} {:>11} {:>8}\n", "strategy", "cost_usd/hr",
                                "instances", "infeasible", "optimal");
  for (const StrategyReport& r : reports) {
    const bool searched = r.search_nodes > 0 || r.proven_optimal;
    out += fmt::format("{:<8} {:>14} {:>10} {:>11} {:>8}\n", r.strategy, format_usd(r.total_cost),
                       r.instances_opened(), r.infeasible_streams.size(),
                       searched ? (r.proven_optimal ? "yes" : "no") : "-");
  }
  return out;
}

std::string sweep_table(std::span<const SweepRow> rows) {
  std::string out =
      fmt::format("{:>8} {:<8} {:>14} {:>11}\n", "fps", "strategy", "cost_usd/hr", "infeasible");
  for (const SweepRow& row : rows) {
    out += fmt::format("{:>8} {:<8} {:>14} {:>11}\n", format_number(row.fps), row.report.strategy,
                       format_usd(row.report.total_cost), row.report.infeasible_streams.size());
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace streamplace
