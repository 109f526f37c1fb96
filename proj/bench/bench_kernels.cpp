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

// Serial references against their OpenMP counterparts.

#include <algorithm>
#include <array>
#include <random>

#include <benchmark/benchmark.h>

#include "streamplace/errors.hpp"
#include "streamplace/netmodel.hpp"
#include "streamplace/scenario.hpp"
#include "streamplace/scenario_gen.hpp"
#include "streamplace/strategies.hpp"

namespace sp = streamplace;

namespace {

const sp::Catalog& world() {
  static const sp::Catalog c = sp::load_catalog(std::string(STREAMPLACE_DATA_DIR) + "/catalogs/world.json");
  return c;
}

std::vector<sp::StreamJob> random_jobs(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lat(-60, 70), lon(-180, 180);
  std::vector<sp::StreamJob> jobs(n);
  for (auto& j : jobs) {
    j.camera_lat = lat(rng);
    j.camera_lon = lon(rng);
  }
  return jobs;
}

template <auto Fn>
void BM_RttMatrix(benchmark::State& state) {
  const auto jobs = random_jobs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(jobs, world().regions(), sp::NetworkParams{}));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(world().regions().size()));
}
BENCHMARK(BM_RttMatrix<sp::rtt_matrix_serial>)->Name("rtt_matrix/serial")->Arg(1000)->Arg(100000);
BENCHMARK(BM_RttMatrix<sp::rtt_matrix>)->Name("rtt_matrix/omp")->Arg(1000)->Arg(100000);

template <auto Fn>
void BM_Oracle(benchmark::State& state) {
  const sp::Scenario s = sp::random_world_scenario(world(), 3, {.streams = static_cast<int>(state.range(0))});
  sp::PackingModel m = sp::gcl_packing_model(s);
  if (m.classes.size() > 4) m.classes.resize(4);  // stay within the oracle caps
  for (sp::PackItem& it : m.items) {
    for (sp::PackMode& mode : it.modes) {
      std::erase_if(mode.allowed_bin_classes, [&](const std::string& id) {
        return std::none_of(m.classes.begin(), m.classes.end(), [&](const sp::BinClass& c) { return c.class_id == id; });
      });
    }
    std::erase_if(it.modes, [](const sp::PackMode& mode) { return mode.allowed_bin_classes.empty(); });
  }
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(Fn(m.items, m.classes, sp::OracleCaps{}));
    } catch (const sp::Error&) {
      // An instance without a placement still measures a full enumeration.
    }
  }
}
BENCHMARK(BM_Oracle<sp::brute_force_oracle_serial>)->Name("oracle/serial")->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle<sp::brute_force_oracle>)->Name("oracle/omp")->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

template <bool Parallel>
void BM_Sweep(benchmark::State& state) {
  const sp::Scenario s = sp::random_world_scenario(world(), 5, {.streams = 8});
  const std::array fps{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  const std::array kinds{sp::StrategyKind::NL, sp::StrategyKind::ARMVAC, sp::StrategyKind::GCL};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? sp::fps_sweep(s, fps, kinds) : sp::fps_sweep_serial(s, fps, kinds));
  }
}
BENCHMARK(BM_Sweep<false>)->Name("fps_sweep/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<true>)->Name("fps_sweep/omp")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
