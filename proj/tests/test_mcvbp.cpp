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

#include <optional>

#include "streamplace/errors.hpp"
#include "streamplace/mcvbp.hpp"
#include "streamplace/strategies.hpp"
#include "support.hpp"

using namespace streamplace;
using streamplace::testing::random_feasible_instance;
using streamplace::testing::random_pack_instance;
using streamplace::testing::shipped;

namespace {

PackItem item(std::string id, IntVector demand, std::vector<std::string> classes) {
  return PackItem{std::move(id), {PackMode{"cpu", std::move(demand), std::move(classes), {}}}};
}

BinClass bin(std::string id, IntVector cap, std::int64_t millis, std::optional<int> max = std::nullopt) {
  return BinClass{std::move(id), std::move(cap), Money::from_millis(millis), max};
}

// Outcome of one solver: an allocation or the fact that it threw Infeasible.
std::optional<Allocation> try_solve(auto&& f) {
  try {
    return f();
  } catch (const Infeasible&) {
    return std::nullopt;
  }
}

}  // namespace

TEST_CASE("cameras-in-cloud-8 packs into one large instance") {
  const PackingModel m = gcl_packing_model(shipped("cameras-in-cloud-8"));
  REQUIRE(m.items.size() == 8);
  const Allocation a = solve_mcvbp_exact(m.items, m.classes);
  CHECK(a.total_cost == Money::from_millis(3000));
  CHECK(a.bins.size() == 1);
  CHECK(verify_allocation(m.items, m.classes, a).empty());
  CHECK(brute_force_oracle(m.items, m.classes) == a);
}

TEST_CASE("single item takes the cheapest class that fits") {
  const std::vector<PackItem> items{item("x", {5, 5}, {"a", "b", "c"})};
  const std::vector<BinClass> classes{bin("a", {4, 9}, 100), bin("b", {6, 6}, 300), bin("c", {9, 9}, 200)};
  const Allocation a = solve_mcvbp_exact(items, classes);
  REQUIRE(a.bins.size() == 1);
  CHECK(a.bins[0].class_id == "c");
  CHECK(a.total_cost == Money::from_millis(200));
  CHECK(a.placements.at("x") == Placement{"cpu", 0});
}

TEST_CASE("item that fits nowhere is reported") {
  const std::vector<PackItem> items{item("a", {1, 1}, {"k"}), item("z", {5, 1}, {"k"})};
  const std::vector<BinClass> classes{bin("k", {4, 4}, 100)};
  try {
    solve_mcvbp_exact(items, classes);
    FAIL("expected Infeasible");
  } catch (const Infeasible& e) {
    CHECK(e.item() == "z");
  }
  CHECK_THROWS_AS(solve_mcvbp_ffd(items, classes), Infeasible);
  CHECK_THROWS_AS(brute_force_oracle(items, classes), Infeasible);
}

TEST_CASE("class counts can make an instance infeasible") {
  const std::vector<PackItem> items{item("a", {3}, {"k"}), item("b", {3}, {"k"})};
  const std::vector<BinClass> classes{bin("k", {4}, 100, 1)};
  CHECK_THROWS_AS(solve_mcvbp_exact(items, classes), Infeasible);
  CHECK_THROWS_AS(brute_force_oracle(items, classes), Infeasible);
}

TEST_CASE("first-fit decreasing on the truck items") {
  const Scenario s = shipped("sidebar-73");
  const PackingModel m = gcl_packing_model(s);
  const Allocation ffd = solve_mcvbp_ffd(m.items, m.classes);
  CHECK(ffd.bins.size() == 2);
  CHECK(ffd.total_cost == Money::from_millis(2000));
  CHECK(verify_allocation(m.items, m.classes, ffd).empty());
  CHECK(solve_mcvbp_exact(m.items, m.classes).total_cost == Money::from_millis(2000));
}

TEST_CASE("exact solver matches the brute-force oracle") {
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    const auto inst = random_pack_instance(seed);
    CAPTURE(seed);
    const auto oracle = try_solve([&] { return brute_force_oracle(inst.items, inst.classes); });
    const auto exact = try_solve([&] { return solve_mcvbp_exact(inst.items, inst.classes); });
    REQUIRE(oracle.has_value() == exact.has_value());
    if (!oracle) continue;
    ++solved;
    CHECK(exact->objective() == oracle->objective());
    CHECK(*exact == *oracle);
    CHECK(verify_allocation(inst.items, inst.classes, *exact).empty());
    const auto ffd = try_solve([&] { return solve_mcvbp_ffd(inst.items, inst.classes); });
    if (ffd) {
      CHECK(verify_allocation(inst.items, inst.classes, *ffd).empty());
      CHECK(ffd->objective() >= exact->objective());
    }
  }
  CHECK(solved >= 200);
}

TEST_CASE("search with a node budget stays feasible and bounded") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = random_feasible_instance(seed, 8);
    const auto exact = try_solve([&] { return solve_mcvbp_exact(inst.items, inst.classes); });
    if (!exact) continue;
    CAPTURE(seed);
    SearchOptions opt;
    opt.node_budget = 50;
    const SearchResult r = solve_mcvbp_search(inst.items, inst.classes, opt);
    CHECK(verify_allocation(inst.items, inst.classes, r.allocation).empty());
    CHECK(r.lower_bound <= exact->objective());
    CHECK(r.allocation.objective() >= exact->objective());
    if (r.proven_optimal) CHECK(r.allocation == *exact);
  }
}

TEST_CASE("scaling prices scales the optimum and keeps the allocation") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto inst = random_feasible_instance(seed);
    const auto base = try_solve([&] { return solve_mcvbp_exact(inst.items, inst.classes); });
    if (!base) continue;
    for (BinClass& c : inst.classes) c.unit_cost = c.unit_cost * 3;
    for (PackItem& it : inst.items) {
      for (PackMode& m : it.modes) m.extra_cost = m.extra_cost * 3;
    }
    const Allocation scaled = solve_mcvbp_exact(inst.items, inst.classes);
    CAPTURE(seed);
    CHECK(scaled.objective() == base->objective() * 3);
    CHECK(allocation_key(scaled) == allocation_key(*base));
  }
}

TEST_CASE("adding a mode never raises the optimum") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto inst = random_feasible_instance(seed);
    const auto base = try_solve([&] { return solve_mcvbp_exact(inst.items, inst.classes); });
    if (!base) continue;
    PackMode extra{"alt", IntVector(inst.classes[0].capacity.size(), 1), {inst.classes.back().class_id}, {}};
    inst.items.front().modes.push_back(extra);
    const Allocation more = solve_mcvbp_exact(inst.items, inst.classes);
    CAPTURE(seed);
    CHECK(more.objective() <= base->objective());
  }
}

TEST_CASE("limits are enforced after dominance") {
  std::vector<PackItem> items;
  for (int i = 0; i < 13; ++i) items.push_back(item("i" + std::to_string(100 + i), {1}, {"k"}));
  const std::vector<BinClass> classes{bin("k", {20}, 100)};
  CHECK_THROWS_AS(solve_mcvbp_exact(items, classes), LimitExceeded);
  CHECK(solve_mcvbp_exact(items, classes, ExactLimits{13, 6}).bins.size() == 1);
  CHECK_THROWS_AS(brute_force_oracle(items, classes), LimitExceeded);

  // Seven classes, six of them strictly worse than "a": dominance leaves one.
  std::vector<BinClass> many{bin("a", {10}, 100)};
  for (int c = 0; c < 6; ++c) many.push_back(bin("z" + std::to_string(c), {10}, 200 + c));
  std::vector<PackItem> few;
  std::vector<std::string> all;
  for (const BinClass& c : many) all.push_back(c.class_id);
  for (int i = 0; i < 3; ++i) few.push_back(item("j" + std::to_string(i), {4}, all));
  const Allocation a = solve_mcvbp_exact(few, many);
  CHECK(a.total_cost == Money::from_millis(200));
}

TEST_CASE("verifier catches broken allocations") {
  const std::vector<PackItem> items{item("a", {3}, {"k"}), item("b", {3}, {"k"})};
  const std::vector<BinClass> classes{bin("k", {4}, 100), bin("m", {9}, 500)};
  Allocation a = solve_mcvbp_exact(items, classes);
  REQUIRE(verify_allocation(items, classes, a).empty());
  CHECK(a.total_cost == Money::from_millis(200));

  Allocation crowded = a;
  crowded.placements["b"].bin = crowded.placements["a"].bin;
  CHECK_FALSE(verify_allocation(items, classes, crowded).empty());  // over capacity and an empty bin

  Allocation wrong_cost = a;
  wrong_cost.total_cost = Money::from_millis(100);
  CHECK_FALSE(verify_allocation(items, classes, wrong_cost).empty());

  Allocation missing = a;
  missing.placements.erase("a");
  CHECK_FALSE(verify_allocation(items, classes, missing).empty());

  Allocation bad_class = a;
  bad_class.bins[0].class_id = "m";
  bad_class.total_cost = Money::from_millis(600);
  CHECK_FALSE(verify_allocation(items, classes, bad_class).empty());
}

TEST_CASE("canonical numbering follows item order") {
  const std::vector<PackItem> items{item("a", {3}, {"k"}), item("b", {3}, {"k"}), item("c", {1}, {"k"})};
  const std::vector<BinClass> classes{bin("k", {4}, 100)};
  const Allocation a = solve_mcvbp_exact(items, classes);
  CHECK(a.placements.at("a").bin == 0);
  CHECK(a.placements.at("b").bin == 1);
  CHECK(a.placements.at("c").bin == 0);  // first instance in key order
  CHECK(canonicalize(a, items, classes) == a);
}

TEST_CASE("parallel and serial oracles agree") {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    const auto inst = random_pack_instance(seed, 7);
    const auto par = try_solve([&] { return brute_force_oracle(inst.items, inst.classes); });
    const auto ser = try_solve([&] { return brute_force_oracle_serial(inst.items, inst.classes); });
    CAPTURE(seed);
    REQUIRE(par.has_value() == ser.has_value());
    if (par) CHECK(*par == *ser);
  }
}
