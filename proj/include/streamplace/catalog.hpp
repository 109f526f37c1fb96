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

#include <array>
#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "streamplace/money.hpp"

namespace streamplace {

inline constexpr std::size_t kResourceDims = 4;

/// Resource quantity in four dimensions: vCPU, memory, GPU devices and GPU
/// memory. Used both for instance capacity and for stream demand.
struct CapacityVector {
  double vcpu = 0.0;
  double mem_gib = 0.0;
  double gpu = 0.0;
  double gpu_mem_gib = 0.0;

  double operator[](std::size_t d) const;
  double& operator[](std::size_t d);

  bool all_zero() const;
  bool any_negative() const;

  friend bool operator==(const CapacityVector&, const CapacityVector&) = default;
};

inline constexpr std::array<std::string_view, kResourceDims> kResourceNames = {
    "vcpu", "mem_gib", "gpu", "gpu_mem_gib"};

/// Componentwise partial order: every component of `a` is at most the
/// matching component of `b`.
bool componentwise_le(const CapacityVector& a, const CapacityVector& b);

struct Region {
  std::string id;
  std::string display_name;
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const Region&, const Region&) = default;
};

struct InstanceOffer {
  std::string type_name;
  std::string region;
  Money price_per_hour;
  CapacityVector capacity;

  /// "type_name@region", unique within a catalog.
  std::string key() const { return type_name + "@" + region; }

  friend bool operator==(const InstanceOffer&, const InstanceOffer&) = default;
};

/// Immutable, validated menu of regions and instance offers.
class Catalog {
 public:
  /// Throws ValidationError naming the offending record.
  Catalog(std::vector<Region> regions, std::vector<InstanceOffer> offers);

  const std::vector<Region>& regions() const { return regions_; }
  const std::vector<InstanceOffer>& offers() const { return offers_; }

  const Region* find_region(std::string_view id) const;
  const InstanceOffer* find_offer(std::string_view type_name,
                                  std::string_view region) const;

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  std::vector<Region> regions_;
  std::vector<InstanceOffer> offers_;
};

Catalog catalog_from_json(const nlohmann::json& j);
nlohmann::json catalog_to_json(const Catalog& c);

/// Throws ParseError on malformed JSON and ValidationError on bad records.
Catalog load_catalog(const std::filesystem::path& path);
void save_catalog(const Catalog& c, const std::filesystem::path& path);

/// Offers whose region is in `allowed`, sorted by (price, type_name, region).
/// Throws UnknownRegion if `allowed` names a region the catalog lacks.
std::vector<InstanceOffer> offers_in_regions(const Catalog& c,
                                             const std::set<std::string>& allowed);

/// price(type@region_a) / price(type@region_b). Throws MissingOffer.
double price_ratio(const Catalog& c, std::string_view type_name,
                   std::string_view region_a, std::string_view region_b);

}  // namespace streamplace
