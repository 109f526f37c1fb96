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

#include "streamplace/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

#include <fmt/format.h>

#include "streamplace/errors.hpp"

namespace streamplace {

double CapacityVector::operator[](std::size_t d) const {
  switch (d) {
    case 0: return vcpu;
    case 1: return mem_gib;
    case 2: return gpu;
    case 3: return gpu_mem_gib;
  }
  throw std::out_of_range("CapacityVector index");
}

double& CapacityVector::operator[](std::size_t d) {
  switch (d) {
    case 0: return vcpu;
    case 1: return mem_gib;
    case 2: return gpu;
    case 3: return gpu_mem_gib;
  }
  throw std::out_of_range("CapacityVector index");
}

bool CapacityVector::all_zero() const {
  return vcpu == 0.0 && mem_gib == 0.0 && gpu == 0.0 && gpu_mem_gib == 0.0;
}

bool CapacityVector::any_negative() const {
  return vcpu < 0.0 || mem_gib < 0.0 || gpu < 0.0 || gpu_mem_gib < 0.0;
}

bool componentwise_le(const CapacityVector& a, const CapacityVector& b) {
  for (std::size_t d = 0; d < kResourceDims; ++d) {
    if (a[d] > b[d]) return false;
  }
  return true;
}

Catalog::Catalog(std::vector<Region> regions, std::vector<InstanceOffer> offers)
    : regions_(std::move(regions)), offers_(std::move(offers)) {
  if (regions_.empty()) throw ValidationError("catalog: no regions");
  if (offers_.empty()) throw ValidationError("catalog: no offers");

  std::set<std::string> ids;
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const Region& r = regions_[i];
    if (r.id.empty()) throw ValidationError(fmt::format("regions[{}]: empty id", i));
    if (!ids.insert(r.id).second) {
      throw ValidationError(fmt::format("regions[{}] '{}': duplicate id", i, r.id));
    }
    if (r.lat < -90.0 || r.lat > 90.0 || r.lon < -180.0 || r.lon > 180.0) {
      throw ValidationError(
          fmt::format("regions[{}] '{}': coordinates out of bounds", i, r.id));
    }
  }

  std::set<std::string> keys;
  for (std::size_t i = 0; i < offers_.size(); ++i) {
    const InstanceOffer& o = offers_[i];
    const std::string where = fmt::format("offers[{}] '{}'", i, o.key());
    if (o.type_name.empty()) throw ValidationError(where + ": empty type_name");
    if (!ids.contains(o.region)) {
      throw ValidationError(where + ": unknown region '" + o.region + "'");
    }
    if (o.price_per_hour <= Money{}) {
      throw ValidationError(where + ": price_per_hour must be > 0");
    }
    if (o.capacity.any_negative()) throw ValidationError(where + ": negative capacity");
    if (o.capacity.all_zero()) throw ValidationError(where + ": all-zero capacity");
    if (!keys.insert(o.key()).second) {
      throw ValidationError(where + ": duplicate (type_name, region)");
    }
  }
}

const Region* Catalog::find_region(std::string_view id) const {
  for (const Region& r : regions_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const InstanceOffer* Catalog::find_offer(std::string_view type_name,
                                         std::string_view region) const {
  for (const InstanceOffer& o : offers_) {
    if (o.type_name == type_name && o.region == region) return &o;
  }
  return nullptr;
}

namespace {

CapacityVector capacity_from_json(const nlohmann::json& j) {
  CapacityVector c;
  c.vcpu = j.value("vcpu", 0.0);
  c.mem_gib = j.value("mem_gib", 0.0);
  c.gpu = j.value("gpu", 0.0);
  c.gpu_mem_gib = j.value("gpu_mem_gib", 0.0);
  return c;
}

nlohmann::json capacity_to_json(const CapacityVector& c) {
  return {{"vcpu", c.vcpu}, {"mem_gib", c.mem_gib}, {"gpu", c.gpu},
          {"gpu_mem_gib", c.gpu_mem_gib}};
}

}  // namespace

Catalog catalog_from_json(const nlohmann::json& j) {
  std::vector<Region> regions;
  std::vector<InstanceOffer> offers;
  try {
    if (!j.is_object()) throw ParseError("catalog: expected a JSON object");
    for (const auto& r : j.at("regions")) {
      Region region;
      region.id = r.at("id").get<std::string>();
      region.display_name = r.value("display_name", region.id);
      region.lat = r.at("lat").get<double>();
      region.lon = r.at("lon").get<double>();
      regions.push_back(std::move(region));
    }
    for (const auto& o : j.at("offers")) {
      InstanceOffer offer;
      offer.type_name = o.at("type_name").get<std::string>();
      offer.region = o.at("region").get<std::string>();
      offer.price_per_hour = Money::from_usd(o.at("price_per_hour").get<double>());
      offer.capacity = capacity_from_json(o.at("capacity"));
      offers.push_back(std::move(offer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("catalog: ") + e.what());
  }
  return Catalog(std::move(regions), std::move(offers));
}

nlohmann::json catalog_to_json(const Catalog& c) {
  nlohmann::json regions = nlohmann::json::array();
  for (const Region& r : c.regions()) {
    regions.push_back(
        {{"id", r.id}, {"display_name", r.display_name}, {"lat", r.lat}, {"lon", r.lon}});
  }
  nlohmann::json offers = nlohmann::json::array();
  for (const InstanceOffer& o : c.offers()) {
    offers.push_back({{"type_name", o.type_name},
                      {"region", o.region},
                      {"price_per_hour", o.price_per_hour.usd()},
                      {"capacity", capacity_to_json(o.capacity)}});
  }
  return {{"regions", regions}, {"offers", offers}};
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return catalog_from_json(j);
}

void save_catalog(const Catalog& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write catalog file " + path.string());
  out << catalog_to_json(c).dump(2) << '\n';
}

std::vector<InstanceOffer> offers_in_regions(const Catalog& c,
                                             const std::set<std::string>& allowed) {
  for (const std::string& id : allowed) {
    if (c.find_region(id) == nullptr) throw UnknownRegion("unknown region '" + id + "'");
  }
  std::vector<InstanceOffer> out;
  for (const InstanceOffer& o : c.offers()) {
    if (allowed.contains(o.region)) out.push_back(o);
  }
  std::sort(out.begin(), out.end(), [](const InstanceOffer& a, const InstanceOffer& b) {
    return std::tie(a.price_per_hour, a.type_name, a.region) <
           std::tie(b.price_per_hour, b.type_name, b.region);
  });
  return out;
}

double price_ratio(const Catalog& c, std::string_view type_name,
                   std::string_view region_a, std::string_view region_b) {
  const InstanceOffer* a = c.find_offer(type_name, region_a);
  const InstanceOffer* b = c.find_offer(type_name, region_b);
  if (a == nullptr || b == nullptr) {
    throw MissingOffer(fmt::format("no offer for {} in {}", type_name,
                                   a == nullptr ? region_a : region_b));
  }
  return static_cast<double>(a->price_per_hour.millis()) /
         static_cast<double>(b->price_per_hour.millis());
}

}  // namespace streamplace
