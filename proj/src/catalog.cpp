/*
 * Copyright 2026 The cloudsel Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cloudsel/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>
#include <set>
#include <utility>

#include "cloudsel/errors.hpp"

namespace cloudsel {

namespace {

std::string squash(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view text, const std::array<Enum, N>& values) {
  const std::string key = squash(text);
  for (Enum v : values) {
    if (squash(to_string(v)) == key) return v;
  }
  return std::nullopt;
}

std::string join_path(std::string_view provider, std::string_view region, std::string_view type,
                      std::string_view name) {
  std::string out(provider);
  out += '/';
  out += region;
  out += '/';
  out += type;
  out += '/';
  out += name;
  return out;
}

void check_tiers(const TierSchedule& schedule, std::string_view what, const std::string& where,
                 std::vector<std::string>& out) {
  std::optional<Decimal> previous;
  for (std::size_t i = 0; i < schedule.tiers.size(); ++i) {
    const Tier& tier = schedule.tiers[i];
    const std::string label = where + ": " + std::string(what) + " tier " + std::to_string(i + 1);
    if (tier.rate.sign() < 0) out.push_back(label + " rate must be >= 0");
    if (!tier.upto) {
      if (i + 1 != schedule.tiers.size()) out.push_back(label + " is unbounded but is not the last tier");
      continue;
    }
    if (tier.upto->sign() <= 0) out.push_back(label + " bound must be > 0");
    if (previous && *tier.upto <= *previous) out.push_back(label + " bound must be strictly increasing");
    previous = tier.upto;
  }
}

void check_plan(const PlanPricing& plan, const std::string& where, std::vector<std::string>& out) {
  if (plan.per_period_cost.sign() < 0) out.push_back(where + ": per period cost must be >= 0");
  if (plan.overage_rate.sign() < 0) out.push_back(where + ": overage cost must be >= 0");
  if (plan.included_units.sign() < 0) out.push_back(where + ": included units must be >= 0");
  if (plan.type == PlanType::OnDemand && !plan.per_period_cost.is_zero()) {
    out.push_back(where + ": on-demand plan cannot carry a per period cost");
  }
  if (plan.type == PlanType::Period && plan.period_length_days <= 0) {
    out.push_back(where + ": period length in days must be > 0");
  }
}

void check_compute(const ComputeOffering& o, const std::string& where, std::vector<std::string>& out) {
  if (o.name.empty()) out.push_back(where + ": name must not be empty");
  if (o.cores < 1) out.push_back(where + ": cores must be >= 1");
  if (o.speed_ghz.sign() <= 0) out.push_back(where + ": speed must be > 0");
  if (o.ram_gb.sign() <= 0) out.push_back(where + ": RAM capacity must be > 0");
  if (o.local_storage_gb.sign() < 0) out.push_back(where + ": local storage capacity must be >= 0");
  const auto& b = o.billing;
  if (b.per_instance_hour.sign() < 0 || b.per_ram_gb_hour.sign() < 0 || b.per_vcpu_hour.sign() < 0) {
    out.push_back(where + ": hourly price components must be >= 0");
  }
  if (o.plan.type == PlanType::OnDemand && b.per_instance_hour.is_zero() && b.per_ram_gb_hour.is_zero() &&
      b.per_vcpu_hour.is_zero()) {
    out.push_back(where + ": on-demand offering needs at least one hourly price component > 0");
  }
  check_plan(o.plan, where, out);
}

void check_storage(const StorageOffering& o, const std::string& where, std::vector<std::string>& out) {
  if (o.name.empty()) out.push_back(where + ": name must not be empty");
  if (o.min_gb.sign() < 0) out.push_back(where + ": minimum size must be >= 0");
  if (o.max_gb && *o.max_gb < o.min_gb) out.push_back(where + ": minimum size exceeds maximum size");
  check_tiers(o.gb_month_tiers, "GB-month", where, out);
  std::set<Operation> seen;
  for (const auto& r : o.requests) {
    if (r.operations.empty()) out.push_back(where + ": request pricing entry has no operations");
    if (r.rate_per_10k.sign() < 0) out.push_back(where + ": request rate must be >= 0");
    if (r.charged != Charge::Charged && !r.rate_per_10k.is_zero()) {
      out.push_back(where + ": " + std::string(to_string(r.charged)) + " request pricing must have rate 0");
    }
    for (Operation op : r.operations) {
      if (!seen.insert(op).second) {
        out.push_back(where + ": request operation " + std::string(to_string(op)) + " priced twice");
      }
    }
  }
  check_plan(o.plan, where, out);
}

void check_transfer(const TransferOffering& o, const std::string& where, std::vector<std::string>& out) {
  if (o.name.empty()) out.push_back(where + ": name must not be empty");
  check_tiers(o.in_tiers, "inbound", where, out);
  check_tiers(o.out_tiers, "outbound", where, out);
}

template <typename T>
void check_unique_names(const std::vector<T>& items, const std::string& where, std::string_view type,
                        std::vector<std::string>& out) {
  std::set<std::string> names;
  for (const auto& item : items) {
    if (!names.insert(item.name).second) {
      out.push_back(where + "/" + std::string(type) + "/" + item.name + ": duplicate offering name");
    }
  }
}

std::string bump_version(const std::string& version) {
  const auto plus = version.rfind('+');
  if (plus != std::string::npos && plus + 1 < version.size() &&
      std::all_of(version.begin() + static_cast<std::ptrdiff_t>(plus) + 1, version.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
    const auto n = std::stoull(version.substr(plus + 1));
    return version.substr(0, plus + 1) + std::to_string(n + 1);
  }
  return version + "+1";
}

template <typename T>
void upsert_into(std::vector<T>& items, const T& offering) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& o) { return o.name == offering.name; });
  if (it != items.end()) {
    *it = offering;
  } else {
    items.push_back(offering);
  }
}

}  // namespace

const Provider* Catalog::find_provider(std::string_view name) const {
  for (const auto& p : providers) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const std::string& OfferingRow::name() const {
  return std::visit([](const auto& o) -> const std::string& { return o.name; }, offering);
}

std::string_view to_string(Location v) {
  switch (v) {
    case Location::NorthAmerica: return "NorthAmerica";
    case Location::SouthAmerica: return "SouthAmerica";
    case Location::Africa: return "Africa";
    case Location::Europe: return "Europe";
    case Location::Asia: return "Asia";
    case Location::Australia: return "Australia";
    case Location::Any: return "Any";
  }
  return "Any";
}

std::string_view to_string(ServiceType v) {
  switch (v) {
    case ServiceType::Compute: return "compute";
    case ServiceType::Storage: return "storage";
    case ServiceType::Transfer: return "transfer";
  }
  return "compute";
}

std::string_view to_string(PlanType v) { return v == PlanType::OnDemand ? "on_demand" : "period"; }

std::string_view to_string(StoragePlanType v) {
  return v == StoragePlanType::PayAsYouGo ? "pay_as_you_go" : "reduced_redundancy";
}

std::string_view to_string(Operation v) {
  switch (v) {
    case Operation::Put: return "PUT";
    case Operation::Copy: return "COPY";
    case Operation::Post: return "POST";
    case Operation::List: return "LIST";
    case Operation::Get: return "GET";
    case Operation::Delete: return "DELETE";
    case Operation::Search: return "SEARCH";
    case Operation::Head: return "HEAD";
    case Operation::Any: return "ANY";
  }
  return "ANY";
}

std::string_view to_string(Charge v) {
  switch (v) {
    case Charge::Charged: return "charged";
    case Charge::Free: return "free";
    case Charge::Unspecified: return "unspecified";
  }
  return "charged";
}

std::optional<Location> parse_location(std::string_view text) {
  return lookup(text, std::array{Location::NorthAmerica, Location::SouthAmerica, Location::Africa,
                                 Location::Europe, Location::Asia, Location::Australia, Location::Any});
}

std::optional<ServiceType> parse_service_type(std::string_view text) {
  return lookup(text, std::array{ServiceType::Compute, ServiceType::Storage, ServiceType::Transfer});
}

std::optional<Operation> parse_operation(std::string_view text) {
  return lookup(text, std::array{Operation::Put, Operation::Copy, Operation::Post, Operation::List, Operation::Get,
                                 Operation::Delete, Operation::Search, Operation::Head, Operation::Any});
}

std::vector<std::string> offering_violations(const Offering& offering) {
  std::vector<std::string> out;
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ComputeOffering>) check_compute(o, o.name, out);
        if constexpr (std::is_same_v<T, StorageOffering>) check_storage(o, o.name, out);
        if constexpr (std::is_same_v<T, TransferOffering>) check_transfer(o, o.name, out);
      },
      offering);
  return out;
}

std::vector<std::string> catalog_violations(const Catalog& catalog) {
  std::vector<std::string> out;
  if (catalog.base_currency != "USD") {
    out.push_back("catalog: base currency must be USD, found '" + catalog.base_currency + "'");
  }
  std::set<std::string> provider_names;
  for (const auto& p : catalog.providers) {
    if (p.name.empty()) out.push_back("catalog: provider name must not be empty");
    if (!provider_names.insert(p.name).second) out.push_back(p.name + ": duplicate provider name");
    if (p.regions.empty()) out.push_back(p.name + ": provider needs at least one region");
    std::set<std::string> region_names;
    for (const auto& r : p.regions) {
      const std::string where = p.name + "/" + r.name;
      if (!region_names.insert(r.name).second) out.push_back(where + ": duplicate region name");
      if (r.locations.empty()) out.push_back(where + ": region needs a location");
      check_unique_names(r.compute, where, "compute", out);
      check_unique_names(r.storage, where, "storage", out);
      check_unique_names(r.transfer, where, "transfer", out);
      for (const auto& o : r.compute) check_compute(o, join_path(p.name, r.name, "compute", o.name), out);
      for (const auto& o : r.storage) check_storage(o, join_path(p.name, r.name, "storage", o.name), out);
      for (const auto& o : r.transfer) check_transfer(o, join_path(p.name, r.name, "transfer", o.name), out);
    }
  }
  return out;
}

void validate_catalog(const Catalog& catalog) {
  auto violations = catalog_violations(catalog);
  if (!violations.empty()) throw InvariantError(violations.front());
}

Decimal normalize_memory(Decimal value, MemoryUnit unit) {
  if (value.sign() < 0) throw InvariantError("memory quantity must be >= 0");
  if (unit == MemoryUnit::GB) return value;
  return (value / Decimal(1024)).round(3);
}

Provider merge_equal_price_regions(const Provider& provider) {
  Provider merged{provider.name, {}};
  std::vector<bool> used(provider.regions.size(), false);
  for (std::size_t i = 0; i < provider.regions.size(); ++i) {
    if (used[i]) continue;
    Region region = provider.regions[i];
    for (std::size_t j = i + 1; j < provider.regions.size(); ++j) {
      const Region& other = provider.regions[j];
      if (used[j] || other.compute != region.compute || other.storage != region.storage ||
          other.transfer != region.transfer) {
        continue;
      }
      used[j] = true;
      region.name += " and " + other.name;
      for (Location l : other.locations) {
        if (std::find(region.locations.begin(), region.locations.end(), l) == region.locations.end()) {
          region.locations.push_back(l);
        }
      }
    }
    merged.regions.push_back(std::move(region));
  }
  return merged;
}

std::vector<OfferingRow> list_offerings(const Catalog& catalog, ServiceType type,
                                        const std::optional<std::string>& name_pattern,
                                        const std::optional<std::vector<std::string>>& providers) {
  std::optional<std::regex> re;
  if (name_pattern) {
    try {
      re.emplace(*name_pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw ValidationError("pattern", "invalid regular expression '" + *name_pattern + "': " + e.what());
    }
  }
  std::vector<OfferingRow> rows;
  auto emit = [&](const Provider& p, const Region& r, const auto& items) {
    for (const auto& o : items) {
      if (re && !std::regex_search(o.name, *re)) continue;
      rows.push_back(OfferingRow{p.name, r.name, r.locations, Offering{o}});
    }
  };
  for (const auto& p : catalog.providers) {
    if (providers && std::find(providers->begin(), providers->end(), p.name) == providers->end()) continue;
    for (const auto& r : p.regions) {
      switch (type) {
        case ServiceType::Compute: emit(p, r, r.compute); break;
        case ServiceType::Storage: emit(p, r, r.storage); break;
        case ServiceType::Transfer: emit(p, r, r.transfer); break;
      }
    }
  }
  return rows;
}

Catalog upsert_offering(const Catalog& catalog, const std::string& provider,
                        const std::optional<std::string>& region, const Offering& offering) {
  if (provider.empty()) throw InvariantError("upsert: provider name must not be empty");
  const std::string region_name = region.value_or("Any");
  if (region_name.empty()) throw InvariantError("upsert: region name must not be empty");
  auto violations = offering_violations(offering);
  if (!violations.empty()) throw InvariantError(provider + "/" + region_name + "/" + violations.front());

  Catalog next = catalog;
  auto p = std::find_if(next.providers.begin(), next.providers.end(),
                        [&](const Provider& x) { return x.name == provider; });
  if (p == next.providers.end()) {
    next.providers.push_back(Provider{provider, {}});
    p = std::prev(next.providers.end());
  }
  auto r = std::find_if(p->regions.begin(), p->regions.end(), [&](const Region& x) { return x.name == region_name; });
  if (r == p->regions.end()) {
    p->regions.push_back(Region{region_name, {Location::Any}, {}, {}, {}});
    r = std::prev(p->regions.end());
  }
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ComputeOffering>) upsert_into(r->compute, o);
        if constexpr (std::is_same_v<T, StorageOffering>) upsert_into(r->storage, o);
        if constexpr (std::is_same_v<T, TransferOffering>) upsert_into(r->transfer, o);
      },
      offering);
  next.version = bump_version(catalog.version);
  return next;
}

CatalogStore::CatalogStore(Catalog catalog) : current_(std::make_shared<const Catalog>(std::move(catalog))) {}

std::shared_ptr<const Catalog> CatalogStore::snapshot() const {
  std::lock_guard lock(mutex_);
  return current_;
}

void CatalogStore::replace(Catalog catalog) {
  validate_catalog(catalog);
  auto next = std::make_shared<const Catalog>(std::move(catalog));
  std::lock_guard lock(mutex_);
  current_ = std::move(next);
}

std::shared_ptr<const Catalog> CatalogStore::upsert(const std::string& provider,
                                                    const std::optional<std::string>& region,
                                                    const Offering& offering) {
  std::lock_guard lock(mutex_);
  current_ = std::make_shared<const Catalog>(upsert_offering(*current_, provider, region, offering));
  return current_;
}

}  // namespace cloudsel
