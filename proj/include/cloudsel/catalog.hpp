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

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cloudsel/decimal.hpp"

namespace cloudsel {

// ---------------------------------------------------------------------------
// Unified service model. Every price is in USD; memory is in GB.
// ---------------------------------------------------------------------------

enum class Location { NorthAmerica, SouthAmerica, Africa, Europe, Asia, Australia, Any };
enum class ServiceType { Compute, Storage, Transfer };
enum class PlanType { OnDemand, Period };
enum class StoragePlanType { PayAsYouGo, ReducedRedundancy };
enum class Operation { Put, Copy, Post, List, Get, Delete, Search, Head, Any };
enum class Charge { Charged, Free, Unspecified };
enum class MemoryUnit { MB, GB };

/// One graduated band: `rate` per unit for the quantity between the previous
/// tier's bound and `upto`. An absent `upto` is unbounded.
struct Tier {
  std::optional<Decimal> upto;
  Decimal rate;
  friend bool operator==(const Tier&, const Tier&) = default;
};

/// Ordered graduated tiers. An empty schedule prices everything at zero.
struct TierSchedule {
  std::vector<Tier> tiers;
  friend bool operator==(const TierSchedule&, const TierSchedule&) = default;
};

struct PlanPricing {
  PlanType type = PlanType::OnDemand;
  Decimal per_period_cost;
  int period_length_days = 0;
  Decimal overage_rate;
  Decimal included_units;
  friend bool operator==(const PlanPricing&, const PlanPricing&) = default;
};

/// Hourly price components; they add up (AT&T style vCPU + RAM billing).
struct ComputeBilling {
  Decimal per_instance_hour;
  Decimal per_ram_gb_hour;
  Decimal per_vcpu_hour;
  friend bool operator==(const ComputeBilling&, const ComputeBilling&) = default;
};

struct ComputeOffering {
  std::string name;
  int cores = 1;
  Decimal speed_ghz;
  Decimal ram_gb;
  Decimal local_storage_gb;
  ComputeBilling billing;
  PlanPricing plan;
  friend bool operator==(const ComputeOffering&, const ComputeOffering&) = default;
};

/// Price of a group of request operations, per 10,000 requests.
/// Operation::Any matches every operation no other entry names explicitly.
struct RequestPricing {
  std::vector<Operation> operations;
  Decimal rate_per_10k;
  Charge charged = Charge::Charged;
  friend bool operator==(const RequestPricing&, const RequestPricing&) = default;
};

struct StorageOffering {
  std::string name;
  Decimal min_gb;
  std::optional<Decimal> max_gb;
  TierSchedule gb_month_tiers;
  std::vector<RequestPricing> requests;
  StoragePlanType plan_type = StoragePlanType::PayAsYouGo;
  PlanPricing plan;
  friend bool operator==(const StorageOffering&, const StorageOffering&) = default;
};

struct TransferOffering {
  std::string name;
  TierSchedule in_tiers;
  TierSchedule out_tiers;
  friend bool operator==(const TransferOffering&, const TransferOffering&) = default;
};

/// A priced region. Merged regions carry the union of their locations.
struct Region {
  std::string name;
  std::vector<Location> locations;
  std::vector<ComputeOffering> compute;
  std::vector<StorageOffering> storage;
  std::vector<TransferOffering> transfer;
  friend bool operator==(const Region&, const Region&) = default;
};

struct Provider {
  std::string name;
  std::vector<Region> regions;
  friend bool operator==(const Provider&, const Provider&) = default;
};

struct Catalog {
  std::string base_currency = "USD";
  std::string version;
  std::vector<Provider> providers;
  friend bool operator==(const Catalog&, const Catalog&) = default;

  const Provider* find_provider(std::string_view name) const;
};

using Offering = std::variant<ComputeOffering, StorageOffering, TransferOffering>;

/// A catalog entry flattened with its provider and region, as returned by
/// list_offerings().
struct OfferingRow {
  std::string provider;
  std::string region;
  std::vector<Location> locations;
  Offering offering;

  const std::string& name() const;
  ServiceType type() const { return static_cast<ServiceType>(offering.index()); }
};

struct LoadOptions {
  /// Collapse regions with identical offerings and prices into one region.
  bool merge_regions = false;
};

// --- enum text ---------------------------------------------------------------

std::string_view to_string(Location v);
std::string_view to_string(ServiceType v);
std::string_view to_string(PlanType v);
std::string_view to_string(StoragePlanType v);
std::string_view to_string(Operation v);
std::string_view to_string(Charge v);

/// Case-insensitive; accepts "NorthAmerica", "north_america" and "North America".
std::optional<Location> parse_location(std::string_view text);
std::optional<ServiceType> parse_service_type(std::string_view text);
/// Case-insensitive operation name ("get", "COPY", "any").
std::optional<Operation> parse_operation(std::string_view text);

// --- operations --------------------------------------------------------------

/// Parses catalog JSON and checks every invariant. Throws ParseError with a
/// line number or field path, InvariantError naming the offending offering.
Catalog load_catalog(std::string_view text, const LoadOptions& options = {});
/// Reads a catalog file. Throws IoError when unreadable.
Catalog load_catalog_file(const std::string& path, const LoadOptions& options = {});
std::string serialize_catalog(const Catalog& catalog);

/// Parses one offering of the given type from its JSON object text.
Offering parse_offering(ServiceType type, std::string_view json_text);
std::string serialize_offering(const Offering& offering);

/// Every invariant violation in the catalog, one message per violation.
std::vector<std::string> catalog_violations(const Catalog& catalog);
/// Throws InvariantError with the first violation.
void validate_catalog(const Catalog& catalog);
std::vector<std::string> offering_violations(const Offering& offering);

/// Converts a memory quantity to GB (1 GB = 1024 MB). MB inputs round to 3
/// decimals; GB inputs are returned unchanged. Throws InvariantError when negative.
Decimal normalize_memory(Decimal value, MemoryUnit unit);

/// Merges regions whose offering lists are identical. The merged region is
/// named "<A> and <B>" in original order and sits where the first one was.
Provider merge_equal_price_regions(const Provider& provider);

/// Rows of one service type whose name matches `name_pattern` (ECMAScript
/// regex search) and whose provider is listed. Absent filters match all.
/// Throws ValidationError for an invalid pattern.
std::vector<OfferingRow> list_offerings(const Catalog& catalog, ServiceType type,
                                        const std::optional<std::string>& name_pattern = std::nullopt,
                                        const std::optional<std::vector<std::string>>& providers = std::nullopt);

/// Replaces the offering with the same (provider, region, type, name), or
/// inserts it. Unknown providers and regions are created; an absent region
/// means "Any". The returned catalog has a new version string.
Catalog upsert_offering(const Catalog& catalog, const std::string& provider,
                        const std::optional<std::string>& region, const Offering& offering);

/// Holds the current catalog snapshot. Readers get an immutable shared
/// snapshot; writers serialize through upsert()/replace().
class CatalogStore {
 public:
  explicit CatalogStore(Catalog catalog);

  std::shared_ptr<const Catalog> snapshot() const;
  void replace(Catalog catalog);
  std::shared_ptr<const Catalog> upsert(const std::string& provider, const std::optional<std::string>& region,
                                        const Offering& offering);

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const Catalog> current_;
};

}  // namespace cloudsel
