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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cloudsel/catalog.hpp"
#include "cloudsel/pricing.hpp"

namespace cloudsel {

enum class CriterionParameter { RamGb, LocalStorageGb, Cores, SpeedGhz, StorageGb, Location, Provider };
enum class Bound { Min, Max, Equal };

/// A bound on one configuration parameter. Numeric parameters carry a
/// Decimal; Location and Provider carry a string and use Bound::Equal.
struct Criterion {
  CriterionParameter parameter = CriterionParameter::RamGb;
  Bound bound = Bound::Equal;
  std::variant<Decimal, std::string> value;
  friend bool operator==(const Criterion&, const Criterion&) = default;
};

/// Closed interval; an absent high end is unbounded.
struct Range {
  Decimal low;
  std::optional<Decimal> high;

  bool contains(Decimal v) const { return low <= v && (!high || v <= *high); }
  friend bool operator==(const Range&, const Range&) = default;
};

struct ComputeRequirement {
  Range ram_range;
  Range local_storage_range;
  /// Exactly one of hours / months is set; months convert at 744 h.
  std::optional<Decimal> hours;
  std::optional<Decimal> months;
  std::int64_t instance_count = 1;
  /// Compute-side criteria: RamGb, LocalStorageGb, Cores, SpeedGhz, Location, Provider.
  std::vector<Criterion> extra_criteria;

  Decimal effective_hours() const;
  friend bool operator==(const ComputeRequirement&, const ComputeRequirement&) = default;
};

struct SelectionRequest {
  bool include_compute = false;
  bool include_storage = true;
  std::vector<ComputeRequirement> compute_requirements;
  UsageEstimate usage;
  std::optional<std::vector<std::string>> provider_filter;
  std::string currency = "USD";
  std::optional<std::size_t> limit;
  /// Bundle-level criteria: StorageGb (against the storage offering's size
  /// range), Location and Provider.
  std::vector<Criterion> criteria;
  friend bool operator==(const SelectionRequest&, const SelectionRequest&) = default;
};

struct ValidationIssue {
  std::string param;
  std::string message;
  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

/// One bundle: offerings of a single provider and region, as indices into
/// the catalog it was enumerated from. `compute` has one entry per requirement.
struct Candidate {
  std::size_t provider = 0;
  std::size_t region = 0;
  std::optional<std::size_t> storage;
  std::vector<std::size_t> compute;
  std::size_t transfer = 0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct ComputeChoice {
  std::string offering;
  Decimal hours;
  std::int64_t instance_count = 1;
  Decimal cost;
  friend bool operator==(const ComputeChoice&, const ComputeChoice&) = default;
};

struct Recommendation {
  std::string provider_name;
  std::string region_name;
  std::optional<std::string> storage_offering;
  std::vector<ComputeChoice> compute;
  std::string transfer_offering;
  std::string currency;
  /// In `currency`.
  CostBreakdown breakdown;
  Decimal usd_total;
  std::size_t rank = 0;
  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

struct ProviderOfferCount {
  std::size_t regions = 0;
  std::size_t compute = 0;
  std::size_t storage = 0;
  std::size_t transfer = 0;
  std::size_t compute_tiers = 0;
  std::size_t storage_tiers = 0;
  std::size_t transfer_tiers = 0;
  std::uint64_t simple = 0;
  std::uint64_t detailed = 0;
  friend bool operator==(const ProviderOfferCount&, const ProviderOfferCount&) = default;
};

/// Size of the selection space.
///
/// Per provider, offerings are counted by distinct name across its regions,
/// and an offering's tier count is the largest it has in any region:
/// storage counts its GB-month tiers, transfer its inbound plus outbound
/// tiers, compute its non-zero hourly price components (each at least 1).
///   simple   = sum_i cs_i * ss_i * ts_i
///   detailed = sum_i (sum tiers cs_i) * (sum tiers ss_i) * (sum tiers ts_i) * r_i
/// candidate_rows / candidate_columns are the row and column counts of the
/// unfiltered single-requirement combined candidate relation.
struct OfferCountReport {
  std::uint64_t simple_count = 0;
  std::uint64_t detailed_count = 0;
  std::uint64_t candidate_rows = 0;
  std::uint64_t candidate_columns = 0;
  std::map<std::string, ProviderOfferCount> per_provider;
};

std::string_view to_string(CriterionParameter v);
std::string_view to_string(Bound v);

/// Every problem with the request; empty means valid.
std::vector<ValidationIssue> validate_request(const SelectionRequest& request);

/// True when the offering satisfies the requirement's ranges and criteria.
bool compute_matches(const ComputeOffering& offering, const std::string& provider,
                     const std::vector<Location>& locations, const ComputeRequirement& requirement);
bool location_matches(const std::vector<Location>& region_locations, Location wanted);

/// Compute rows that satisfy the requirement and the provider filter.
std::vector<OfferingRow> filter_compute(const std::vector<OfferingRow>& offerings,
                                        const ComputeRequirement& requirement,
                                        const std::optional<std::vector<std::string>>& provider_filter);

/// Every same-provider, same-region bundle that satisfies the request's
/// criteria: (storage if requested) x (one compute per requirement if
/// requested) x transfer. Regions without a transfer offering yield nothing.
std::vector<Candidate> enumerate_candidates(const Catalog& catalog, const SelectionRequest& request);

/// Costs one candidate in USD. Throws CapacityError when an offering cannot
/// serve the requested quantities.
CostBreakdown cost_candidate(const Catalog& catalog, const Candidate& candidate, const SelectionRequest& request,
                             std::vector<ComputeChoice>* compute_choices = nullptr);

/// Strict weak order used for ranking: USD total, then converted total, then
/// provider and region name, then offering names. Ranking by the USD total
/// keeps the order identical in every currency.
bool recommendation_less(const Recommendation& a, const Recommendation& b);

/// Validates, enumerates, costs, converts and ranks. Candidates an offering
/// cannot serve (size range, tier capacity) are dropped. Throws
/// ValidationError for an invalid request and CurrencyError for a currency
/// without a rate.
std::vector<Recommendation> select(const SelectionRequest& request, const Catalog& catalog, const RateTable& rates);

OfferCountReport offer_count(const Catalog& catalog);

}  // namespace cloudsel
