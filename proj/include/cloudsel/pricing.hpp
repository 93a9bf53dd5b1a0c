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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "cloudsel/catalog.hpp"
#include "cloudsel/decimal.hpp"

namespace cloudsel {

/// Days in a billing month, for every provider.
inline constexpr int kDaysPerMonth = 31;
/// Compute hours in a billing month (24 * 31).
inline constexpr int kHoursPerMonth = 744;

/// Expected usage over the request duration. Quantities left unset are
/// reported by validate_request(); pricing treats them as zero.
struct UsageEstimate {
  std::optional<Decimal> storage_gb;
  Decimal duration_days = kDaysPerMonth;
  std::map<Operation, std::int64_t> request_counts;
  std::optional<Decimal> transfer_in_gb;
  std::optional<Decimal> transfer_out_gb;
  friend bool operator==(const UsageEstimate&, const UsageEstimate&) = default;
};

/// Units of each currency per 1 USD.
struct RateTable {
  std::string effective_date;
  std::map<std::string, Decimal, std::less<>> rates;
};

/// Costs of one bundle, all in one currency. total is always the exact sum
/// of storage, requests, data transfer and compute.
struct CostBreakdown {
  Decimal storage_cost;
  Decimal requests_cost;
  Decimal transfer_in_cost;
  Decimal transfer_out_cost;
  Decimal data_transfer_cost;
  Decimal compute_total_cost;
  Decimal total;

  static CostBreakdown make(Decimal storage, Decimal requests, Decimal transfer_in, Decimal transfer_out,
                            Decimal compute);
  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

/// Graduated tier pricing: each band's rate applies only to the quantity
/// inside that band. Throws CapacityError when the quantity runs past the
/// last bounded tier and no unbounded tier follows.
Decimal tiered_cost(const TierSchedule& schedule, Decimal quantity);

/// count * hours * (instance rate + RAM-hour rate * ram + vCPU-hour rate * cores).
Decimal compute_cost(const ComputeBilling& billing, Decimal ram_gb, int cores, Decimal hours, std::int64_t count);

/// GB-month tier cost prorated linearly over a 31-day month. Throws
/// CapacityError when gb lies outside the offering's size range.
Decimal storage_cost(const StorageOffering& offering, Decimal gb, Decimal duration_days);

/// Request charges at the matching per-10k rate: an entry naming the operation
/// first, then an ANY entry, else free. Free/unspecified entries cost nothing.
Decimal requests_cost(const StorageOffering& offering, const std::map<Operation, std::int64_t>& counts);

Decimal transfer_cost(const TransferOffering& offering, Decimal in_gb, Decimal out_gb);

/// Prepaid plan: whole periods (partial periods billed in full) plus overage
/// beyond the units included across those periods.
Decimal plan_cost(const PlanPricing& plan, Decimal used_units, Decimal duration_days);

/// Cost of running `count` instances for `hours`, honouring period plans.
Decimal compute_offering_cost(const ComputeOffering& offering, Decimal hours, std::int64_t count,
                              Decimal duration_days);
/// Cost of holding `gb` for the duration, honouring period plans.
Decimal storage_offering_cost(const StorageOffering& offering, Decimal gb, Decimal duration_days);

// --- currencies ----------------------------------------------------------------

/// ISO-4217 codes the service accepts.
std::span<const std::string_view> supported_currencies();
bool is_supported_currency(std::string_view code);

/// Converts a USD amount. Throws CurrencyError for codes without a rate.
Decimal convert_currency(Decimal amount, std::string_view target, const RateTable& rates);
CostBreakdown convert_breakdown(const CostBreakdown& usd, std::string_view target, const RateTable& rates);

/// Parses {"effective_date":"YYYY-MM-DD","rates":{"USD":1,...}}. Throws
/// ParseError or InvariantError (USD must be exactly 1, rates > 0, codes supported).
RateTable load_rates(std::string_view text);
RateTable load_rates_file(const std::string& path);
/// A table holding only USD.
RateTable usd_only_rates();

}  // namespace cloudsel
