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

#include "cloudsel/pricing.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "cloudsel/errors.hpp"
#include "json_decimal.hpp"

namespace cloudsel {

namespace {

constexpr std::array<std::string_view, 159> kCurrencies = {
    "AED", "AFN", "ALL", "AMD", "ANG", "AOA", "ARS", "AUD", "AWG", "AZN", "BAM", "BBD", "BDT", "BGN", "BHD",
    "BIF", "BMD", "BND", "BOB", "BRL", "BSD", "BTN", "BWP", "BYR", "BZD", "CAD", "CDF", "CHF", "CLF", "CLP",
    "CNH", "CNY", "COP", "CRC", "CUP", "CVE", "CZK", "DJF", "DKK", "DOP", "DZD", "EGP", "ETB", "EUR", "FJD",
    "FKP", "GBP", "GEL", "GHS", "GIP", "GMD", "GNF", "GTQ", "GYD", "HKD", "HNL", "HRK", "HTG", "HUF", "IDR",
    "IEP", "ILS", "INR", "IQD", "IRR", "ISK", "JMD", "JOD", "JPY", "KES", "KGS", "KHR", "KMF", "KPW", "KRW",
    "KWD", "KZT", "LAK", "LBP", "LKR", "LRD", "LSL", "LTL", "LVL", "LYD", "MAD", "MDL", "MGA", "MKD", "MMR",
    "MNT", "MOP", "MRO", "MUR", "MVR", "MWK", "MXN", "MYR", "MZN", "NAD", "NGN", "NIO", "NOK", "NPR", "NZD",
    "OMR", "PAB", "PEN", "PKG", "PHP", "PKR", "PLN", "PYG", "QAR", "RON", "RSD", "RUB", "RWF", "SAR", "SBD",
    "SCR", "SDG", "SEK", "SGD", "SHP", "SLL", "SOS", "SRD", "STD", "SVC", "SYP", "SZL", "THB", "TJS", "TMT",
    "TND", "TOP", "TRY", "TTD", "TWD", "TZS", "UAH", "UGX", "USD", "UYU", "UZS", "VEF", "VND", "VUV", "WST",
    "XAF", "XCD", "XDR", "XOF", "XPF", "YER", "ZAR", "ZMK", "ZWL"};

void require_non_negative(Decimal v, const char* what) {
  if (v.sign() < 0) throw InvariantError(std::string(what) + " must be >= 0");
}

}  // namespace

CostBreakdown CostBreakdown::make(Decimal storage, Decimal requests, Decimal transfer_in, Decimal transfer_out,
                                  Decimal compute) {
  CostBreakdown b;
  b.storage_cost = storage;
  b.requests_cost = requests;
  b.transfer_in_cost = transfer_in;
  b.transfer_out_cost = transfer_out;
  b.data_transfer_cost = transfer_in + transfer_out;
  b.compute_total_cost = compute;
  b.total = b.storage_cost + b.requests_cost + b.data_transfer_cost + b.compute_total_cost;
  return b;
}

Decimal tiered_cost(const TierSchedule& schedule, Decimal quantity) {
  require_non_negative(quantity, "quantity");
  Decimal cost;
  Decimal lower;
  for (const Tier& tier : schedule.tiers) {
    if (quantity <= lower) return cost;
    if (!tier.upto) return cost + (quantity - lower) * tier.rate;
    const Decimal band_end = min(quantity, *tier.upto);
    cost += (band_end - lower) * tier.rate;
    lower = *tier.upto;
  }
  if (!schedule.tiers.empty() && quantity > lower) {
    throw CapacityError("quantity " + quantity.to_string() + " exceeds the last price tier (" + lower.to_string() +
                        ")");
  }
  return cost;
}

Decimal compute_cost(const ComputeBilling& billing, Decimal ram_gb, int cores, Decimal hours, std::int64_t count) {
  require_non_negative(hours, "hours");
  if (count < 1) throw InvariantError("instance count must be >= 1");
  const Decimal hourly = billing.per_instance_hour + billing.per_ram_gb_hour * ram_gb + billing.per_vcpu_hour * cores;
  return Decimal(count) * hours * hourly;
}

Decimal storage_cost(const StorageOffering& offering, Decimal gb, Decimal duration_days) {
  require_non_negative(gb, "storage size");
  require_non_negative(duration_days, "duration");
  if (gb < offering.min_gb || (offering.max_gb && gb > *offering.max_gb)) {
    throw CapacityError(offering.name + ": " + gb.to_string() + " GB is outside the offered size range");
  }
  // Multiply before dividing so whole-month and half-month usage stay exact.
  return tiered_cost(offering.gb_month_tiers, gb) * duration_days / Decimal(kDaysPerMonth);
}

Decimal requests_cost(const StorageOffering& offering, const std::map<Operation, std::int64_t>& counts) {
  auto matching = [&](Operation op) -> const RequestPricing* {
    const RequestPricing* wildcard = nullptr;
    for (const auto& entry : offering.requests) {
      for (Operation listed : entry.operations) {
        if (listed == op && op != Operation::Any) return &entry;
        if (listed == Operation::Any) wildcard = &entry;
      }
    }
    return wildcard;
  };
  Decimal cost;
  for (const auto& [op, count] : counts) {
    if (count < 0) throw InvariantError("request count must be >= 0");
    const RequestPricing* entry = matching(op);
    if (entry == nullptr || entry->charged != Charge::Charged) continue;
    cost += Decimal(count) * entry->rate_per_10k / Decimal(10000);
  }
  return cost;
}

Decimal transfer_cost(const TransferOffering& offering, Decimal in_gb, Decimal out_gb) {
  return tiered_cost(offering.in_tiers, in_gb) + tiered_cost(offering.out_tiers, out_gb);
}

Decimal plan_cost(const PlanPricing& plan, Decimal used_units, Decimal duration_days) {
  if (plan.type != PlanType::Period) throw InvariantError("on-demand plans are priced from usage, not per period");
  if (plan.period_length_days <= 0) throw InvariantError("period length in days must be > 0");
  require_non_negative(used_units, "used units");
  require_non_negative(duration_days, "duration");
  const Decimal periods = (duration_days / Decimal(plan.period_length_days)).ceil();
  const Decimal overage = max(Decimal(), used_units - plan.included_units * periods);
  return periods * plan.per_period_cost + overage * plan.overage_rate;
}

Decimal compute_offering_cost(const ComputeOffering& offering, Decimal hours, std::int64_t count,
                              Decimal duration_days) {
  if (offering.plan.type == PlanType::OnDemand) {
    return compute_cost(offering.billing, offering.ram_gb, offering.cores, hours, count);
  }
  if (count < 1) throw InvariantError("instance count must be >= 1");
  return Decimal(count) * plan_cost(offering.plan, hours, duration_days);
}

Decimal storage_offering_cost(const StorageOffering& offering, Decimal gb, Decimal duration_days) {
  if (offering.plan.type == PlanType::OnDemand) return storage_cost(offering, gb, duration_days);
  if (gb < offering.min_gb || (offering.max_gb && gb > *offering.max_gb)) {
    throw CapacityError(offering.name + ": " + gb.to_string() + " GB is outside the offered size range");
  }
  return plan_cost(offering.plan, gb, duration_days);
}

std::span<const std::string_view> supported_currencies() { return kCurrencies; }

bool is_supported_currency(std::string_view code) {
  auto list = supported_currencies();
  return std::find(list.begin(), list.end(), code) != list.end();
}

Decimal convert_currency(Decimal amount, std::string_view target, const RateTable& rates) {
  if (target == "USD") return amount;
  auto it = rates.rates.find(target);
  if (it == rates.rates.end()) {
    std::string supported;
    for (const auto& [code, _] : rates.rates) {
      if (!supported.empty()) supported += ", ";
      supported += code;
    }
    throw CurrencyError("unknown currency '" + std::string(target) + "'; supported: " + supported);
  }
  return amount * it->second;
}

CostBreakdown convert_breakdown(const CostBreakdown& usd, std::string_view target, const RateTable& rates) {
  return CostBreakdown::make(convert_currency(usd.storage_cost, target, rates),
                             convert_currency(usd.requests_cost, target, rates),
                             convert_currency(usd.transfer_in_cost, target, rates),
                             convert_currency(usd.transfer_out_cost, target, rates),
                             convert_currency(usd.compute_total_cost, target, rates));
}

RateTable load_rates(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("rates", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rates") || !doc["rates"].is_object()) {
    throw ParseError("rates", "expected an object with a \"rates\" object");
  }
  RateTable table;
  if (doc.contains("effective_date")) {
    if (!doc["effective_date"].is_string()) throw ParseError("effective_date", "expected a string");
    table.effective_date = doc["effective_date"].get<std::string>();
    static const std::regex kDate(R"(\d{4}-\d{2}-\d{2})");
    if (!std::regex_match(table.effective_date, kDate)) throw ParseError("effective_date", "expected YYYY-MM-DD");
  }
  for (const auto& [code, value] : doc["rates"].items()) {
    Decimal rate;
    try {
      rate = json_to_decimal(value);
    } catch (const std::exception& e) {
      throw ParseError("rates." + code, e.what());
    }
    if (!is_supported_currency(code)) throw InvariantError("rates." + code + ": unsupported currency code");
    if (rate.sign() <= 0) throw InvariantError("rates." + code + ": rate must be > 0");
    table.rates.emplace(code, rate);
  }
  auto usd = table.rates.find("USD");
  if (usd == table.rates.end() || usd->second != Decimal(1)) {
    throw InvariantError("rates.USD: the base currency rate must be exactly 1");
  }
  return table;
}

RateTable load_rates_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read rates file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_rates(buf.str());
}

RateTable usd_only_rates() {
  RateTable t;
  t.rates.emplace("USD", Decimal(1));
  return t;
}

}  // namespace cloudsel
