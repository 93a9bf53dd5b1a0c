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

#include "cloudsel/selection.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include "cloudsel/errors.hpp"

namespace cloudsel {

namespace {

bool in_filter(const std::optional<std::vector<std::string>>& filter, const std::string& name) {
  return !filter || std::find(filter->begin(), filter->end(), name) != filter->end();
}

bool numeric_matches(Decimal actual, Bound bound, Decimal wanted) {
  switch (bound) {
    case Bound::Min: return actual >= wanted;
    case Bound::Max: return actual <= wanted;
    case Bound::Equal: return actual == wanted;
  }
  return false;
}

bool is_numeric(CriterionParameter p) {
  return p != CriterionParameter::Location && p != CriterionParameter::Provider;
}

// Location and Provider criteria shared by compute filtering and bundle filtering.
bool placement_matches(const Criterion& c, const std::string& provider, const std::vector<Location>& locations) {
  const auto* text = std::get_if<std::string>(&c.value);
  if (text == nullptr) return false;
  if (c.parameter == CriterionParameter::Provider) return *text == provider;
  auto wanted = parse_location(*text);
  return wanted && location_matches(locations, *wanted);
}

bool storage_size_matches(const StorageOffering& s, Bound bound, Decimal gb) {
  switch (bound) {
    case Bound::Min: return !s.max_gb || *s.max_gb >= gb;
    case Bound::Max: return s.min_gb <= gb;
    case Bound::Equal: return s.min_gb <= gb && (!s.max_gb || gb <= *s.max_gb);
  }
  return false;
}

void check_criterion(const Criterion& c, bool compute_side, std::vector<ValidationIssue>& out) {
  const std::string param = "criteria";
  const std::string name(to_string(c.parameter));
  if (is_numeric(c.parameter)) {
    const auto* v = std::get_if<Decimal>(&c.value);
    if (v == nullptr) {
      out.push_back({param, name + " criterion needs a numeric value"});
    } else if (v->sign() < 0) {
      out.push_back({param, name + " criterion value must be >= 0"});
    }
    if (compute_side && c.parameter == CriterionParameter::StorageGb) {
      out.push_back({param, "STORAGE_GB criteria apply to the storage offering, not a compute requirement"});
    }
    if (!compute_side && c.parameter != CriterionParameter::StorageGb) {
      out.push_back({param, name + " criteria belong to a compute requirement"});
    }
    return;
  }
  if (c.bound != Bound::Equal) out.push_back({param, name + " criteria only support an equal bound"});
  const auto* text = std::get_if<std::string>(&c.value);
  if (text == nullptr) {
    out.push_back({param, name + " criterion needs a text value"});
  } else if (c.parameter == CriterionParameter::Location && !parse_location(*text)) {
    out.push_back({param, "unknown location '" + *text + "'"});
  }
}

std::uint64_t tier_count(const ComputeOffering& o) {
  const auto& b = o.billing;
  const std::uint64_t n = (b.per_instance_hour.is_zero() ? 0 : 1) + (b.per_ram_gb_hour.is_zero() ? 0 : 1) +
                          (b.per_vcpu_hour.is_zero() ? 0 : 1);
  return std::max<std::uint64_t>(1, n);
}

std::uint64_t tier_count(const StorageOffering& o) {
  return std::max<std::uint64_t>(1, o.gb_month_tiers.tiers.size());
}

std::uint64_t tier_count(const TransferOffering& o) {
  return std::max<std::uint64_t>(1, o.in_tiers.tiers.size() + o.out_tiers.tiers.size());
}

template <typename T>
void collect_tiers(const std::vector<T>& items, std::map<std::string, std::uint64_t>& out) {
  for (const auto& o : items) {
    auto& slot = out[o.name];
    slot = std::max(slot, tier_count(o));
  }
}

std::uint64_t sum_values(const std::map<std::string, std::uint64_t>& m) {
  std::uint64_t s = 0;
  for (const auto& [_, v] : m) s += v;
  return s;
}

// Steps the per-requirement choice indices like an odometer; false once every
// combination has been visited.
bool advance(std::vector<std::size_t>& odometer, const std::vector<std::vector<std::size_t>>& options) {
  for (std::size_t k = odometer.size(); k > 0; --k) {
    if (++odometer[k - 1] < options[k - 1].size()) return true;
    odometer[k - 1] = 0;
  }
  return false;
}

// Columns of a rendered combined row: provider, region, storage, compute,
// transfer, storage_cost, requests_cost, cost_data_in, cost_data_out,
// data_transfer_cost, compute_total_cost, total.
constexpr std::uint64_t kCandidateColumns = 12;

}  // namespace

std::string_view to_string(CriterionParameter v) {
  switch (v) {
    case CriterionParameter::RamGb: return "RAM_GB";
    case CriterionParameter::LocalStorageGb: return "LOCAL_STORAGE_GB";
    case CriterionParameter::Cores: return "CORES";
    case CriterionParameter::SpeedGhz: return "SPEED_GHZ";
    case CriterionParameter::StorageGb: return "STORAGE_GB";
    case CriterionParameter::Location: return "LOCATION";
    case CriterionParameter::Provider: return "PROVIDER";
  }
  return "RAM_GB";
}

std::string_view to_string(Bound v) {
  switch (v) {
    case Bound::Min: return "min";
    case Bound::Max: return "max";
    case Bound::Equal: return "equal";
  }
  return "equal";
}

Decimal ComputeRequirement::effective_hours() const {
  if (hours) return *hours;
  if (months) return *months * Decimal(kHoursPerMonth);
  return Decimal(kHoursPerMonth);
}

std::vector<ValidationIssue> validate_request(const SelectionRequest& request) {
  std::vector<ValidationIssue> out;
  const auto& usage = request.usage;
  if (!request.include_compute && !request.include_storage) {
    out.push_back({"request", "select compute, storage, or both"});
  }
  if (request.include_storage) {
    if (!usage.storage_gb) {
      out.push_back({"storage", "storage required"});
    } else if (usage.storage_gb->sign() < 0) {
      out.push_back({"storage", "must be >= 0"});
    }
  }
  if (!usage.transfer_in_gb) {
    out.push_back({"data_upload_size", "data transfer parameters are required"});
  } else if (usage.transfer_in_gb->sign() < 0) {
    out.push_back({"data_upload_size", "must be >= 0"});
  }
  if (!usage.transfer_out_gb) {
    out.push_back({"data_download_size", "data transfer parameters are required"});
  } else if (usage.transfer_out_gb->sign() < 0) {
    out.push_back({"data_download_size", "must be >= 0"});
  }
  if (usage.duration_days.sign() <= 0) out.push_back({"duration", "must be > 0"});
  for (const auto& [op, count] : usage.request_counts) {
    if (count < 0) {
      std::string name(to_string(op));
      std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
      out.push_back({name, "request count must be >= 0"});
    }
  }
  if (request.include_compute) {
    if (request.compute_requirements.empty()) out.push_back({"ram_range", "at least one compute requirement is needed"});
    for (const auto& req : request.compute_requirements) {
      if (req.ram_range.low.sign() < 0) out.push_back({"ram_range", "bounds must be >= 0"});
      if (req.ram_range.high && *req.ram_range.high < req.ram_range.low) {
        out.push_back({"ram_range", "low bound exceeds high bound"});
      }
      if (req.local_storage_range.low.sign() < 0) out.push_back({"storage_range", "bounds must be >= 0"});
      if (req.local_storage_range.high && *req.local_storage_range.high < req.local_storage_range.low) {
        out.push_back({"storage_range", "low bound exceeds high bound"});
      }
      if (req.hours && req.months) out.push_back({"hour", "give either hours or months, not both"});
      if (req.hours && req.hours->sign() < 0) out.push_back({"hour", "must be >= 0"});
      if (req.months && req.months->sign() < 0) out.push_back({"month", "must be >= 0"});
      if (req.instance_count < 1) out.push_back({"n", "instance count must be >= 1"});
      for (const auto& c : req.extra_criteria) check_criterion(c, true, out);
    }
  }
  for (const auto& c : request.criteria) check_criterion(c, false, out);
  if (!is_supported_currency(request.currency)) {
    out.push_back({"currency", "unknown currency '" + request.currency + "'"});
  }
  if (request.limit && *request.limit == 0) out.push_back({"limit", "must be >= 1"});
  return out;
}

bool location_matches(const std::vector<Location>& region_locations, Location wanted) {
  if (wanted == Location::Any) return true;
  return std::any_of(region_locations.begin(), region_locations.end(),
                     [&](Location l) { return l == wanted || l == Location::Any; });
}

bool compute_matches(const ComputeOffering& offering, const std::string& provider,
                     const std::vector<Location>& locations, const ComputeRequirement& requirement) {
  if (!requirement.ram_range.contains(offering.ram_gb)) return false;
  if (!requirement.local_storage_range.contains(offering.local_storage_gb)) return false;
  for (const auto& c : requirement.extra_criteria) {
    if (!is_numeric(c.parameter)) {
      if (!placement_matches(c, provider, locations)) return false;
      continue;
    }
    const auto* wanted = std::get_if<Decimal>(&c.value);
    if (wanted == nullptr) return false;
    Decimal actual;
    switch (c.parameter) {
      case CriterionParameter::RamGb: actual = offering.ram_gb; break;
      case CriterionParameter::LocalStorageGb: actual = offering.local_storage_gb; break;
      case CriterionParameter::Cores: actual = Decimal(offering.cores); break;
      case CriterionParameter::SpeedGhz: actual = offering.speed_ghz; break;
      default: return false;
    }
    if (!numeric_matches(actual, c.bound, *wanted)) return false;
  }
  return true;
}

std::vector<OfferingRow> filter_compute(const std::vector<OfferingRow>& offerings,
                                        const ComputeRequirement& requirement,
                                        const std::optional<std::vector<std::string>>& provider_filter) {
  std::vector<OfferingRow> out;
  for (const auto& row : offerings) {
    const auto* compute = std::get_if<ComputeOffering>(&row.offering);
    if (compute == nullptr || !in_filter(provider_filter, row.provider)) continue;
    if (compute_matches(*compute, row.provider, row.locations, requirement)) out.push_back(row);
  }
  return out;
}

std::vector<Candidate> enumerate_candidates(const Catalog& catalog, const SelectionRequest& request) {
  std::vector<Candidate> out;
  const std::size_t slots = request.include_compute ? request.compute_requirements.size() : 0;
  for (std::size_t pi = 0; pi < catalog.providers.size(); ++pi) {
    const Provider& provider = catalog.providers[pi];
    if (!in_filter(request.provider_filter, provider.name)) continue;
    for (std::size_t ri = 0; ri < provider.regions.size(); ++ri) {
      const Region& region = provider.regions[ri];
      if (region.transfer.empty()) continue;
      const bool placed = std::all_of(request.criteria.begin(), request.criteria.end(), [&](const Criterion& c) {
        return is_numeric(c.parameter) || placement_matches(c, provider.name, region.locations);
      });
      if (!placed) continue;

      std::vector<std::optional<std::size_t>> storage_options;
      if (request.include_storage) {
        for (std::size_t si = 0; si < region.storage.size(); ++si) {
          const bool fits = std::all_of(request.criteria.begin(), request.criteria.end(), [&](const Criterion& c) {
            if (c.parameter != CriterionParameter::StorageGb) return true;
            const auto* gb = std::get_if<Decimal>(&c.value);
            return gb != nullptr && storage_size_matches(region.storage[si], c.bound, *gb);
          });
          if (fits) storage_options.emplace_back(si);
        }
        if (storage_options.empty()) continue;
      } else {
        storage_options.emplace_back(std::nullopt);
      }

      std::vector<std::vector<std::size_t>> compute_options(slots);
      bool feasible = true;
      for (std::size_t k = 0; k < slots; ++k) {
        for (std::size_t ci = 0; ci < region.compute.size(); ++ci) {
          if (compute_matches(region.compute[ci], provider.name, region.locations, request.compute_requirements[k])) {
            compute_options[k].push_back(ci);
          }
        }
        feasible = feasible && !compute_options[k].empty();
      }
      if (!feasible) continue;

      for (const auto& storage : storage_options) {
        std::vector<std::size_t> odometer(slots, 0);
        do {
          std::vector<std::size_t> compute(slots);
          for (std::size_t k = 0; k < slots; ++k) compute[k] = compute_options[k][odometer[k]];
          for (std::size_t ti = 0; ti < region.transfer.size(); ++ti) {
            out.push_back(Candidate{pi, ri, storage, compute, ti});
          }
        } while (advance(odometer, compute_options));
      }
    }
  }
  return out;
}

CostBreakdown cost_candidate(const Catalog& catalog, const Candidate& candidate, const SelectionRequest& request,
                             std::vector<ComputeChoice>* compute_choices) {
  const Region& region = catalog.providers.at(candidate.provider).regions.at(candidate.region);
  const auto& usage = request.usage;
  Decimal storage;
  Decimal requests;
  if (candidate.storage) {
    const StorageOffering& s = region.storage.at(*candidate.storage);
    storage = storage_offering_cost(s, usage.storage_gb.value_or(Decimal()), usage.duration_days);
    requests = requests_cost(s, usage.request_counts);
  }
  const TransferOffering& t = region.transfer.at(candidate.transfer);
  const Decimal in = tiered_cost(t.in_tiers, usage.transfer_in_gb.value_or(Decimal()));
  const Decimal out = tiered_cost(t.out_tiers, usage.transfer_out_gb.value_or(Decimal()));
  Decimal compute;
  for (std::size_t k = 0; k < candidate.compute.size(); ++k) {
    const ComputeOffering& c = region.compute.at(candidate.compute[k]);
    const ComputeRequirement& req = request.compute_requirements.at(k);
    const Decimal hours = req.effective_hours();
    const Decimal cost = compute_offering_cost(c, hours, req.instance_count, usage.duration_days);
    compute += cost;
    if (compute_choices != nullptr) compute_choices->push_back({c.name, hours, req.instance_count, cost});
  }
  return CostBreakdown::make(storage, requests, in, out, compute);
}

bool recommendation_less(const Recommendation& a, const Recommendation& b) {
  auto names = [](const Recommendation& r) {
    std::vector<std::string> compute;
    for (const auto& c : r.compute) compute.push_back(c.offering);
    return std::make_tuple(r.storage_offering.value_or(""), compute, r.transfer_offering);
  };
  // USD first: converted totals are sums of rounded components and may tie or
  // swap where the USD totals do not.
  const auto ka = std::tie(a.usd_total, a.breakdown.total, a.provider_name, a.region_name);
  const auto kb = std::tie(b.usd_total, b.breakdown.total, b.provider_name, b.region_name);
  return ka < kb || (ka == kb && names(a) < names(b));
}

std::vector<Recommendation> select(const SelectionRequest& request, const Catalog& catalog, const RateTable& rates) {
  const auto issues = validate_request(request);
  if (!issues.empty()) throw ValidationError(issues.front().param, issues.front().message);
  convert_currency(Decimal(), request.currency, rates);  // fail fast on a currency without a rate

  std::vector<Recommendation> out;
  for (const Candidate& candidate : enumerate_candidates(catalog, request)) {
    std::vector<ComputeChoice> choices;
    CostBreakdown usd;
    try {
      usd = cost_candidate(catalog, candidate, request, &choices);
    } catch (const CapacityError&) {
      continue;
    }
    const Provider& provider = catalog.providers[candidate.provider];
    const Region& region = provider.regions[candidate.region];
    Recommendation rec;
    rec.provider_name = provider.name;
    rec.region_name = region.name;
    if (candidate.storage) rec.storage_offering = region.storage[*candidate.storage].name;
    rec.transfer_offering = region.transfer[candidate.transfer].name;
    rec.currency = request.currency;
    Decimal compute_total;
    for (auto& choice : choices) {
      choice.cost = convert_currency(choice.cost, request.currency, rates);
      compute_total += choice.cost;
    }
    rec.compute = std::move(choices);
    rec.breakdown = CostBreakdown::make(convert_currency(usd.storage_cost, request.currency, rates),
                                        convert_currency(usd.requests_cost, request.currency, rates),
                                        convert_currency(usd.transfer_in_cost, request.currency, rates),
                                        convert_currency(usd.transfer_out_cost, request.currency, rates),
                                        compute_total);
    rec.usd_total = usd.total;
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), recommendation_less);
  if (request.limit && out.size() > *request.limit) out.resize(*request.limit);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

OfferCountReport offer_count(const Catalog& catalog) {
  OfferCountReport report;
  for (const auto& p : catalog.providers) {
    std::map<std::string, std::uint64_t> compute;
    std::map<std::string, std::uint64_t> storage;
    std::map<std::string, std::uint64_t> transfer;
    for (const auto& r : p.regions) {
      collect_tiers(r.compute, compute);
      collect_tiers(r.storage, storage);
      collect_tiers(r.transfer, transfer);
      report.candidate_rows += static_cast<std::uint64_t>(r.compute.size()) * r.storage.size() * r.transfer.size();
    }
    ProviderOfferCount count;
    count.regions = p.regions.size();
    count.compute = compute.size();
    count.storage = storage.size();
    count.transfer = transfer.size();
    count.compute_tiers = sum_values(compute);
    count.storage_tiers = sum_values(storage);
    count.transfer_tiers = sum_values(transfer);
    count.simple = static_cast<std::uint64_t>(count.compute) * count.storage * count.transfer;
    count.detailed = static_cast<std::uint64_t>(count.compute_tiers) * count.storage_tiers * count.transfer_tiers *
                     count.regions;
    report.simple_count += count.simple;
    report.detailed_count += count.detailed;
    report.per_provider[p.name] = count;
  }
  report.candidate_columns = report.candidate_rows == 0 ? 0 : kCandidateColumns;
  return report;
}

}  // namespace cloudsel
