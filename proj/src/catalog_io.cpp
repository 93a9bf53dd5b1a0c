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

// Catalog file reader/writer. The format is documented in
// docs/catalog.schema.json.

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "cloudsel/catalog.hpp"
#include "cloudsel/errors.hpp"
#include "json_decimal.hpp"

namespace cloudsel {

namespace {

using nlohmann::json;

/// Cursor over a JSON value that remembers its field path for error messages.
class Node {
 public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& value() const { return value_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(path_, message); }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!value_.is_object()) fail("expected an object");
    for (const auto& [key, _] : value_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ParseError(child_path(key), "unknown field");
      }
    }
  }

  bool has(std::string_view key) const { return value_.contains(key) && !value_.at(std::string(key)).is_null(); }

  Node at(std::string_view key) const {
    if (!value_.contains(key)) throw ParseError(child_path(key), "missing required field");
    return Node(value_.at(std::string(key)), child_path(key));
  }

  std::vector<Node> array(std::string_view key) const {
    std::vector<Node> out;
    if (!has(key)) return out;
    Node arr = at(key);
    if (!arr.value_.is_array()) arr.fail("expected an array");
    for (std::size_t i = 0; i < arr.value_.size(); ++i) {
      out.emplace_back(arr.value_[i], arr.path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  std::string str() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  Decimal dec() const {
    try {
      return json_to_decimal(value_);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  std::optional<Decimal> opt_dec(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return at(key).dec();
  }

  Decimal dec_or(std::string_view key, Decimal fallback) const { return opt_dec(key).value_or(fallback); }

  int integer() const {
    if (!value_.is_number_integer()) fail("expected an integer");
    return value_.get<int>();
  }

 private:
  std::string child_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json& value_;
  std::string path_;
};

TierSchedule read_tiers(const Node& parent, std::string_view key) {
  TierSchedule schedule;
  for (const Node& t : parent.array(key)) {
    t.expect_object({"upto", "rate"});
    schedule.tiers.push_back(Tier{t.opt_dec("upto"), t.at("rate").dec()});
  }
  return schedule;
}

PlanPricing read_plan(const Node& parent) {
  PlanPricing plan;
  if (!parent.has("plan")) return plan;
  Node n = parent.at("plan");
  n.expect_object({"type", "per_period_cost", "period_length_days", "overage_rate", "included_units"});
  const std::string type = n.at("type").str();
  if (type == "on_demand") {
    plan.type = PlanType::OnDemand;
  } else if (type == "period") {
    plan.type = PlanType::Period;
  } else {
    n.at("type").fail("expected \"on_demand\" or \"period\"");
  }
  plan.per_period_cost = n.dec_or("per_period_cost", 0);
  if (n.has("period_length_days")) plan.period_length_days = n.at("period_length_days").integer();
  plan.overage_rate = n.dec_or("overage_rate", 0);
  plan.included_units = n.dec_or("included_units", 0);
  return plan;
}

ComputeOffering read_compute(const Node& n) {
  n.expect_object({"name", "cores", "speed_ghz", "ram_gb", "ram_mb", "local_storage_gb", "billing", "plan"});
  ComputeOffering o;
  o.name = n.at("name").str();
  o.cores = n.at("cores").integer();
  o.speed_ghz = n.at("speed_ghz").dec();
  if (n.has("ram_gb") == n.has("ram_mb")) n.fail("exactly one of ram_gb or ram_mb is required");
  const bool in_mb = n.has("ram_mb");
  const Decimal ram = n.at(in_mb ? "ram_mb" : "ram_gb").dec();
  // Negative sizes are left for validate_catalog() to report with the full offering path.
  o.ram_gb = ram.sign() < 0 ? ram : normalize_memory(ram, in_mb ? MemoryUnit::MB : MemoryUnit::GB);
  o.local_storage_gb = n.dec_or("local_storage_gb", 0);
  if (n.has("billing")) {
    Node b = n.at("billing");
    b.expect_object({"per_instance_hour", "per_ram_gb_hour", "per_vcpu_hour"});
    o.billing.per_instance_hour = b.dec_or("per_instance_hour", 0);
    o.billing.per_ram_gb_hour = b.dec_or("per_ram_gb_hour", 0);
    o.billing.per_vcpu_hour = b.dec_or("per_vcpu_hour", 0);
  }
  o.plan = read_plan(n);
  return o;
}

RequestPricing read_request(const Node& n) {
  n.expect_object({"ops", "rate_per_10k", "rate", "per", "charged"});
  RequestPricing r;
  for (const Node& op : n.array("ops")) {
    auto parsed = parse_operation(op.str());
    if (!parsed) op.fail("unknown request operation '" + op.str() + "'");
    r.operations.push_back(*parsed);
  }
  if (n.has("rate_per_10k")) {
    r.rate_per_10k = n.at("rate_per_10k").dec();
  } else if (n.has("rate")) {
    // Quoted per some other number of requests; normalize to per 10,000.
    const Decimal per = n.dec_or("per", 10000);
    if (per.sign() <= 0) n.at("per").fail("must be > 0");
    r.rate_per_10k = n.at("rate").dec() * Decimal(10000) / per;
  }
  if (n.has("charged")) {
    const std::string c = n.at("charged").str();
    if (c == "charged") {
      r.charged = Charge::Charged;
    } else if (c == "free") {
      r.charged = Charge::Free;
    } else if (c == "unspecified") {
      r.charged = Charge::Unspecified;
    } else {
      n.at("charged").fail("expected charged, free or unspecified");
    }
  }
  return r;
}

StorageOffering read_storage(const Node& n) {
  n.expect_object({"name", "min_gb", "max_gb", "gb_month_tiers", "requests", "plan_type", "plan"});
  StorageOffering o;
  o.name = n.at("name").str();
  o.min_gb = n.dec_or("min_gb", 0);
  o.max_gb = n.opt_dec("max_gb");
  o.gb_month_tiers = read_tiers(n, "gb_month_tiers");
  for (const Node& r : n.array("requests")) o.requests.push_back(read_request(r));
  if (n.has("plan_type")) {
    const std::string t = n.at("plan_type").str();
    if (t == "pay_as_you_go") {
      o.plan_type = StoragePlanType::PayAsYouGo;
    } else if (t == "reduced_redundancy") {
      o.plan_type = StoragePlanType::ReducedRedundancy;
    } else {
      n.at("plan_type").fail("expected pay_as_you_go or reduced_redundancy");
    }
  }
  o.plan = read_plan(n);
  return o;
}

TransferOffering read_transfer(const Node& n) {
  n.expect_object({"name", "in_tiers", "out_tiers"});
  return TransferOffering{n.at("name").str(), read_tiers(n, "in_tiers"), read_tiers(n, "out_tiers")};
}

Region read_region(const Node& n) {
  n.expect_object({"name", "location", "compute", "storage", "transfer"});
  Region r;
  r.name = n.at("name").str();
  Node loc = n.at("location");
  auto add_location = [&](const Node& l) {
    auto parsed = parse_location(l.str());
    if (!parsed) l.fail("unknown location '" + l.str() + "'");
    r.locations.push_back(*parsed);
  };
  if (loc.value().is_array()) {
    for (const Node& l : n.array("location")) add_location(l);
  } else {
    add_location(loc);
  }
  for (const Node& o : n.array("compute")) r.compute.push_back(read_compute(o));
  for (const Node& o : n.array("storage")) r.storage.push_back(read_storage(o));
  for (const Node& o : n.array("transfer")) r.transfer.push_back(read_transfer(o));
  return r;
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line), "invalid JSON");
  }
}

json write_tiers(const TierSchedule& s) {
  json arr = json::array();
  for (const auto& t : s.tiers) {
    arr.push_back({{"upto", t.upto ? decimal_to_json(*t.upto) : json(nullptr)}, {"rate", decimal_to_json(t.rate)}});
  }
  return arr;
}

json write_plan(const PlanPricing& p) {
  if (p.type == PlanType::OnDemand) return {{"type", "on_demand"}};
  return {{"type", "period"},
          {"per_period_cost", decimal_to_json(p.per_period_cost)},
          {"period_length_days", p.period_length_days},
          {"overage_rate", decimal_to_json(p.overage_rate)},
          {"included_units", decimal_to_json(p.included_units)}};
}

json write_offering(const ComputeOffering& o) {
  return {{"name", o.name},
          {"cores", o.cores},
          {"speed_ghz", decimal_to_json(o.speed_ghz)},
          {"ram_gb", decimal_to_json(o.ram_gb)},
          {"local_storage_gb", decimal_to_json(o.local_storage_gb)},
          {"billing",
           {{"per_instance_hour", decimal_to_json(o.billing.per_instance_hour)},
            {"per_ram_gb_hour", decimal_to_json(o.billing.per_ram_gb_hour)},
            {"per_vcpu_hour", decimal_to_json(o.billing.per_vcpu_hour)}}},
          {"plan", write_plan(o.plan)}};
}

json write_offering(const StorageOffering& o) {
  json requests = json::array();
  for (const auto& r : o.requests) {
    json ops = json::array();
    for (Operation op : r.operations) ops.push_back(std::string(to_string(op)));
    requests.push_back(
        {{"ops", ops}, {"rate_per_10k", decimal_to_json(r.rate_per_10k)}, {"charged", std::string(to_string(r.charged))}});
  }
  return {{"name", o.name},
          {"min_gb", decimal_to_json(o.min_gb)},
          {"max_gb", o.max_gb ? decimal_to_json(*o.max_gb) : json(nullptr)},
          {"plan_type", std::string(to_string(o.plan_type))},
          {"gb_month_tiers", write_tiers(o.gb_month_tiers)},
          {"requests", requests},
          {"plan", write_plan(o.plan)}};
}

json write_offering(const TransferOffering& o) {
  return {{"name", o.name}, {"in_tiers", write_tiers(o.in_tiers)}, {"out_tiers", write_tiers(o.out_tiers)}};
}

template <typename T>
json write_list(const std::vector<T>& items) {
  json arr = json::array();
  for (const auto& o : items) arr.push_back(write_offering(o));
  return arr;
}

}  // namespace

Catalog load_catalog(std::string_view text, const LoadOptions& options) {
  const json doc = parse_json_text(text);
  Node root(doc, "");
  root.expect_object({"base_currency", "version", "providers"});
  Catalog catalog;
  catalog.base_currency = root.has("base_currency") ? root.at("base_currency").str() : "USD";
  catalog.version = root.has("version") ? root.at("version").str() : "";
  for (const Node& p : root.array("providers")) {
    p.expect_object({"name", "regions"});
    Provider provider{p.at("name").str(), {}};
    for (const Node& r : p.array("regions")) provider.regions.push_back(read_region(r));
    catalog.providers.push_back(std::move(provider));
  }
  validate_catalog(catalog);
  if (options.merge_regions) {
    for (auto& p : catalog.providers) p = merge_equal_price_regions(p);
  }
  return catalog;
}

Catalog load_catalog_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read catalog file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_catalog(buf.str(), options);
}

std::string serialize_catalog(const Catalog& catalog) {
  json providers = json::array();
  for (const auto& p : catalog.providers) {
    json regions = json::array();
    for (const auto& r : p.regions) {
      json loc;
      if (r.locations.size() == 1) {
        loc = std::string(to_string(r.locations.front()));
      } else {
        loc = json::array();
        for (Location l : r.locations) loc.push_back(std::string(to_string(l)));
      }
      regions.push_back({{"name", r.name},
                         {"location", loc},
                         {"compute", write_list(r.compute)},
                         {"storage", write_list(r.storage)},
                         {"transfer", write_list(r.transfer)}});
    }
    providers.push_back({{"name", p.name}, {"regions", regions}});
  }
  json doc = {{"base_currency", catalog.base_currency}, {"version", catalog.version}, {"providers", providers}};
  return doc.dump(2) + "\n";
}

Offering parse_offering(ServiceType type, std::string_view json_text) {
  const json doc = parse_json_text(json_text);
  Node n(doc, "offering");
  switch (type) {
    case ServiceType::Compute: return read_compute(n);
    case ServiceType::Storage: return read_storage(n);
    case ServiceType::Transfer: return read_transfer(n);
  }
  throw ParseError("offering", "unknown service type");
}

std::string serialize_offering(const Offering& offering) {
  return std::visit([](const auto& o) { return write_offering(o).dump(); }, offering);
}

}  // namespace cloudsel
