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

#include <atomic>
#include <thread>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "cloudsel/catalog.hpp"
#include "cloudsel/errors.hpp"
#include "test_support.hpp"

namespace cloudsel {
namespace {

using namespace decimal_literals;
using ::testing::HasSubstr;
using testing::fixture_path;
using testing::reference_catalog;

Catalog mini() { return load_catalog_file(fixture_path("mini_catalog.json")); }

// Loads `json` expecting a ParseError; returns it.
ParseError parse_failure(const std::string& json) {
  try {
    load_catalog(json);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for " << json;
  return ParseError("", "");
}

std::string invariant_failure(const std::string& json) {
  try {
    load_catalog(json);
  } catch (const InvariantError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no InvariantError for " << json;
  return "";
}

std::string one_compute(const std::string& compute) {
  return R"({"providers":[{"name":"P","regions":[{"name":"R","location":"Asia","compute":[)" + compute + "]}]}]}";
}

TEST(Catalog, LoadsTheReferenceFixture) {
  const Catalog c = reference_catalog(false);
  ASSERT_EQ(c.providers.size(), 9u);
  EXPECT_EQ(c.base_currency, "USD");
  const Provider* azure = c.find_provider("Windows Azure");
  ASSERT_NE(azure, nullptr);
  EXPECT_EQ(azure->regions.size(), 3u);
  EXPECT_EQ(c.find_provider("Nobody"), nullptr);
}

TEST(Catalog, MergesRegionsWithIdenticalPrices) {
  const Catalog c = reference_catalog(true);
  const Provider* azure = c.find_provider("Windows Azure");
  ASSERT_EQ(azure->regions.size(), 2u);
  EXPECT_EQ(azure->regions[0].name, "North America and Europe");
  EXPECT_EQ(azure->regions[0].locations, (std::vector<Location>{Location::NorthAmerica, Location::Europe}));
  EXPECT_EQ(azure->regions[1].name, "Asia Pacific Region");
}

TEST(Catalog, MergeKeepsRegionsThatDifferInAnyPrice) {
  Provider p = *reference_catalog(false).find_provider("Windows Azure");
  p.regions[1].storage[0].gb_month_tiers.tiers[0].rate = "0.141"_d;
  EXPECT_EQ(merge_equal_price_regions(p).regions.size(), 3u);
}

TEST(Catalog, NormalizesMemoryToGigabytes) {
  EXPECT_EQ(normalize_memory(1024_d, MemoryUnit::MB), 1_d);
  EXPECT_EQ(normalize_memory(1536_d, MemoryUnit::MB), "1.5"_d);
  EXPECT_EQ(normalize_memory(613_d, MemoryUnit::MB), "0.599"_d);
  EXPECT_EQ(normalize_memory("1.75"_d, MemoryUnit::GB), "1.75"_d);
  EXPECT_THROW(normalize_memory(-1_d, MemoryUnit::MB), InvariantError);

  const Catalog c = mini();
  EXPECT_EQ(c.providers[0].regions[0].compute[0].ram_gb, "1.5"_d);
  EXPECT_EQ(reference_catalog().find_provider("Amazon")->regions[0].compute[0].ram_gb, "0.599"_d);
}

TEST(Catalog, NormalizesRequestRatesToPerTenThousand) {
  const Catalog c = mini();
  const auto& requests = c.providers[0].regions[0].storage[0].requests;
  ASSERT_EQ(requests.size(), 2u);
  EXPECT_EQ(requests[0].rate_per_10k, "0.1"_d);
  EXPECT_EQ(requests[0].operations, (std::vector<Operation>{Operation::Put, Operation::Copy}));
  EXPECT_EQ(requests[1].charged, Charge::Charged);
}

TEST(Catalog, ReadsLocationListsAndDefaults) {
  const Catalog c = mini();
  EXPECT_EQ(c.providers[0].regions[1].locations,
            (std::vector<Location>{Location::NorthAmerica, Location::Australia}));
  const StorageOffering& vault = c.providers[1].regions[0].storage[0];
  EXPECT_EQ(vault.min_gb, 10_d);
  EXPECT_EQ(vault.max_gb, std::optional<Decimal>(500_d));
  EXPECT_EQ(vault.plan_type, StoragePlanType::ReducedRedundancy);
  EXPECT_EQ(vault.plan.type, PlanType::OnDemand);
  EXPECT_FALSE(c.providers[0].regions[1].storage[0].max_gb.has_value());
}

TEST(Catalog, SerializationRoundTrips) {
  for (bool merge : {false, true}) {
    const Catalog c = reference_catalog(merge);
    EXPECT_EQ(load_catalog(serialize_catalog(c)), c);
  }
  const Catalog m = mini();
  EXPECT_EQ(load_catalog(serialize_catalog(m)), m);
}

TEST(Catalog, OfferingSerializationRoundTrips) {
  const Catalog c = reference_catalog();
  for (const auto type : {ServiceType::Compute, ServiceType::Storage, ServiceType::Transfer}) {
    for (const auto& row : list_offerings(c, type)) {
      EXPECT_EQ(parse_offering(type, serialize_offering(row.offering)), row.offering) << row.name();
    }
  }
}

TEST(Catalog, SyntaxErrorsReportALine) {
  try {
    load_catalog_file(fixture_path("bad_syntax.json"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "line 4");
  }
}

TEST(Catalog, StructuralErrorsReportTheFieldPath) {
  EXPECT_THAT(parse_failure(one_compute(R"({"name":"x","cores":"two","speed_ghz":1,"ram_gb":1})")).path(),
              HasSubstr("compute[0].cores"));
  EXPECT_THAT(parse_failure(one_compute(R"({"name":"x","cores":1,"speed_ghz":1,"ram_gb":1,"colour":"red"})")).path(),
              HasSubstr("compute[0].colour"));
  EXPECT_THAT(parse_failure(one_compute(R"({"name":"x","cores":1,"speed_ghz":1})")).what(),
              HasSubstr("exactly one of ram_gb or ram_mb"));
  EXPECT_THAT(parse_failure(one_compute(R"({"name":"x","cores":1,"speed_ghz":1,"ram_gb":1,"ram_mb":1024})")).what(),
              HasSubstr("exactly one of ram_gb or ram_mb"));
  EXPECT_THAT(parse_failure(R"({"providers":[{"name":"P","regions":[{"name":"R","location":"Mars"}]}]})").path(),
              HasSubstr("location"));
  EXPECT_THAT(parse_failure(R"({"providers":{}})").path(), HasSubstr("providers"));
}

TEST(Catalog, InvariantViolationsNameTheOffering) {
  try {
    load_catalog_file(fixture_path("bad_cores.json"));
    FAIL() << "expected InvariantError";
  } catch (const InvariantError& e) {
    EXPECT_STREQ(e.what(), "Acme/East/compute/broken: cores must be >= 1");
  }
  EXPECT_THAT(invariant_failure(one_compute(
                  R"({"name":"x","cores":1,"speed_ghz":1,"ram_gb":-2,"billing":{"per_instance_hour":1}})")),
              HasSubstr("P/R/compute/x: RAM capacity must be > 0"));
  EXPECT_THAT(invariant_failure(one_compute(R"({"name":"x","cores":1,"speed_ghz":1,"ram_gb":1})")),
              HasSubstr("hourly price component"));
  EXPECT_THAT(invariant_failure(one_compute(R"({"name":"x","cores":1,"speed_ghz":1,"ram_gb":1,"billing":{"per_instance_hour":1}},)"
                                            R"({"name":"x","cores":2,"speed_ghz":1,"ram_gb":1,"billing":{"per_instance_hour":1}})")),
              HasSubstr("duplicate offering name"));
}

TEST(Catalog, TierSchedulesMustBeWellFormed) {
  auto storage = [](const std::string& tiers) {
    return R"({"providers":[{"name":"P","regions":[{"name":"R","location":"Asia","storage":[{"name":"s","gb_month_tiers":)" +
           tiers + "}]}]}]}";
  };
  EXPECT_THAT(invariant_failure(storage(R"([{"upto":10,"rate":1},{"upto":5,"rate":1}])")),
              HasSubstr("strictly increasing"));
  EXPECT_THAT(invariant_failure(storage(R"([{"upto":null,"rate":1},{"upto":5,"rate":1}])")),
              HasSubstr("not the last tier"));
  EXPECT_THAT(invariant_failure(storage(R"([{"upto":null,"rate":-1}])")), HasSubstr("rate must be >= 0"));
  EXPECT_NO_THROW(load_catalog(storage(R"([{"upto":10,"rate":1},{"upto":null,"rate":0.5}])")));
}

TEST(Catalog, ProviderLevelInvariants) {
  EXPECT_THAT(invariant_failure(R"({"base_currency":"EUR","providers":[]})"), HasSubstr("base currency"));
  EXPECT_THAT(invariant_failure(R"({"providers":[{"name":"P","regions":[]}]})"), HasSubstr("at least one region"));
  EXPECT_THAT(invariant_failure(R"({"providers":[{"name":"P","regions":[{"name":"R","location":"Asia"}]},)"
                                R"({"name":"P","regions":[{"name":"R","location":"Asia"}]}]})"),
              HasSubstr("duplicate provider"));
}

TEST(Catalog, EnumNamesParseLeniently) {
  EXPECT_EQ(parse_location("north_america"), Location::NorthAmerica);
  EXPECT_EQ(parse_location("North America"), Location::NorthAmerica);
  EXPECT_EQ(parse_location("ASIA"), Location::Asia);
  EXPECT_EQ(parse_location("Mars"), std::nullopt);
  EXPECT_EQ(parse_operation("get"), Operation::Get);
  EXPECT_EQ(parse_operation("Any"), Operation::Any);
  EXPECT_EQ(parse_operation("fetch"), std::nullopt);
  EXPECT_EQ(parse_service_type("storage"), ServiceType::Storage);
}

TEST(Catalog, ListsOfferingsByPatternAndProvider) {
  const Catalog c = reference_catalog();
  const auto micro = list_offerings(c, ServiceType::Compute, std::string("^t1\\."));
  ASSERT_EQ(micro.size(), 2u);
  EXPECT_EQ(micro[0].provider, "Amazon");
  EXPECT_EQ(micro[0].region, "Asia Pacific(Tokyo)");

  const auto azure_storage = list_offerings(c, ServiceType::Storage, std::nullopt, std::vector<std::string>{"Windows Azure"});
  EXPECT_EQ(azure_storage.size(), 2u);
  for (const auto& row : azure_storage) EXPECT_EQ(row.type(), ServiceType::Storage);

  EXPECT_EQ(list_offerings(c, ServiceType::Transfer).size(), 12u);
  try {
    list_offerings(c, ServiceType::Compute, std::string("(unclosed"));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.param(), "pattern");
  }
}

TEST(Catalog, UpsertReplacesInsertsAndBumpsTheVersion) {
  const Catalog before = mini();
  ComputeOffering a1 = before.providers[0].regions[0].compute[0];
  a1.billing.per_instance_hour = "0.07"_d;
  const Catalog replaced = upsert_offering(before, "Acme", std::string("East"), a1);
  EXPECT_EQ(replaced.providers[0].regions[0].compute.size(), 2u);
  EXPECT_EQ(replaced.providers[0].regions[0].compute[0].billing.per_instance_hour, "0.07"_d);
  EXPECT_NE(replaced.version, before.version);
  EXPECT_EQ(before.providers[0].regions[0].compute[0].billing.per_instance_hour, "0.05"_d);

  const Offering huge = parse_offering(ServiceType::Compute, testing::read_file(fixture_path("offering_compute.json")));
  const Catalog inserted = upsert_offering(before, "Initech", std::nullopt, huge);
  const Provider* initech = inserted.find_provider("Initech");
  ASSERT_NE(initech, nullptr);
  EXPECT_EQ(initech->regions[0].name, "Any");
  EXPECT_EQ(initech->regions[0].locations, std::vector<Location>{Location::Any});
  EXPECT_EQ(initech->regions[0].compute[0].name, "c9.huge");

  const Catalog twice = upsert_offering(upsert_offering(before, "Acme", std::string("East"), a1), "Acme",
                                        std::string("East"), a1);
  EXPECT_NE(twice.version, replaced.version);
}

TEST(Catalog, UpsertRejectsInvalidOfferings) {
  ComputeOffering bad;
  bad.name = "bad";
  bad.cores = 0;
  bad.speed_ghz = 1_d;
  bad.ram_gb = 1_d;
  bad.billing.per_instance_hour = 1_d;
  EXPECT_THROW(upsert_offering(mini(), "Acme", std::string("East"), bad), InvariantError);
}

TEST(CatalogStore, SnapshotsAreIsolatedFromLaterWrites) {
  CatalogStore store(mini());
  auto before = store.snapshot();
  const Offering huge = parse_offering(ServiceType::Compute, testing::read_file(fixture_path("offering_compute.json")));
  auto after = store.upsert("Acme", std::string("East"), huge);
  EXPECT_EQ(before->providers[0].regions[0].compute.size(), 2u);
  EXPECT_EQ(after->providers[0].regions[0].compute.size(), 3u);
  EXPECT_EQ(store.snapshot(), after);
}

TEST(CatalogStore, ConcurrentReadersSeeWholeSnapshots) {
  CatalogStore store(mini());
  std::atomic<bool> done{false};
  std::atomic<int> torn{0};
  std::vector<std::thread> readers;
  for (int i = 0; i < 3; ++i) {
    readers.emplace_back([&] {
      while (!done) {
        auto snap = store.snapshot();
        if (catalog_violations(*snap).size() != 0) ++torn;
      }
    });
  }
  ComputeOffering c = mini().providers[0].regions[0].compute[0];
  for (int i = 0; i < 200; ++i) {
    c.billing.per_instance_hour = Decimal(i + 1) / 100_d;
    store.upsert("Acme", std::string("East"), c);
  }
  done = true;
  for (auto& t : readers) t.join();
  EXPECT_EQ(torn.load(), 0);
  EXPECT_EQ(store.snapshot()->providers[0].regions[0].compute[0].billing.per_instance_hour, 2_d);
}

}  // namespace
}  // namespace cloudsel
