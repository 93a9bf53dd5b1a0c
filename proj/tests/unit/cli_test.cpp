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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cloudsel/api.hpp"
#include "test_support.hpp"

namespace {

using cloudsel::testing::data_path;
using cloudsel::testing::fixture_path;
using cloudsel::testing::run_process;
using nlohmann::json;

std::vector<std::string> cli(std::vector<std::string> args) {
  args.insert(args.begin(), CLOUDSEL_CLI);
  return args;
}

std::vector<std::string> select_cmd(std::vector<std::string> args) {
  std::vector<std::string> out = {"select", "--catalog", data_path("catalog_2012.json"), "--rates",
                                  data_path("rates_2012.json"), "--merge-regions"};
  out.insert(out.end(), args.begin(), args.end());
  return cli(out);
}

TEST(Cli, ValidateExitCodes) {
  EXPECT_EQ(run_process(cli({"validate", data_path("catalog_2012.json")})).exit_code, 0);
  const auto bad = run_process(cli({"validate", fixture_path("bad_cores.json")}));
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.err.find("Acme/East/compute/broken"), std::string::npos) << bad.err;
  EXPECT_EQ(run_process(cli({"validate", "/nonexistent/catalog.json"})).exit_code, 2);
  EXPECT_EQ(run_process(cli({"validate", fixture_path("bad_syntax.json")})).exit_code, 1);
}

TEST(Cli, SelectPrintsTheRankedTable) {
  const auto r = run_process(select_cmd({"storage", "--currency", "AUD", "--storage", "50", "--in", "50", "--out",
                                         "10", "--copy", "1000", "--get", "5000"}));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  if (first.find_first_not_of("-+ ") == std::string::npos) std::getline(lines, first);
  EXPECT_NE(header.find("storage_dataTransfer_cost"), std::string::npos);
  EXPECT_EQ(first.rfind("SoftLayer", 0), 0u) << first;
  EXPECT_NE(first.find("7.000"), std::string::npos) << first;
}

TEST(Cli, ZeroUsageGivesZeroTotals) {
  const auto r = run_process(select_cmd({"storage", "--format", "json", "--storage", "0", "--in", "0", "--out", "0"}));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  for (const json& row : json::parse(r.out)["rows"]) EXPECT_EQ(row["total"], "0.000");
}

TEST(Cli, JsonOutputMatchesTheApi) {
  const std::string qs =
      "currency=AUD&storage=10&duration=31&data_upload_size=2&data_download_size=3&ram_range=0%2C69"
      "&storage_range=0%2C2040&hour=744&n=1";
  cloudsel::api::Service service(std::make_shared<cloudsel::CatalogStore>(cloudsel::testing::reference_catalog()),
                                 cloudsel::testing::reference_rates());
  const auto api = service.cost(cloudsel::api::Endpoint::Combined, cloudsel::api::parse_query_string(qs),
                                cloudsel::api::Format::Json);
  const auto r = run_process(select_cmd({"combined", "--format", "json", "--currency", "AUD", "--storage", "10",
                                         "--in", "2", "--out", "3", "--ram-range", "0,69", "--storage-range",
                                         "0,2040", "--hour", "744", "-n", "1"}));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(cloudsel::testing::normalize_json(r.out), cloudsel::testing::normalize_json(api.body));
}

TEST(Cli, ErrorsNameTheFlag) {
  const auto mismatch = run_process(select_cmd({"combined", "--storage", "1", "--in", "1", "--out", "1",
                                                "--ram-range", "0,69", "--n", "1,2"}));
  EXPECT_EQ(mismatch.exit_code, 1);
  EXPECT_NE(mismatch.err.find("--n"), std::string::npos) << mismatch.err;
  EXPECT_NE(mismatch.err.find("equal lengths"), std::string::npos) << mismatch.err;

  const auto missing = run_process(select_cmd({"storage", "--in", "1", "--out", "1"}));
  EXPECT_EQ(missing.exit_code, 1);
  EXPECT_NE(missing.err.find("--storage"), std::string::npos) << missing.err;

  EXPECT_EQ(run_process(select_cmd({"storage", "--bogus", "1"})).exit_code, 2);
  EXPECT_EQ(run_process(cli({})).exit_code, 2);
}

TEST(Cli, ListOfferCountAndUpsert) {
  const std::string catalog = data_path("catalog_2012.json");
  const auto list = run_process(cli({"list", "compute", "--catalog", catalog, "--pattern", "^m2\\.",
                                     "--providers", "Amazon"}));
  ASSERT_EQ(list.exit_code, 0) << list.err;
  const json rows = json::parse(list.out);
  ASSERT_FALSE(rows.empty());
  for (const json& row : rows) EXPECT_EQ(row["provider"], "Amazon");
  EXPECT_EQ(run_process(cli({"list", "compute", "--catalog", catalog, "--pattern", "("})).exit_code, 1);

  const auto count = run_process(cli({"offer-count", "--catalog", catalog, "--merge-regions"}));
  ASSERT_EQ(count.exit_code, 0) << count.err;
  EXPECT_EQ(json::parse(count.out)["candidate_rows"], 28);

  const std::string out = (std::filesystem::temp_directory_path() / "cloudsel_cli_upsert.json").string();
  const auto up = run_process(cli({"upsert", "--catalog", catalog, "--provider", "NewCo", "--type", "compute",
                                   "--offering", fixture_path("offering_compute.json"), "--output", out}));
  ASSERT_EQ(up.exit_code, 0) << up.err;
  const auto check = run_process(cli({"list", "compute", "--catalog", out, "--providers", "NewCo"}));
  ASSERT_EQ(check.exit_code, 0) << check.err;
  const json added = json::parse(check.out);
  ASSERT_EQ(added.size(), 1u);
  EXPECT_EQ(added[0]["name"], "c9.huge");
  EXPECT_EQ(added[0]["region"], "Any");
  EXPECT_EQ(run_process(cli({"validate", out})).exit_code, 0);
  std::filesystem::remove(out);
}

}  // namespace
