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

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "cloudsel/cloudsel.h"
#include "test_support.hpp"

namespace {

using cloudsel::testing::data_path;
using cloudsel::testing::fixture_path;
using cloudsel::testing::read_file;
using nlohmann::json;

constexpr const char* kStorageQuery =
    "currency=AUD&storage=50&duration=31&data_upload_size=50&data_download_size=10&copy=1000&get=5000";

std::string take(char* s) {
  std::string out = s ? s : "";
  cs_string_free(s);
  return out;
}

struct Engine {
  cs_catalog* catalog = nullptr;
  cs_engine* engine = nullptr;

  Engine() {
    EXPECT_EQ(cs_catalog_load_file(data_path("catalog_2012.json").c_str(), 1, &catalog), CS_OK) << cs_last_error();
    EXPECT_EQ(cs_engine_create(catalog, data_path("rates_2012.json").c_str(), &engine), CS_OK) << cs_last_error();
  }
  ~Engine() {
    cs_engine_free(engine);
    cs_catalog_free(catalog);
  }

  std::pair<int, std::string> query(cs_query_kind kind, const char* qs, cs_format format = CS_FORMAT_JSON) {
    int status = 0;
    char* body = nullptr;
    cs_engine_query(engine, kind, qs, format, &status, &body);
    return {status, take(body)};
  }
};

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(cs_version(), "1.0.0");
  EXPECT_STREQ(cs_status_name(CS_OK), "ok");
  EXPECT_STREQ(cs_status_name(CS_ERR_VALIDATION), "validation error");
  cs_string_free(nullptr);
}

TEST(CApi, NullArgumentsAreRejected) {
  cs_catalog* c = nullptr;
  EXPECT_EQ(cs_catalog_load_file(nullptr, 1, &c), CS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cs_catalog_load_text("{}", 1, nullptr), CS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cs_engine_create(nullptr, nullptr, nullptr), CS_ERR_INVALID_ARGUMENT);
  cs_catalog_free(nullptr);
  cs_engine_free(nullptr);
  cs_server_free(nullptr);
}

TEST(CApi, LoadErrorsCarryStatusAndPath) {
  cs_catalog* c = nullptr;
  EXPECT_EQ(cs_catalog_load_file("/nonexistent/catalog.json", 1, &c), CS_ERR_IO);
  EXPECT_EQ(c, nullptr);
  EXPECT_EQ(cs_catalog_load_file(fixture_path("bad_syntax.json").c_str(), 1, &c), CS_ERR_PARSE);
  EXPECT_NE(std::strstr(cs_last_error(), "line 4"), nullptr);
  EXPECT_EQ(cs_catalog_load_file(fixture_path("bad_cores.json").c_str(), 1, &c), CS_ERR_INVARIANT);
  EXPECT_NE(std::strstr(cs_last_error(), "cores must be >= 1"), nullptr);
}

TEST(CApi, StorageQueryMatchesTheRankedTable) {
  Engine e;
  auto [status, body] = e.query(CS_QUERY_STORAGE, kStorageQuery);
  ASSERT_EQ(status, 200) << body;
  const json doc = json::parse(body);
  EXPECT_EQ(doc["rows"].size(), 12u);
  EXPECT_EQ(doc["rows"][0]["provider_name"], "SoftLayer");
  EXPECT_EQ(doc["rows"][0]["total"], "7.000");

  int fetched_status = 0;
  char* fetched = nullptr;
  const std::string id = doc["meta"]["result_id"];
  EXPECT_EQ(cs_engine_fetch_result(e.engine, id.c_str(), CS_FORMAT_JSON, &fetched_status, &fetched), CS_OK);
  EXPECT_EQ(fetched_status, 200);
  EXPECT_EQ(json::parse(take(fetched))["rows"].size(), 12u);
  EXPECT_EQ(cs_engine_fetch_result(e.engine, "missing", CS_FORMAT_JSON, &fetched_status, &fetched), CS_ERR_NOT_FOUND);
  EXPECT_EQ(fetched_status, 404);
  take(fetched);
}

TEST(CApi, RejectedQueriesReportTheParameter) {
  Engine e;
  int status = 0;
  char* body = nullptr;
  EXPECT_EQ(cs_engine_query(e.engine, CS_QUERY_STORAGE, "data_upload_size=1&data_download_size=1", CS_FORMAT_TABLE,
                            &status, &body),
            CS_ERR_VALIDATION);
  EXPECT_EQ(status, 400);
  EXPECT_STREQ(cs_last_error_param(), "storage");
  EXPECT_EQ(take(body).rfind("error (storage)", 0), 0u);
}

TEST(CApi, UpsertIsVisibleToExistingEngines) {
  Engine e;
  const std::string offering = read_file(fixture_path("offering_compute.json"));
  ASSERT_EQ(cs_catalog_upsert_json(e.catalog, "Amazon", "Asia Pacific(Tokyo)", CS_SERVICE_COMPUTE, offering.c_str()),
            CS_OK)
      << cs_last_error();
  char* list = nullptr;
  ASSERT_EQ(cs_catalog_list_offerings(e.catalog, CS_SERVICE_COMPUTE, "^c9", nullptr, &list), CS_OK);
  const json rows = json::parse(take(list));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0]["provider"], "Amazon");

  auto [status, body] = e.query(CS_QUERY_COMPUTE, "data_upload_size=0&data_download_size=0&hour=1&providers=Amazon");
  ASSERT_EQ(status, 200);
  EXPECT_NE(body.find("c9.huge"), std::string::npos);

  EXPECT_EQ(cs_catalog_upsert_json(e.catalog, "Amazon", nullptr, CS_SERVICE_COMPUTE, "{\"name\":\"x\",\"cores\":0,\"speed_ghz\":1,\"ram_gb\":1}"),
            CS_ERR_INVARIANT);
}

TEST(CApi, OfferCountAndRoundTrip) {
  Engine e;
  char* out = nullptr;
  ASSERT_EQ(cs_catalog_offer_count(e.catalog, &out), CS_OK);
  const json count = json::parse(take(out));
  EXPECT_EQ(count["candidate_rows"], 28);

  ASSERT_EQ(cs_catalog_to_json(e.catalog, &out), CS_OK);
  const std::string text = take(out);
  cs_catalog* again = nullptr;
  ASSERT_EQ(cs_catalog_load_text(text.c_str(), 1, &again), CS_OK);
  ASSERT_EQ(cs_catalog_to_json(again, &out), CS_OK);
  EXPECT_EQ(take(out), text);
  cs_catalog_free(again);

  const std::string path = (std::filesystem::temp_directory_path() / "cloudsel_c_api_roundtrip.json").string();
  ASSERT_EQ(cs_catalog_save_file(e.catalog, path.c_str()), CS_OK);
  EXPECT_EQ(read_file(path), text);
  std::filesystem::remove(path);
}

TEST(CApi, UnknownRatesFileIsAnIoError) {
  Engine e;
  cs_engine* other = nullptr;
  EXPECT_EQ(cs_engine_create(e.catalog, "/nonexistent/rates.json", &other), CS_ERR_IO);
  ASSERT_EQ(cs_engine_create(e.catalog, nullptr, &other), CS_OK);
  int status = 0;
  char* body = nullptr;
  EXPECT_EQ(cs_engine_query(other, CS_QUERY_STORAGE, kStorageQuery, CS_FORMAT_JSON, &status, &body), CS_ERR_VALIDATION);
  EXPECT_STREQ(cs_last_error_param(), "currency");
  take(body);
  cs_engine_free(other);
}

TEST(CApi, ServerAnswersOverHttp) {
  Engine e;
  cs_server* server = nullptr;
  ASSERT_EQ(cs_server_create(e.engine, "127.0.0.1", 0, &server), CS_OK) << cs_last_error();
  const int port = cs_server_port(server);
  ASSERT_GT(port, 0);
  std::thread worker([&] { cs_server_run(server); });

  httplib::Client client("127.0.0.1", port);
  auto xml = client.Get(std::string("/cloud_demo_1_1/api/cost/storage?media_type=xml&") + kStorageQuery);
  ASSERT_TRUE(xml);
  EXPECT_EQ(xml->status, 200);
  EXPECT_EQ(xml->get_header_value("Content-Type"), "application/xml");
  auto jsn = client.Get(std::string("/api/cost/storage?") + kStorageQuery);
  ASSERT_TRUE(jsn);
  EXPECT_EQ(cloudsel::testing::normalize_xml(xml->body), cloudsel::testing::normalize_json(jsn->body));

  const std::string id = json::parse(jsn->body)["meta"]["result_id"];
  auto detail = client.Get("/api/recommendation/" + id);
  ASSERT_TRUE(detail);
  EXPECT_EQ(detail->status, 200);
  auto missing = client.Get("/api/recommendation/0123");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  auto bad = client.Get("/api/cost/storage?data_upload_size=1");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  cs_server* clash = nullptr;
  EXPECT_EQ(cs_server_create(e.engine, "127.0.0.1", port, &clash), CS_ERR_BIND);

  cs_server_stop(server);
  worker.join();
  cs_server_free(server);
}

}  // namespace
