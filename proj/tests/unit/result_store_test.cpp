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

#include <set>
#include <thread>

#include <gtest/gtest.h>

#include "cloudsel/errors.hpp"
#include "cloudsel/result_store.hpp"

namespace cloudsel {
namespace {

struct FakeClock {
  ResultStore::Clock::time_point t{};
  ResultStore::Now fn() {
    return [this] { return t; };
  }
};

StoredResult one_row() {
  Recommendation r;
  r.provider_name = "Acme";
  r.region_name = "East";
  r.transfer_offering = "t";
  r.rank = 1;
  return StoredResult{SelectionRequest{}, {r}};
}

TEST(ResultStore, StoresAndFetches) {
  FakeClock clock;
  ResultStore store(std::chrono::seconds(60), clock.fn());
  const std::string id = store.store(one_row());
  EXPECT_EQ(id.size(), 32u);
  EXPECT_EQ(id.find_first_not_of("0123456789abcdef"), std::string::npos);
  EXPECT_EQ(store.fetch(id).rows, one_row().rows);
  EXPECT_EQ(store.size(), 1u);
}

TEST(ResultStore, IdsAreDistinct) {
  ResultStore store;
  std::set<std::string> ids;
  for (int i = 0; i < 500; ++i) ids.insert(store.store(one_row()));
  EXPECT_EQ(ids.size(), 500u);
}

TEST(ResultStore, EntriesExpireAfterTheTtl) {
  FakeClock clock;
  ResultStore store(std::chrono::seconds(60), clock.fn());
  const std::string id = store.store(one_row());
  clock.t += std::chrono::seconds(59);
  EXPECT_NO_THROW(store.fetch(id));
  clock.t += std::chrono::seconds(2);
  EXPECT_THROW(store.fetch(id), NotFoundError);
  EXPECT_EQ(store.evict_expired(), 1u);
  EXPECT_EQ(store.size(), 0u);
}

TEST(ResultStore, TtlCanChange) {
  FakeClock clock;
  ResultStore store(std::chrono::seconds(60), clock.fn());
  store.set_ttl(std::chrono::seconds(5));
  EXPECT_EQ(store.ttl(), std::chrono::seconds(5));
  const std::string id = store.store(one_row());
  clock.t += std::chrono::seconds(6);
  EXPECT_THROW(store.fetch(id), NotFoundError);
}

TEST(ResultStore, RejectsEmptyResultsAndBadIds) {
  ResultStore store;
  EXPECT_THROW(store.store(StoredResult{}), std::invalid_argument);
  EXPECT_THROW(store.fetch(""), NotFoundError);
  EXPECT_THROW(store.fetch("../etc/passwd"), NotFoundError);
  EXPECT_THROW(store.fetch(std::string(32, '0')), NotFoundError);
}

TEST(ResultStore, ConcurrentStores) {
  ResultStore store;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 100; ++i) store.fetch(store.store(one_row()));
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(store.size(), 400u);
}

}  // namespace
}  // namespace cloudsel
