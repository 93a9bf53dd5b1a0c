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

#include <chrono>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "cloudsel/selection.hpp"

namespace cloudsel {

/// A ranked result kept for later detail lookups.
struct StoredResult {
  SelectionRequest request;
  std::vector<Recommendation> rows;
};

/// In-memory result store with expiry. All members are safe to call
/// concurrently.
class ResultStore {
 public:
  using Clock = std::chrono::steady_clock;
  using Now = std::function<Clock::time_point()>;

  static constexpr std::chrono::seconds kDefaultTtl{30 * 60};

  explicit ResultStore(std::chrono::seconds ttl = kDefaultTtl, Now now = &Clock::now);

  /// Returns a fresh 32-character hex id. Throws std::invalid_argument for an
  /// empty result.
  std::string store(StoredResult result);
  /// Throws NotFoundError for unknown, malformed or expired ids.
  StoredResult fetch(const std::string& id) const;

  void set_ttl(std::chrono::seconds ttl);
  std::chrono::seconds ttl() const;
  /// Drops expired entries; returns how many were removed.
  std::size_t evict_expired();
  std::size_t size() const;

 private:
  struct Entry {
    StoredResult result;
    Clock::time_point expires;
  };

  mutable std::mutex mutex_;
  std::chrono::seconds ttl_;
  Now now_;
  std::mt19937_64 rng_;
  std::unordered_map<std::string, Entry> entries_;
};

}  // namespace cloudsel
