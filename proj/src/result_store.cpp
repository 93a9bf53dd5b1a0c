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

#include "cloudsel/result_store.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "cloudsel/errors.hpp"

namespace cloudsel {

ResultStore::ResultStore(std::chrono::seconds ttl, Now now)
    : ttl_(ttl), now_(std::move(now)), rng_(std::random_device{}()) {}

std::string ResultStore::store(StoredResult result) {
  if (result.rows.empty()) throw std::invalid_argument("cannot store an empty result");
  static constexpr char kHex[] = "0123456789abcdef";
  std::lock_guard lock(mutex_);
  const auto now = now_();
  // Expired entries are only dropped on writes; fetch() checks expiry itself.
  std::erase_if(entries_, [&](const auto& kv) { return kv.second.expires <= now; });
  std::string id;
  do {
    id.clear();
    for (int word = 0; word < 2; ++word) {
      auto bits = rng_();
      for (int i = 0; i < 16; ++i, bits >>= 4) id.push_back(kHex[bits & 0xF]);
    }
  } while (entries_.count(id) != 0);
  entries_.emplace(id, Entry{std::move(result), now + ttl_});
  return id;
}

StoredResult ResultStore::fetch(const std::string& id) const {
  const bool well_formed = id.size() == 32 && std::all_of(id.begin(), id.end(), [](unsigned char c) {
                             return std::isdigit(c) != 0 || (c >= 'a' && c <= 'f');
                           });
  if (!well_formed) throw NotFoundError("no result with id '" + id + "'");
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end() || it->second.expires <= now_()) {
    throw NotFoundError("no result with id '" + id + "' (unknown or expired)");
  }
  return it->second.result;
}

void ResultStore::set_ttl(std::chrono::seconds ttl) {
  std::lock_guard lock(mutex_);
  ttl_ = ttl;
}

std::chrono::seconds ResultStore::ttl() const {
  std::lock_guard lock(mutex_);
  return ttl_;
}

std::size_t ResultStore::evict_expired() {
  std::lock_guard lock(mutex_);
  const auto now = now_();
  return std::erase_if(entries_, [&](const auto& kv) { return kv.second.expires <= now; });
}

std::size_t ResultStore::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace cloudsel
