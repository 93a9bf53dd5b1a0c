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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cloudsel/catalog.hpp"
#include "cloudsel/pricing.hpp"
#include "cloudsel/result_store.hpp"
#include "cloudsel/selection.hpp"

namespace cloudsel::api {

enum class Endpoint { Storage, Compute, Combined };
enum class Format { Json, Xml, Table };

/// Decoded query parameters in request order.
using QueryParams = std::vector<std::pair<std::string, std::string>>;

/// A cost query after parameter parsing. `request` is not yet validated.
struct ApiQuery {
  Endpoint endpoint = Endpoint::Storage;
  Format media_type = Format::Json;
  bool precise = false;
  int digits = 3;
  SelectionRequest request;
  friend bool operator==(const ApiQuery&, const ApiQuery&) = default;
};

struct ApiResponse {
  int status = 200;
  std::string content_type;
  std::string body;
  /// Set when status != 200.
  std::string error_param;
  std::string error_message;
};

/// Summary echoed in every cost response.
struct ResponseMeta {
  Endpoint endpoint = Endpoint::Storage;
  std::size_t count = 0;
  double duration_ms = 0;
  std::string currency = "USD";
  std::optional<std::string> result_id;
};

std::string_view to_string(Endpoint e);
std::optional<Endpoint> parse_endpoint(std::string_view text);
std::string_view content_type(Format f);

/// "low,high;low,high" into ranges. Throws ValidationError (without a
/// parameter name) for an empty input or segment, a non-numeric or negative
/// bound, or low > high.
std::vector<Range> parse_range_list(std::string_view text);

/// Splits and percent-decodes "a=1&b=2" ('+' decodes to a space).
QueryParams parse_query_string(std::string_view raw);
std::string url_encode(std::string_view text);

/// Translates query parameters into a query. Unknown parameters are ignored.
/// Throws ValidationError naming the parameter for malformed values and
/// mismatched list lengths.
ApiQuery parse_api_query(Endpoint endpoint, const QueryParams& params);
/// Canonical query string; parse_api_query() of it returns the same query.
std::string to_query_string(const ApiQuery& query);

std::string render(Format format, const ResponseMeta& meta, const std::vector<Recommendation>& rows, int digits,
                   bool precise);
std::string render_error(Format format, int status, const std::string& param, const std::string& message);

/// The request handler behind every transport (HTTP server, C API, CLI).
/// Each call reads one catalog snapshot; the service is safe to share
/// between threads.
class Service {
 public:
  Service(std::shared_ptr<CatalogStore> catalog, RateTable rates,
          std::chrono::seconds result_ttl = ResultStore::kDefaultTtl, ResultStore::Now now = &ResultStore::Clock::now);

  /// GET /api/cost/{storage,compute,combined}. `format` overrides media_type.
  ApiResponse cost(Endpoint endpoint, const QueryParams& params, std::optional<Format> format = std::nullopt);
  /// GET /api/recommendation/{id}.
  ApiResponse recommendation(const std::string& id, Format format = Format::Json);

  CatalogStore& catalog() { return *catalog_; }
  const RateTable& rates() const { return rates_; }
  ResultStore& results() { return results_; }

 private:
  std::shared_ptr<CatalogStore> catalog_;
  RateTable rates_;
  ResultStore results_;
};

}  // namespace cloudsel::api
