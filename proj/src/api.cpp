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

#include "cloudsel/api.hpp"

#include <algorithm>
#include <cctype>

#include "cloudsel/errors.hpp"

namespace cloudsel::api {

namespace {

constexpr std::string_view kOperationParams[] = {"put", "copy", "post", "list", "get", "delete", "search", "head"};

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Decimal number(std::string_view param, std::string_view text) {
  auto v = Decimal::try_parse(trim(text));
  if (!v) throw ValidationError(std::string(param), "expected a number, got '" + std::string(text) + "'");
  return *v;
}

std::int64_t integer(std::string_view param, std::string_view text) {
  const Decimal v = number(param, text);
  if (!v.is_integer()) throw ValidationError(std::string(param), "expected a whole number, got '" + std::string(text) + "'");
  if (v < Decimal(0)) throw ValidationError(std::string(param), "must be >= 0");
  return static_cast<std::int64_t>(v.raw() / Decimal::kOne);
}

bool boolean(std::string_view param, std::string_view text) {
  std::string lower(trim(text));
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "true" || lower == "1" || lower == "yes" || lower.empty()) return true;
  if (lower == "false" || lower == "0" || lower == "no") return false;
  throw ValidationError(std::string(param), "expected true or false");
}

std::vector<Decimal> number_list(std::string_view param, std::string_view text) {
  std::vector<Decimal> out;
  for (auto part : split(text, ',')) out.push_back(number(param, part));
  return out;
}

std::string range_to_string(const Range& r) {
  return r.low.to_string() + "," + (r.high ? r.high->to_string() : std::string("inf"));
}

}  // namespace

std::string_view to_string(Endpoint e) {
  switch (e) {
    case Endpoint::Storage: return "storage";
    case Endpoint::Compute: return "compute";
    case Endpoint::Combined: return "combined";
  }
  return "storage";
}

std::optional<Endpoint> parse_endpoint(std::string_view text) {
  if (text == "storage") return Endpoint::Storage;
  if (text == "compute") return Endpoint::Compute;
  if (text == "combined") return Endpoint::Combined;
  return std::nullopt;
}

std::string_view content_type(Format f) {
  switch (f) {
    case Format::Json: return "application/json";
    case Format::Xml: return "application/xml";
    case Format::Table: return "text/plain";
  }
  return "application/json";
}

std::vector<Range> parse_range_list(std::string_view text) {
  if (trim(text).empty()) throw ValidationError("", "empty range list");
  std::vector<Range> out;
  for (auto segment : split(text, ';')) {
    auto bounds = split(segment, ',');
    if (bounds.size() != 2) {
      throw ValidationError("", "range '" + std::string(segment) + "' must be written as low,high");
    }
    auto low = Decimal::try_parse(trim(bounds[0]));
    if (!low) throw ValidationError("", "range '" + std::string(segment) + "' has a non-numeric low bound");
    Range r{*low, std::nullopt};
    const std::string_view high_text = trim(bounds[1]);
    if (high_text != "inf" && high_text != "") {
      auto high = Decimal::try_parse(high_text);
      if (!high) throw ValidationError("", "range '" + std::string(segment) + "' has a non-numeric high bound");
      r.high = *high;
    }
    if (r.low.sign() < 0 || (r.high && r.high->sign() < 0)) {
      throw ValidationError("", "range '" + std::string(segment) + "' has a negative bound");
    }
    if (r.high && r.low > *r.high) {
      throw ValidationError("", "range '" + std::string(segment) + "' has low > high");
    }
    out.push_back(r);
  }
  return out;
}

QueryParams parse_query_string(std::string_view raw) {
  auto decode = [](std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '+') {
        out += ' ';
      } else if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
                 std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
        out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
        i += 2;
      } else {
        out += s[i];
      }
    }
    return out;
  };
  if (!raw.empty() && raw.front() == '?') raw.remove_prefix(1);
  QueryParams params;
  if (raw.empty()) return params;
  for (auto pair : split(raw, '&')) {
    if (pair.empty()) continue;
    const auto eq = pair.find('=');
    if (eq == std::string_view::npos) {
      params.emplace_back(decode(pair), "");
    } else {
      params.emplace_back(decode(pair.substr(0, eq)), decode(pair.substr(eq + 1)));
    }
  }
  return params;
}

std::string url_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || c == ',' || c == ';') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    }
  }
  return out;
}

ApiQuery parse_api_query(Endpoint endpoint, const QueryParams& params) {
  ApiQuery q;
  q.endpoint = endpoint;
  SelectionRequest& r = q.request;
  r.include_storage = endpoint != Endpoint::Compute;
  r.include_compute = endpoint != Endpoint::Storage;

  std::optional<std::vector<Range>> ram, local;
  std::optional<std::vector<Decimal>> hours, months, counts;

  for (const auto& [key, value] : params) {
    if (key == "media_type" || key == "format") {
      if (value == "json") {
        q.media_type = Format::Json;
      } else if (value == "xml") {
        q.media_type = Format::Xml;
      } else {
        throw ValidationError(key, "expected json or xml");
      }
    } else if (key == "currency") {
      std::string code(trim(value));
      std::transform(code.begin(), code.end(), code.begin(), [](unsigned char c) { return std::toupper(c); });
      r.currency = code;
    } else if (key == "precise") {
      q.precise = boolean(key, value);
    } else if (key == "digits") {
      const auto d = integer(key, value);
      if (d > Decimal::kScale) throw ValidationError(key, "must be between 0 and 12");
      q.digits = static_cast<int>(d);
    } else if (key == "limit") {
      r.limit = static_cast<std::size_t>(integer(key, value));
    } else if (key == "providers" || key == "provider") {
      std::vector<std::string> names;
      for (auto name : split(value, ',')) {
        if (!trim(name).empty()) names.emplace_back(trim(name));
      }
      if (names.empty()) throw ValidationError(key, "expected at least one provider name");
      r.provider_filter = std::move(names);
    } else if (key == "location") {
      auto loc = parse_location(value);
      if (!loc) throw ValidationError(key, "unknown location '" + value + "'");
      r.criteria.push_back({CriterionParameter::Location, Bound::Equal, std::string(cloudsel::to_string(*loc))});
    } else if (key == "storage") {
      if (r.include_storage) r.usage.storage_gb = number(key, value);
    } else if (key == "duration") {
      r.usage.duration_days = number(key, value);
    } else if (key == "data_upload_size") {
      r.usage.transfer_in_gb = number(key, value);
    } else if (key == "data_download_size") {
      r.usage.transfer_out_gb = number(key, value);
    } else if (key == "any" || std::find(std::begin(kOperationParams), std::end(kOperationParams), key) !=
                                   std::end(kOperationParams)) {
      r.usage.request_counts[*parse_operation(key)] = integer(key, value);
    } else if (key == "ram_range") {
      try {
        ram = parse_range_list(value);
      } catch (const ValidationError& e) {
        throw ValidationError(key, e.what());
      }
    } else if (key == "storage_range") {
      try {
        local = parse_range_list(value);
      } catch (const ValidationError& e) {
        throw ValidationError(key, e.what());
      }
    } else if (key == "hour") {
      hours = number_list(key, value);
    } else if (key == "month") {
      months = number_list(key, value);
    } else if (key == "n") {
      counts = number_list(key, value);
    }
  }

  if (r.include_compute) {
    if (hours && months) throw ValidationError("hour", "give either hour or month, not both");
    std::size_t k = 0;
    std::string first;
    auto check = [&](const char* name, std::size_t size) {
      if (first.empty()) {
        first = name;
        k = size;
      } else if (size != k) {
        throw ValidationError(name, "has " + std::to_string(size) + " entries but " + first + " has " +
                                        std::to_string(k) + "; per-requirement lists must have equal lengths");
      }
    };
    if (ram) check("ram_range", ram->size());
    if (local) check("storage_range", local->size());
    if (hours) check("hour", hours->size());
    if (months) check("month", months->size());
    if (counts) check("n", counts->size());
    if (first.empty()) k = 1;
    for (std::size_t i = 0; i < k; ++i) {
      ComputeRequirement req;
      if (ram) req.ram_range = (*ram)[i];
      if (local) req.local_storage_range = (*local)[i];
      if (hours) req.hours = (*hours)[i];
      if (months) req.months = (*months)[i];
      if (counts) {
        const Decimal c = (*counts)[i];
        if (!c.is_integer()) throw ValidationError("n", "instance counts must be whole numbers");
        req.instance_count = static_cast<std::int64_t>(c.raw() / Decimal::kOne);
      }
      r.compute_requirements.push_back(std::move(req));
    }
  }
  return q;
}

std::string to_query_string(const ApiQuery& q) {
  const SelectionRequest& r = q.request;
  std::vector<std::string> parts;
  auto add = [&](std::string_view key, const std::string& value) {
    parts.push_back(std::string(key) + "=" + url_encode(value));
  };
  add("media_type", q.media_type == Format::Xml ? "xml" : "json");
  add("currency", r.currency);
  if (q.precise) add("precise", "true");
  if (q.digits != 3) add("digits", std::to_string(q.digits));
  if (r.limit) add("limit", std::to_string(*r.limit));
  if (r.provider_filter) {
    std::string joined;
    for (const auto& name : *r.provider_filter) joined += (joined.empty() ? "" : ",") + url_encode(name);
    parts.push_back("providers=" + joined);
  }
  for (const auto& c : r.criteria) {
    if (c.parameter == CriterionParameter::Location) add("location", std::get<std::string>(c.value));
  }
  if (r.include_storage && r.usage.storage_gb) add("storage", r.usage.storage_gb->to_string());
  add("duration", r.usage.duration_days.to_string());
  if (r.usage.transfer_in_gb) add("data_upload_size", r.usage.transfer_in_gb->to_string());
  if (r.usage.transfer_out_gb) add("data_download_size", r.usage.transfer_out_gb->to_string());
  for (const auto& [op, count] : r.usage.request_counts) {
    std::string name(cloudsel::to_string(op));
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    add(name, std::to_string(count));
  }
  if (r.include_compute && !r.compute_requirements.empty()) {
    // The query carries one unit for every requirement: months only when all use them.
    const bool by_month = std::all_of(r.compute_requirements.begin(), r.compute_requirements.end(),
                                      [](const ComputeRequirement& req) { return req.months.has_value(); });
    std::string ram, local, amounts, counts;
    for (const auto& req : r.compute_requirements) {
      const char* comma = ram.empty() ? "" : ",";
      ram += (ram.empty() ? "" : ";") + range_to_string(req.ram_range);
      local += (local.empty() ? "" : ";") + range_to_string(req.local_storage_range);
      amounts += comma + (by_month ? req.months->to_string() : req.effective_hours().to_string());
      counts += comma + std::to_string(req.instance_count);
    }
    add("ram_range", ram);
    add("storage_range", local);
    add(by_month ? "month" : "hour", amounts);
    add("n", counts);
  }
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "&") + p;
  return out;
}

Service::Service(std::shared_ptr<CatalogStore> catalog, RateTable rates, std::chrono::seconds result_ttl,
                 ResultStore::Now now)
    : catalog_(std::move(catalog)), rates_(std::move(rates)), results_(result_ttl, std::move(now)) {}

ApiResponse Service::cost(Endpoint endpoint, const QueryParams& params, std::optional<Format> format) {
  const auto started = std::chrono::steady_clock::now();
  Format out = format.value_or(Format::Json);
  auto fail = [&](int status, const std::string& param, const std::string& message) {
    return ApiResponse{status, std::string(content_type(out)), render_error(out, status, param, message), param,
                       message};
  };
  try {
    ApiQuery q = parse_api_query(endpoint, params);
    if (!format) out = q.media_type;
    auto issues = validate_request(q.request);
    if (!issues.empty()) return fail(400, issues.front().param, issues.front().message);

    auto snapshot = catalog_->snapshot();
    std::vector<Recommendation> rows = select(q.request, *snapshot, rates_);

    ResponseMeta meta;
    meta.endpoint = endpoint;
    meta.count = rows.size();
    meta.currency = q.request.currency;
    if (!rows.empty()) meta.result_id = results_.store({q.request, rows});
    meta.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return {200, std::string(content_type(out)), render(out, meta, rows, q.digits, q.precise), {}, {}};
  } catch (const ValidationError& e) {
    return fail(400, e.param(), e.param().empty() ? e.what() : std::string(e.what()).substr(e.param().size() + 2));
  } catch (const CurrencyError& e) {
    return fail(400, "currency", e.what());
  } catch (const std::exception& e) {
    return fail(500, "", e.what());
  }
}

ApiResponse Service::recommendation(const std::string& id, Format format) {
  try {
    StoredResult stored = results_.fetch(id);
    ResponseMeta meta;
    meta.endpoint = !stored.request.include_compute
                        ? Endpoint::Storage
                        : (stored.request.include_storage ? Endpoint::Combined : Endpoint::Compute);
    meta.count = stored.rows.size();
    meta.currency = stored.request.currency;
    meta.result_id = id;
    return {200, std::string(content_type(format)), render(format, meta, stored.rows, Decimal::kScale, true), {}, {}};
  } catch (const NotFoundError& e) {
    return {404, std::string(content_type(format)), render_error(format, 404, "result_id", e.what()), "result_id",
            e.what()};
  }
}

}  // namespace cloudsel::api
