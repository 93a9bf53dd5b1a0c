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

#include "cloudsel/cloudsel.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

#include "cloudsel/api.hpp"
#include "cloudsel/catalog.hpp"
#include "cloudsel/errors.hpp"
#include "cloudsel/http_server.hpp"
#include "cloudsel/selection.hpp"

struct cs_catalog {
  std::shared_ptr<cloudsel::CatalogStore> store;
};

struct cs_engine {
  std::unique_ptr<cloudsel::api::Service> service;
};

struct cs_server {
  std::unique_ptr<cloudsel::api::HttpServer> server;
};

namespace {

using namespace cloudsel;

thread_local std::string g_error;
thread_local std::string g_param;

cs_status fail(cs_status status, std::string message, std::string param = {}) {
  g_error = std::move(message);
  g_param = std::move(param);
  return status;
}

void clear_error() {
  g_error.clear();
  g_param.clear();
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
cs_status guarded(F&& body) {
  clear_error();
  try {
    return body();
  } catch (const ParseError& e) {
    return fail(CS_ERR_PARSE, e.what(), e.path());
  } catch (const ValidationError& e) {
    return fail(CS_ERR_VALIDATION, e.what(), e.param());
  } catch (const InvariantError& e) {
    return fail(CS_ERR_INVARIANT, e.what());
  } catch (const CapacityError& e) {
    return fail(CS_ERR_CAPACITY, e.what());
  } catch (const CurrencyError& e) {
    return fail(CS_ERR_CURRENCY, e.what(), "currency");
  } catch (const NotFoundError& e) {
    return fail(CS_ERR_NOT_FOUND, e.what());
  } catch (const IoError& e) {
    return fail(CS_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(CS_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

ServiceType service_type(cs_service_type t) {
  switch (t) {
    case CS_SERVICE_COMPUTE: return ServiceType::Compute;
    case CS_SERVICE_STORAGE: return ServiceType::Storage;
    case CS_SERVICE_TRANSFER: return ServiceType::Transfer;
  }
  throw ValidationError("type", "unknown service type");
}

std::optional<api::Format> format_of(cs_format f) {
  switch (f) {
    case CS_FORMAT_DEFAULT: return std::nullopt;
    case CS_FORMAT_JSON: return api::Format::Json;
    case CS_FORMAT_XML: return api::Format::Xml;
    case CS_FORMAT_TABLE: return api::Format::Table;
  }
  throw ValidationError("format", "unknown format");
}

cs_status from_http(const api::ApiResponse& r) {
  if (r.status == 200) return CS_OK;
  cs_status status = r.status == 400 ? CS_ERR_VALIDATION : (r.status == 404 ? CS_ERR_NOT_FOUND : CS_ERR_INTERNAL);
  return fail(status, r.error_message, r.error_param);
}

cs_status load(std::shared_ptr<CatalogStore> store, cs_catalog** out) {
  *out = new cs_catalog{std::move(store)};
  return CS_OK;
}

}  // namespace

extern "C" {

const char* cs_version(void) { return "1.0.0"; }

const char* cs_status_name(cs_status status) {
  switch (status) {
    case CS_OK: return "ok";
    case CS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CS_ERR_IO: return "io error";
    case CS_ERR_PARSE: return "parse error";
    case CS_ERR_INVARIANT: return "invariant violation";
    case CS_ERR_VALIDATION: return "validation error";
    case CS_ERR_NOT_FOUND: return "not found";
    case CS_ERR_CAPACITY: return "capacity exceeded";
    case CS_ERR_CURRENCY: return "unknown currency";
    case CS_ERR_BIND: return "cannot bind";
    case CS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cs_last_error(void) { return g_error.c_str(); }
const char* cs_last_error_param(void) { return g_param.c_str(); }
void cs_string_free(char* s) { std::free(s); }

cs_status cs_catalog_load_file(const char* path, int merge_regions, cs_catalog** out) {
  if (path == nullptr || out == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "path and out are required");
  return guarded([&] {
    LoadOptions options{merge_regions != 0};
    return load(std::make_shared<CatalogStore>(load_catalog_file(path, options)), out);
  });
}

cs_status cs_catalog_load_text(const char* json, int merge_regions, cs_catalog** out) {
  if (json == nullptr || out == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "json and out are required");
  return guarded([&] {
    LoadOptions options{merge_regions != 0};
    return load(std::make_shared<CatalogStore>(load_catalog(json, options)), out);
  });
}

void cs_catalog_free(cs_catalog* catalog) { delete catalog; }

cs_status cs_catalog_to_json(const cs_catalog* catalog, char** out) {
  if (catalog == nullptr || out == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "catalog and out are required");
  return guarded([&] {
    *out = dup(serialize_catalog(*catalog->store->snapshot()));
    return CS_OK;
  });
}

cs_status cs_catalog_save_file(const cs_catalog* catalog, const char* path) {
  if (catalog == nullptr || path == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "catalog and path are required");
  return guarded([&] {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError(std::string("cannot write '") + path + "'");
    file << serialize_catalog(*catalog->store->snapshot());
    if (!file) throw IoError(std::string("cannot write '") + path + "'");
    return CS_OK;
  });
}

cs_status cs_catalog_upsert_json(cs_catalog* catalog, const char* provider, const char* region, cs_service_type type,
                                 const char* offering_json) {
  if (catalog == nullptr || provider == nullptr || offering_json == nullptr) {
    return fail(CS_ERR_INVALID_ARGUMENT, "catalog, provider and offering_json are required");
  }
  return guarded([&] {
    Offering offering = parse_offering(service_type(type), offering_json);
    catalog->store->upsert(provider, region ? std::optional<std::string>(region) : std::nullopt, offering);
    return CS_OK;
  });
}

cs_status cs_catalog_list_offerings(const cs_catalog* catalog, cs_service_type type, const char* pattern,
                                    const char* providers_csv, char** out_json) {
  if (catalog == nullptr || out_json == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "catalog and out are required");
  return guarded([&] {
    std::optional<std::vector<std::string>> providers;
    if (providers_csv != nullptr) {
      providers.emplace();
      std::string csv = providers_csv;
      std::size_t start = 0;
      while (start <= csv.size()) {
        std::size_t end = csv.find(',', start);
        if (end == std::string::npos) end = csv.size();
        if (end > start) providers->push_back(csv.substr(start, end - start));
        start = end + 1;
      }
    }
    auto snapshot = catalog->store->snapshot();
    auto rows = list_offerings(*snapshot, service_type(type),
                               pattern ? std::optional<std::string>(pattern) : std::nullopt, providers);
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json locations = nlohmann::ordered_json::array();
      for (Location l : row.locations) locations.push_back(std::string(to_string(l)));
      out.push_back({{"provider", row.provider},
                     {"region", row.region},
                     {"locations", locations},
                     {"type", std::string(to_string(row.type()))},
                     {"name", row.name()},
                     {"offering", nlohmann::ordered_json::parse(serialize_offering(row.offering))}});
    }
    *out_json = dup(out.dump(2) + "\n");
    return CS_OK;
  });
}

cs_status cs_catalog_offer_count(const cs_catalog* catalog, char** out_json) {
  if (catalog == nullptr || out_json == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "catalog and out are required");
  return guarded([&] {
    OfferCountReport report = offer_count(*catalog->store->snapshot());
    nlohmann::ordered_json providers = nlohmann::ordered_json::object();
    for (const auto& [name, c] : report.per_provider) {
      providers[name] = {{"regions", c.regions},
                         {"compute", c.compute},
                         {"storage", c.storage},
                         {"transfer", c.transfer},
                         {"compute_tiers", c.compute_tiers},
                         {"storage_tiers", c.storage_tiers},
                         {"transfer_tiers", c.transfer_tiers},
                         {"simple", c.simple},
                         {"detailed", c.detailed}};
    }
    nlohmann::ordered_json out = {{"simple_count", report.simple_count},
                                  {"detailed_count", report.detailed_count},
                                  {"candidate_rows", report.candidate_rows},
                                  {"candidate_columns", report.candidate_columns},
                                  {"providers", providers}};
    *out_json = dup(out.dump(2) + "\n");
    return CS_OK;
  });
}

cs_status cs_engine_create(const cs_catalog* catalog, const char* rates_path, cs_engine** out) {
  if (catalog == nullptr || out == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "catalog and out are required");
  return guarded([&] {
    RateTable rates = rates_path ? load_rates_file(rates_path) : usd_only_rates();
    *out = new cs_engine{std::make_unique<api::Service>(catalog->store, std::move(rates))};
    return CS_OK;
  });
}

void cs_engine_free(cs_engine* engine) { delete engine; }

cs_status cs_engine_query(cs_engine* engine, cs_query_kind kind, const char* query_string, cs_format format,
                          int* http_status, char** body) {
  if (engine == nullptr || body == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "engine and body are required");
  return guarded([&] {
    api::Endpoint endpoint = kind == CS_QUERY_COMPUTE    ? api::Endpoint::Compute
                             : kind == CS_QUERY_COMBINED ? api::Endpoint::Combined
                                                         : api::Endpoint::Storage;
    api::ApiResponse r = engine->service->cost(endpoint, api::parse_query_string(query_string ? query_string : ""),
                                               format_of(format));
    if (http_status != nullptr) *http_status = r.status;
    *body = dup(r.body);
    return from_http(r);
  });
}

cs_status cs_engine_fetch_result(cs_engine* engine, const char* result_id, cs_format format, int* http_status,
                                 char** body) {
  if (engine == nullptr || result_id == nullptr || body == nullptr) {
    return fail(CS_ERR_INVALID_ARGUMENT, "engine, result_id and body are required");
  }
  return guarded([&] {
    api::ApiResponse r = engine->service->recommendation(result_id, format_of(format).value_or(api::Format::Json));
    if (http_status != nullptr) *http_status = r.status;
    *body = dup(r.body);
    return from_http(r);
  });
}

cs_status cs_engine_set_result_ttl(cs_engine* engine, long seconds) {
  if (engine == nullptr || seconds < 0) return fail(CS_ERR_INVALID_ARGUMENT, "engine is required and ttl must be >= 0");
  engine->service->results().set_ttl(std::chrono::seconds(seconds));
  clear_error();
  return CS_OK;
}

cs_status cs_server_create(cs_engine* engine, const char* host, int port, cs_server** out) {
  if (engine == nullptr || out == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "engine and out are required");
  if (port < 0 || port > 65535) return fail(CS_ERR_INVALID_ARGUMENT, "port must be in 0..65535", "port");
  return guarded([&] {
    auto server = std::make_unique<api::HttpServer>(*engine->service, host ? host : "127.0.0.1", port);
    try {
      server->bind();
    } catch (const IoError& e) {
      return fail(CS_ERR_BIND, e.what(), "port");
    }
    *out = new cs_server{std::move(server)};
    return CS_OK;
  });
}

int cs_server_port(const cs_server* server) { return server ? server->server->port() : -1; }

cs_status cs_server_run(cs_server* server) {
  if (server == nullptr) return fail(CS_ERR_INVALID_ARGUMENT, "server is required");
  return guarded([&] {
    server->server->run();
    return CS_OK;
  });
}

void cs_server_stop(cs_server* server) {
  if (server != nullptr) server->server->stop();
}

void cs_server_free(cs_server* server) { delete server; }

}  // extern "C"
