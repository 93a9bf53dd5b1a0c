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

// Command-line front end. Links only the C API.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cloudsel/cloudsel.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string catalog;
  std::string rates;
  bool merge_regions = false;
};

struct SelectArgs {
  std::string kind = "storage";
  std::string format = "table";
  // Query parameter name and flag value, in flag order.
  std::vector<std::pair<std::string, std::string>> params;
};

// Status of a failed C call as an exit code.
int exit_code(cs_status status) {
  switch (status) {
    case CS_OK: return kExitOk;
    case CS_ERR_IO:
    case CS_ERR_INVALID_ARGUMENT:
    case CS_ERR_BIND: return kExitUsage;
    default: return kExitFailed;
  }
}

int report(cs_status status) {
  std::string param = cs_last_error_param();
  std::cerr << "error: " << cs_last_error();
  if (!param.empty() && std::string(cs_last_error()).rfind(param, 0) != 0) std::cerr << " (" << param << ")";
  std::cerr << '\n';
  return exit_code(status);
}

std::string encode(const std::string& s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (c == '%' || c == '&' || c == '=' || c == '+' || c == '#' || c < 0x20) {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

// "ram_range" -> "--ram-range".
std::string flag_name(std::string param) {
  for (char& c : param) {
    if (c == '_') c = '-';
  }
  return "--" + param;
}

class Catalog {
 public:
  ~Catalog() { cs_catalog_free(handle_); }
  cs_status load(const Common& common) {
    if (common.catalog.empty()) {
      std::cerr << "error: --catalog is required\n";
      return CS_ERR_INVALID_ARGUMENT;
    }
    return cs_catalog_load_file(common.catalog.c_str(), common.merge_regions ? 1 : 0, &handle_);
  }
  cs_catalog* get() const { return handle_; }

 private:
  cs_catalog* handle_ = nullptr;
};

class Engine {
 public:
  ~Engine() { cs_engine_free(handle_); }
  cs_status create(const Catalog& catalog, const Common& common) {
    return cs_engine_create(catalog.get(), common.rates.empty() ? nullptr : common.rates.c_str(), &handle_);
  }
  cs_engine* get() const { return handle_; }

 private:
  cs_engine* handle_ = nullptr;
};

int print_owned(char* text) {
  std::fputs(text, stdout);
  cs_string_free(text);
  return kExitOk;
}

int run_validate(const Common& common) {
  Catalog catalog;
  if (cs_status s = catalog.load(common); s != CS_OK) {
    return s == CS_ERR_INVALID_ARGUMENT ? kExitUsage : report(s);
  }
  std::cout << common.catalog << ": ok\n";
  return kExitOk;
}

int run_select(const Common& common, const SelectArgs& args) {
  Catalog catalog;
  if (cs_status s = catalog.load(common); s != CS_OK) return s == CS_ERR_INVALID_ARGUMENT ? kExitUsage : report(s);
  Engine engine;
  if (cs_status s = engine.create(catalog, common); s != CS_OK) return report(s);

  std::string query;
  for (const auto& [key, value] : args.params) query += (query.empty() ? "" : "&") + key + "=" + encode(value);
  const cs_query_kind kind = args.kind == "compute"    ? CS_QUERY_COMPUTE
                             : args.kind == "combined" ? CS_QUERY_COMBINED
                                                       : CS_QUERY_STORAGE;
  const cs_format format = args.format == "json"  ? CS_FORMAT_JSON
                           : args.format == "xml" ? CS_FORMAT_XML
                                                  : CS_FORMAT_TABLE;
  int http_status = 0;
  char* body = nullptr;
  cs_status s = cs_engine_query(engine.get(), kind, query.c_str(), format, &http_status, &body);
  if (s == CS_OK) return print_owned(body);
  if (body != nullptr) cs_string_free(body);
  std::string param = cs_last_error_param();
  std::cerr << "error: " << (param.empty() ? "" : flag_name(param) + ": ") << cs_last_error() << '\n';
  return exit_code(s);
}

int run_offer_count(const Common& common) {
  Catalog catalog;
  if (cs_status s = catalog.load(common); s != CS_OK) return s == CS_ERR_INVALID_ARGUMENT ? kExitUsage : report(s);
  char* out = nullptr;
  if (cs_status s = cs_catalog_offer_count(catalog.get(), &out); s != CS_OK) return report(s);
  return print_owned(out);
}

cs_service_type service_type(const std::string& name) {
  if (name == "storage") return CS_SERVICE_STORAGE;
  if (name == "transfer") return CS_SERVICE_TRANSFER;
  return CS_SERVICE_COMPUTE;
}

int run_list(const Common& common, const std::string& type, const std::optional<std::string>& pattern,
             const std::optional<std::string>& providers) {
  Catalog catalog;
  if (cs_status s = catalog.load(common); s != CS_OK) return s == CS_ERR_INVALID_ARGUMENT ? kExitUsage : report(s);
  char* out = nullptr;
  cs_status s = cs_catalog_list_offerings(catalog.get(), service_type(type), pattern ? pattern->c_str() : nullptr,
                                          providers ? providers->c_str() : nullptr, &out);
  if (s != CS_OK) return report(s);
  return print_owned(out);
}

int run_upsert(const Common& common, const std::string& provider, const std::optional<std::string>& region,
               const std::string& type, const std::string& offering_path, const std::optional<std::string>& output) {
  Catalog catalog;
  if (cs_status s = catalog.load(common); s != CS_OK) return s == CS_ERR_INVALID_ARGUMENT ? kExitUsage : report(s);
  std::ifstream in(offering_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: --offering: cannot read '" << offering_path << "'\n";
    return kExitUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();
  cs_status s = cs_catalog_upsert_json(catalog.get(), provider.c_str(), region ? region->c_str() : nullptr,
                                       service_type(type), text.str().c_str());
  if (s != CS_OK) return report(s);
  const std::string target = output.value_or(common.catalog);
  if (s = cs_catalog_save_file(catalog.get(), target.c_str()); s != CS_OK) return report(s);
  std::cout << "wrote " << target << '\n';
  return kExitOk;
}

int run_serve(const Common& common, const std::string& host, int port, long ttl_seconds) {
  // Block the signals before any thread starts so only sigwait() sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Catalog catalog;
  if (cs_status s = catalog.load(common); s != CS_OK) return s == CS_ERR_INVALID_ARGUMENT ? kExitUsage : report(s);
  Engine engine;
  if (cs_status s = engine.create(catalog, common); s != CS_OK) return report(s);
  if (cs_status s = cs_engine_set_result_ttl(engine.get(), ttl_seconds); s != CS_OK) return report(s);
  cs_server* server = nullptr;
  if (cs_status s = cs_server_create(engine.get(), host.c_str(), port, &server); s != CS_OK) return report(s);

  std::cout << "listening on http://" << host << ":" << cs_server_port(server) << std::endl;
  cs_status run_status = CS_OK;
  std::thread worker([&] { run_status = cs_server_run(server); });
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    cs_server_stop(server);
  });
  worker.join();
  // The server may also stop on its own; wake the waiter in that case.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  cs_server_free(server);
  return run_status == CS_OK ? kExitOk : report(run_status);
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--catalog", common.catalog, "Catalog JSON file")
      ->envname("CLOUDSEL_CATALOG")
      ->check(CLI::ExistingFile);
  cmd->add_option("--rates", common.rates, "Exchange-rate JSON file (units per USD)")->envname("CLOUDSEL_RATES");
  cmd->add_flag("--merge-regions", common.merge_regions, "Merge a provider's regions with identical prices");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cloud offering cost comparison and selection"};
  app.set_config("--config", "", "INI or TOML file with option defaults");
  app.set_version_flag("--version", std::string(cs_version()));
  app.require_subcommand(1);

  Common common;

  auto* validate = app.add_subcommand("validate", "Check a catalog file against every invariant");
  add_common(validate, common);
  validate->add_option("path", common.catalog, "Catalog JSON file")->check(CLI::ExistingFile);

  SelectArgs select_args;
  auto* select = app.add_subcommand("select", "Rank provider bundles by total cost");
  add_common(select, common);
  select->add_option("kind", select_args.kind, "storage, compute or combined")
      ->check(CLI::IsMember({"storage", "compute", "combined"}));
  select->add_option("--format", select_args.format, "table, json or xml")
      ->check(CLI::IsMember({"table", "json", "xml"}));
  struct Param {
    const char* flags;
    const char* param;
    const char* help;
  };
  static const Param kParams[] = {
      {"--storage", "storage", "Storage size in GB"},
      {"--duration", "duration", "Usage period in days (default 31)"},
      {"--data-upload-size,--in", "data_upload_size", "Inbound transfer in GB"},
      {"--data-download-size,--out", "data_download_size", "Outbound transfer in GB"},
      {"--put", "put", "PUT requests"},
      {"--copy", "copy", "COPY requests"},
      {"--post", "post", "POST requests"},
      {"--list", "list", "LIST requests"},
      {"--get", "get", "GET requests"},
      {"--delete", "delete", "DELETE requests"},
      {"--search", "search", "SEARCH requests"},
      {"--head", "head", "HEAD requests"},
      {"--ram-range", "ram_range", "RAM ranges in GB, low,high;low,high"},
      {"--storage-range", "storage_range", "Local storage ranges in GB, low,high;..."},
      {"--hour", "hour", "Hours per requirement, comma separated"},
      {"--month", "month", "Months per requirement, comma separated"},
      {"-n,--n,--instances", "n", "Instance counts per requirement, comma separated"},
      {"--currency", "currency", "Result currency (default USD)"},
      {"--providers", "providers", "Comma-separated provider names"},
      {"--location", "location", "Region location"},
      {"--limit", "limit", "Keep only the cheapest N rows"},
      {"--digits", "digits", "Decimal places shown (default 3)"},
  };
  for (const Param& p : kParams) {
    const std::string param = p.param;
    select->add_option_function<std::string>(
        p.flags, [&select_args, param](const std::string& v) { select_args.params.emplace_back(param, v); }, p.help);
  }
  select->add_flag_callback("--precise", [&select_args] { select_args.params.emplace_back("precise", "true"); },
                            "Show unrounded amounts");

  std::string host = "127.0.0.1";
  int port = 8080;
  long ttl = 30 * 60;
  auto* serve = app.add_subcommand("serve", "Serve the REST API");
  add_common(serve, common);
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port (0 picks a free port)")->check(CLI::Range(0, 65535));
  serve->add_option("--result-ttl", ttl, "Seconds a result stays retrievable")->check(CLI::NonNegativeNumber);

  auto* count = app.add_subcommand("offer-count", "Size of the selection space");
  add_common(count, common);

  std::string list_type = "compute";
  std::optional<std::string> pattern, providers;
  auto* list = app.add_subcommand("list", "List offerings as JSON");
  add_common(list, common);
  list->add_option("type", list_type, "compute, storage or transfer")
      ->check(CLI::IsMember({"compute", "storage", "transfer"}));
  list->add_option("--pattern", pattern, "Regular expression on offering names");
  list->add_option("--providers", providers, "Comma-separated provider names");

  std::string provider, upsert_type, offering_path;
  std::optional<std::string> region, output;
  auto* upsert = app.add_subcommand("upsert", "Insert or replace one offering");
  add_common(upsert, common);
  upsert->add_option("--provider", provider, "Provider name")->required();
  upsert->add_option("--region", region, "Region name (default Any)");
  upsert->add_option("--type", upsert_type, "compute, storage or transfer")
      ->required()
      ->check(CLI::IsMember({"compute", "storage", "transfer"}));
  upsert->add_option("--offering", offering_path, "Offering JSON file")->required()->check(CLI::ExistingFile);
  upsert->add_option("--output", output, "Write here instead of overwriting the catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (*validate) return run_validate(common);
  if (*select) return run_select(common, select_args);
  if (*serve) return run_serve(common, host, port, ttl);
  if (*count) return run_offer_count(common);
  if (*list) return run_list(common, list_type, pattern, providers);
  return run_upsert(common, provider, region, upsert_type, offering_path, output);
}
