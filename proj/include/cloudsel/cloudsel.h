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

/* C interface to the cloudsel library.
 *
 * Functions return a cs_status. On failure, cs_last_error() holds a message
 * for the calling thread and cs_last_error_param() the offending parameter or
 * field path when one is known. Strings returned through char** belong to the
 * caller and are released with cs_string_free().
 */
#ifndef CLOUDSEL_CLOUDSEL_H_
#define CLOUDSEL_CLOUDSEL_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(CS_BUILDING_LIBRARY)
#define CS_API __attribute__((visibility("default")))
#else
#define CS_API
#endif

typedef struct cs_catalog cs_catalog;
typedef struct cs_engine cs_engine;
typedef struct cs_server cs_server;

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_INVALID_ARGUMENT = 1,
  CS_ERR_IO = 2,
  CS_ERR_PARSE = 3,
  CS_ERR_INVARIANT = 4,
  CS_ERR_VALIDATION = 5,
  CS_ERR_NOT_FOUND = 6,
  CS_ERR_CAPACITY = 7,
  CS_ERR_CURRENCY = 8,
  CS_ERR_BIND = 9,
  CS_ERR_INTERNAL = 10
} cs_status;

typedef enum cs_service_type { CS_SERVICE_COMPUTE = 0, CS_SERVICE_STORAGE = 1, CS_SERVICE_TRANSFER = 2 } cs_service_type;

typedef enum cs_query_kind { CS_QUERY_STORAGE = 0, CS_QUERY_COMPUTE = 1, CS_QUERY_COMBINED = 2 } cs_query_kind;

/* CS_FORMAT_DEFAULT follows the query's media_type parameter. */
typedef enum cs_format { CS_FORMAT_DEFAULT = 0, CS_FORMAT_JSON = 1, CS_FORMAT_XML = 2, CS_FORMAT_TABLE = 3 } cs_format;

CS_API const char* cs_version(void);
CS_API const char* cs_status_name(cs_status status);
CS_API const char* cs_last_error(void);
CS_API const char* cs_last_error_param(void);
CS_API void cs_string_free(char* s);

/* --- catalog --------------------------------------------------------------- */

CS_API cs_status cs_catalog_load_file(const char* path, int merge_regions, cs_catalog** out);
CS_API cs_status cs_catalog_load_text(const char* json, int merge_regions, cs_catalog** out);
CS_API void cs_catalog_free(cs_catalog* catalog);
CS_API cs_status cs_catalog_to_json(const cs_catalog* catalog, char** out);
CS_API cs_status cs_catalog_save_file(const cs_catalog* catalog, const char* path);
/* Inserts or replaces one offering. region may be NULL ("Any"). Engines
 * created from this catalog see the change on their next query. */
CS_API cs_status cs_catalog_upsert_json(cs_catalog* catalog, const char* provider, const char* region,
                                        cs_service_type type, const char* offering_json);
/* JSON array of {provider, region, locations, type, name, offering}.
 * pattern and providers_csv may be NULL. */
CS_API cs_status cs_catalog_list_offerings(const cs_catalog* catalog, cs_service_type type, const char* pattern,
                                           const char* providers_csv, char** out_json);
CS_API cs_status cs_catalog_offer_count(const cs_catalog* catalog, char** out_json);

/* --- engine ---------------------------------------------------------------- */

/* rates_path may be NULL, in which case only USD is available. */
CS_API cs_status cs_engine_create(const cs_catalog* catalog, const char* rates_path, cs_engine** out);
CS_API void cs_engine_free(cs_engine* engine);
/* Runs one cost query ("storage=50&data_upload_size=1&..."). The response body
 * is always returned, including for rejected queries; http_status is 200,
 * 400 or 500 and the return value mirrors it. */
CS_API cs_status cs_engine_query(cs_engine* engine, cs_query_kind kind, const char* query_string, cs_format format,
                                 int* http_status, char** body);
CS_API cs_status cs_engine_fetch_result(cs_engine* engine, const char* result_id, cs_format format, int* http_status,
                                        char** body);
CS_API cs_status cs_engine_set_result_ttl(cs_engine* engine, long seconds);

/* --- HTTP server ----------------------------------------------------------- */

/* Binds host:port (port 0 picks a free port). The engine must outlive the server. */
CS_API cs_status cs_server_create(cs_engine* engine, const char* host, int port, cs_server** out);
CS_API int cs_server_port(const cs_server* server);
/* Blocks until cs_server_stop() is called from another thread. */
CS_API cs_status cs_server_run(cs_server* server);
CS_API void cs_server_stop(cs_server* server);
CS_API void cs_server_free(cs_server* server);

#ifdef __cplusplus
}
#endif

#endif /* CLOUDSEL_CLOUDSEL_H_ */
