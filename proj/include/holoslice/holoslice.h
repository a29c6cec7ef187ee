/* Copyright 2026 The holoslice Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HOLOSLICE_HOLOSLICE_H_
#define HOLOSLICE_HOLOSLICE_H_

#include <stdint.h>

#if defined(HOLOSLICE_BUILDING)
#define HS_API __attribute__((visibility("default")))
#else
#define HS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values are stable across releases. */
typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_PARSE = 1,
  HS_ERR_INVALID_ARGUMENT = 2,
  HS_ERR_DUPLICATE_NODE = 3,
  HS_ERR_DANGLING_ENDPOINT = 4,
  HS_ERR_INVALID_CAPACITY = 5,
  HS_ERR_UNKNOWN_NODE = 6,
  HS_ERR_NO_PATH = 7,
  HS_ERR_INFEASIBLE = 8,
  HS_ERR_DUPLICATE_ENTRY = 9,
  HS_ERR_UNKNOWN_EXTERN = 10,
  HS_ERR_INSUFFICIENT_CPU = 11,
  HS_ERR_UNKNOWN_PROGRAM = 12,
  HS_ERR_DUPLICATE_PROGRAM = 13,
  HS_ERR_NO_FEASIBLE_PLACEMENT = 14,
  HS_ERR_UNKNOWN_SLICE = 15,
  HS_ERR_SLICE_NOT_ACTIVE = 16,
  HS_ERR_INVALID_TARGET = 17,
  HS_ERR_BACKEND_UNAVAILABLE = 18,
  HS_ERR_CONFIG = 19,
  HS_ERR_NO_PACKETS = 20,
  HS_ERR_INSUFFICIENT_PACKETS = 21,
  HS_ERR_ZERO_SPAN = 22,
  HS_ERR_WORKLOAD_MISMATCH = 23,
  HS_ERR_ROUTE_MISMATCH = 24,
  HS_ERR_IO = 25,
  HS_ERR_INTERNAL = 26
} hs_status;

typedef struct hs_topology hs_topology;
typedef struct hs_engine hs_engine;
typedef struct hs_server hs_server;

/* Symbolic name of a status, e.g. "infeasible". Never NULL. */
HS_API const char* hs_status_name(hs_status status);

/* Message of the last failed call on this thread; "" when none. */
HS_API const char* hs_last_error(void);

/* Releases a string returned through a char** out parameter. */
HS_API void hs_string_free(char* str);

/* Topologies. The JSON format is described in docs/formats.md. */
HS_API hs_status hs_topology_load_file(const char* path, hs_topology** out);
HS_API hs_status hs_topology_load_string(const char* text, hs_topology** out);
HS_API void hs_topology_free(hs_topology* topology);

/* Engines. catalog_json may be NULL for the built-in catalog; backend is
 * "controller" (default when NULL) or "direct". The topology may be freed
 * after the engine is created. */
HS_API hs_status hs_engine_create(const hs_topology* topology,
                                  const char* catalog_json,
                                  const char* backend, hs_engine** out);
HS_API void hs_engine_free(hs_engine* engine);

/* Slice operations. Results are holoslice.slice/v1 documents. */
HS_API hs_status hs_engine_create_slice(hs_engine* engine,
                                        const char* request_json,
                                        char** out_json);
HS_API hs_status hs_engine_get_slice(hs_engine* engine, uint32_t id,
                                     char** out_json);
HS_API hs_status hs_engine_list_slices(hs_engine* engine, char** out_json);
HS_API hs_status hs_engine_update_slice(hs_engine* engine, uint32_t id,
                                        const char* update_json,
                                        char** out_json);
HS_API hs_status hs_engine_delete_slice(hs_engine* engine, uint32_t id,
                                        char** out_json);
/* holoslice.snapshot/v1 document. */
HS_API hs_status hs_engine_collect_stats(hs_engine* engine, char** out_json);

/* Runs one scenario ("ec1", "ec2", "hosts", "inc_audience", "inc_source").
 * options_json may be NULL; recognised keys: frames, frame_size, fps, mtu,
 * ratio, transcode_delay_ms, backend, record_hops, step_costs_ms. When
 * out_dir is non-NULL the metrics report and packet trace are written there.
 * out_report_json receives the holoslice.metrics/v1 document. Safe to call
 * concurrently on the same topology. */
HS_API hs_status hs_scenario_run(const hs_topology* topology,
                                 const char* scenario,
                                 const char* options_json, const char* out_dir,
                                 char** out_report_json);

/* reports_json is a JSON array of holoslice.metrics/v1 documents. Either
 * output may be NULL. */
HS_API hs_status hs_compare_reports(const char* reports_json,
                                    char** out_comparison_json,
                                    char** out_table);

/* Management service over an engine that must outlive the server.
 * addr is "host:port" or ":port"; port 0 picks a free port. */
HS_API hs_status hs_server_start(hs_engine* engine, const char* addr,
                                 hs_server** out);
HS_API int hs_server_port(const hs_server* server);
/* Blocks until the server stops. */
HS_API void hs_server_wait(hs_server* server);
/* Stops and releases the server. */
HS_API void hs_server_stop(hs_server* server);

#ifdef __cplusplus
}
#endif

#endif /* HOLOSLICE_HOLOSLICE_H_ */
