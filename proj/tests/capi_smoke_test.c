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

/* Exercises the C interface from a C translation unit. */

#include <stdio.h>
#include <string.h>

#include "holoslice/holoslice.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,    \
              #cond, hs_last_error());                           \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  hs_topology* topo = NULL;
  hs_topology* bad = NULL;
  hs_engine* engine = NULL;
  char* out = NULL;
  char* table = NULL;
  char reports[65536];

  CHECK(hs_topology_load_file(HOLOSLICE_DATA_DIR "/eval.topo", &topo) == HS_OK);
  CHECK(hs_topology_load_string("{\"nodes\": [", &bad) == HS_ERR_PARSE);
  CHECK(strlen(hs_last_error()) > 0);
  CHECK(strcmp(hs_status_name(HS_ERR_INFEASIBLE), "infeasible") == 0);
  CHECK(hs_engine_create(NULL, NULL, NULL, &engine) == HS_ERR_INVALID_ARGUMENT);
  CHECK(hs_engine_create(topo, NULL, "carrier-pigeon", &engine) != HS_OK);
  CHECK(hs_engine_create(topo, NULL, NULL, &engine) == HS_OK);

  CHECK(hs_engine_create_slice(
            engine,
            "{\"bandwidth_bps\": 2160000, \"attendees\": [\"host1\", \"host3\"],"
            " \"source\": \"streamsrv\", \"inc_enabled\": true,"
            " \"inc_function\": \"transcoder\", \"placement\": \"near_source\"}",
            &out) == HS_OK);
  CHECK(strstr(out, "\"holoslice.slice/v1\"") != NULL);
  hs_string_free(out);
  CHECK(hs_engine_get_slice(engine, 77, &out) == HS_ERR_UNKNOWN_SLICE);
  CHECK(hs_engine_update_slice(engine, 1, "{\"bandwidth_bps\": 20000000}", &out) ==
        HS_ERR_INFEASIBLE);
  CHECK(hs_engine_collect_stats(engine, &out) == HS_OK);
  CHECK(strstr(out, "holoslice.snapshot/v1") != NULL);
  hs_string_free(out);
  CHECK(hs_engine_delete_slice(engine, 1, &out) == HS_OK);
  CHECK(strstr(out, "decommissioned") != NULL);
  hs_string_free(out);
  CHECK(hs_engine_delete_slice(engine, 1, &out) == HS_ERR_SLICE_NOT_ACTIVE);

  CHECK(hs_scenario_run(topo, "ec9", NULL, NULL, &out) == HS_ERR_INVALID_ARGUMENT);
  CHECK(hs_scenario_run(topo, "hosts", "{\"frames\": 0}", NULL, &out) == HS_ERR_CONFIG);

  strcpy(reports, "[");
  CHECK(hs_scenario_run(topo, "ec1", "{\"frames\": 30}", NULL, &out) == HS_OK);
  strcat(reports, out);
  hs_string_free(out);
  strcat(reports, ",");
  CHECK(hs_scenario_run(topo, "inc_source", "{\"frames\": 30}", NULL, &out) == HS_OK);
  strcat(reports, out);
  hs_string_free(out);
  strcat(reports, "]");
  CHECK(hs_compare_reports(reports, &out, &table) == HS_OK);
  CHECK(strstr(out, "holoslice.comparison/v1") != NULL);
  CHECK(strstr(table, "inc_source") != NULL);
  hs_string_free(out);
  hs_string_free(table);
  CHECK(hs_compare_reports("[]", &out, NULL) == HS_ERR_INVALID_ARGUMENT);

  hs_engine_free(engine);
  hs_topology_free(topo);
  puts("capi smoke: ok");
  return 0;
}
