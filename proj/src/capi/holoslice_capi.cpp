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

#include "holoslice/holoslice.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "api/service.hpp"
#include "control/slice_json.hpp"
#include "scenario/scenario.hpp"

using holoslice::Error;
using holoslice::ErrorCode;
using nlohmann::json;
namespace control = holoslice::control;
namespace net = holoslice::net;
namespace scenario = holoslice::scenario;
namespace sim = holoslice::sim;

static_assert(static_cast<int>(ErrorCode::kInternal) == HS_ERR_INTERNAL);
static_assert(static_cast<int>(ErrorCode::kIo) == HS_ERR_IO);
static_assert(static_cast<int>(ErrorCode::kBackendUnavailable) ==
              HS_ERR_BACKEND_UNAVAILABLE);

struct hs_topology {
  std::shared_ptr<const net::Topology> topo;
};

struct hs_engine {
  std::shared_ptr<const net::Topology> topo;
  std::unique_ptr<control::Network> network;
  std::unique_ptr<control::Adapter> adapter;
  std::unique_ptr<control::SliceEngine> engine;
};

struct hs_server {
  std::unique_ptr<holoslice::api::SliceService> service;
};

namespace {

thread_local std::string last_error;

hs_status fail(ErrorCode code, const std::string& message) {
  last_error = message;
  return static_cast<hs_status>(code);
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
hs_status guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return HS_OK;
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  } catch (const json::exception& e) {
    return fail(ErrorCode::kParse, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return fail(ErrorCode::kInternal, e.what());
  }
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& doc) {
  if (out != nullptr) *out = dup(doc.dump());
}

json parse(const char* text, const char* what) {
  require(text, what);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

control::SliceRecord existing(control::SliceEngine& engine, uint32_t id) {
  auto rec = engine.get_slice(id);
  if (!rec) {
    throw Error(ErrorCode::kUnknownSlice, "no slice " + std::to_string(id));
  }
  return *rec;
}

scenario::ScenarioSpec scenario_spec(const char* name, const json& opts) {
  scenario::ScenarioSpec spec;
  spec.name = scenario::parse_scenario(name);
  sim::Workload& w = spec.workload;
  w.frames = opts.value("frames", w.frames);
  w.frame_size = opts.value("frame_size", w.frame_size);
  w.fps = opts.value("fps", w.fps);
  w.mtu = opts.value("mtu", w.mtu);
  w.ratio = opts.value("ratio", w.ratio);
  if (opts.contains("transcode_delay_ms")) {
    w.transcode_delay =
        holoslice::from_millis(opts.at("transcode_delay_ms").get<double>());
  }
  if (opts.contains("backend")) {
    spec.backend = control::parse_backend(opts.at("backend").get<std::string>());
  }
  spec.record_hops = opts.value("record_hops", spec.record_hops);
  if (opts.contains("step_costs_ms")) {
    const json& c = opts.at("step_costs_ms");
    auto set = [&c](const char* key, holoslice::Duration& slot) {
      if (c.contains(key)) slot = holoslice::from_millis(c.at(key).get<double>());
    };
    set("validate", spec.step_costs.validate);
    set("collect_stats", spec.step_costs.collect_stats);
    set("embed", spec.step_costs.embed);
    set("select_program", spec.step_costs.select_program);
    set("place", spec.step_costs.place);
  }
  if (w.frames == 0 || w.frame_size == 0 || w.mtu < 64 || !(w.fps > 0.0) ||
      !(w.ratio > 0.0 && w.ratio <= 1.0)) {
    throw Error(ErrorCode::kConfig, "scenario options out of range");
  }
  return spec;
}

}  // namespace

extern "C" {

HS_API const char* hs_status_name(hs_status status) {
  if (status < HS_OK || status > HS_ERR_INTERNAL) return "unknown";
  return holoslice::to_string(static_cast<ErrorCode>(status));
}

HS_API const char* hs_last_error(void) { return last_error.c_str(); }

HS_API void hs_string_free(char* str) { std::free(str); }

HS_API hs_status hs_topology_load_file(const char* path, hs_topology** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new hs_topology{std::make_shared<const net::Topology>(
        net::load_topology_file(path))};
  });
}

HS_API hs_status hs_topology_load_string(const char* text, hs_topology** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new hs_topology{
        std::make_shared<const net::Topology>(net::load_topology(text))};
  });
}

HS_API void hs_topology_free(hs_topology* topology) { delete topology; }

HS_API hs_status hs_engine_create(const hs_topology* topology,
                                  const char* catalog_json,
                                  const char* backend, hs_engine** out) {
  return guard([&] {
    require(topology, "topology");
    require(out, "out");
    auto catalog = catalog_json ? control::IncCatalog::from_json(catalog_json)
                                : control::IncCatalog::defaults();
    const auto kind = backend ? control::parse_backend(backend)
                              : control::BackendKind::kController;
    auto h = std::make_unique<hs_engine>();
    h->topo = topology->topo;
    h->network = std::make_unique<control::Network>(h->topo);
    h->adapter = control::make_adapter(kind, *h->network);
    h->engine = std::make_unique<control::SliceEngine>(
        *h->network, *h->adapter, std::move(catalog), control::EngineConfig{});
    *out = h.release();
  });
}

HS_API void hs_engine_free(hs_engine* engine) { delete engine; }

HS_API hs_status hs_engine_create_slice(hs_engine* engine,
                                        const char* request_json,
                                        char** out_json) {
  return guard([&] {
    require(engine, "engine");
    auto request =
        control::slice_request_from_json(parse(request_json, "request"));
    emit(out_json, control::to_json(engine->engine->create_slice(request)));
  });
}

HS_API hs_status hs_engine_get_slice(hs_engine* engine, uint32_t id,
                                     char** out_json) {
  return guard([&] {
    require(engine, "engine");
    emit(out_json, control::to_json(existing(*engine->engine, id)));
  });
}

HS_API hs_status hs_engine_list_slices(hs_engine* engine, char** out_json) {
  return guard([&] {
    require(engine, "engine");
    json list = json::array();
    for (const auto& rec : engine->engine->list_slices()) {
      list.push_back(control::to_json(rec));
    }
    emit(out_json, json{{"slices", list}});
  });
}

HS_API hs_status hs_engine_update_slice(hs_engine* engine, uint32_t id,
                                        const char* update_json,
                                        char** out_json) {
  return guard([&] {
    require(engine, "engine");
    auto update = control::slice_update_from_json(parse(update_json, "update"));
    emit(out_json, control::to_json(engine->engine->update_slice(id, update)));
  });
}

HS_API hs_status hs_engine_delete_slice(hs_engine* engine, uint32_t id,
                                        char** out_json) {
  return guard([&] {
    require(engine, "engine");
    emit(out_json, control::to_json(engine->engine->delete_slice(id)));
  });
}

HS_API hs_status hs_engine_collect_stats(hs_engine* engine, char** out_json) {
  return guard([&] {
    require(engine, "engine");
    emit(out_json, control::to_json(engine->engine->collect_stats()));
  });
}

HS_API hs_status hs_scenario_run(const hs_topology* topology,
                                 const char* scenario,
                                 const char* options_json, const char* out_dir,
                                 char** out_report_json) {
  return guard([&] {
    require(topology, "topology");
    require(scenario, "scenario");
    const json opts =
        options_json ? parse(options_json, "options") : json::object();
    if (!opts.is_object()) {
      throw Error(ErrorCode::kParse, "options must be a JSON object");
    }
    auto outcome =
        scenario::run_scenario(scenario_spec(scenario, opts), topology->topo);
    if (out_dir != nullptr) scenario::write_outputs(outcome, out_dir);
    emit(out_report_json, sim::to_json(outcome.report));
  });
}

HS_API hs_status hs_compare_reports(const char* reports_json,
                                    char** out_comparison_json,
                                    char** out_table) {
  return guard([&] {
    const json docs = parse(reports_json, "reports");
    if (!docs.is_array()) {
      throw Error(ErrorCode::kParse, "reports must be a JSON array");
    }
    std::vector<sim::MetricsReport> reports;
    for (const auto& d : docs) reports.push_back(sim::metrics_from_json(d));
    const auto cmp = scenario::compare(reports);
    const std::string table = scenario::render_table(cmp, reports);
    char* doc = out_comparison_json ? dup(scenario::to_json(cmp).dump()) : nullptr;
    if (out_table != nullptr) {
      try {
        *out_table = dup(table);
      } catch (...) {
        std::free(doc);
        throw;
      }
    }
    if (out_comparison_json != nullptr) *out_comparison_json = doc;
  });
}

HS_API hs_status hs_server_start(hs_engine* engine, const char* addr,
                                 hs_server** out) {
  return guard([&] {
    require(engine, "engine");
    require(addr, "addr");
    require(out, "out");
    const auto ep = holoslice::api::parse_endpoint(addr);
    auto h = std::make_unique<hs_server>();
    h->service = std::make_unique<holoslice::api::SliceService>(*engine->engine);
    h->service->start(ep.host, ep.port);
    *out = h.release();
  });
}

HS_API int hs_server_port(const hs_server* server) {
  return server ? server->service->port() : -1;
}

HS_API void hs_server_wait(hs_server* server) {
  if (server) server->service->wait();
}

HS_API void hs_server_stop(hs_server* server) {
  if (server) server->service->stop();
  delete server;
}

}  // extern "C"
