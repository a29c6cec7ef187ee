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

// holoslice command line: runs scenarios, compares reports, and serves the
// slice management API. Talks to the library only through its C interface.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "holoslice/holoslice.h"
#include "json.hpp"

namespace {

using nlohmann::json;

const char* const kScenarios[] = {"ec1", "ec2", "hosts", "inc_audience",
                                  "inc_source"};
constexpr int kFullFrames = 36000;

int report_failure(const char* what, hs_status status) {
  std::fprintf(stderr, "holoslice: %s: %s: %s\n", what, hs_status_name(status),
               hs_last_error());
  return 1;
}

// Owns a string handed out by the library.
struct LibString {
  char* ptr = nullptr;
  ~LibString() { hs_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct RunOptions {
  std::vector<std::string> scenarios;
  std::string topology;
  std::string out = "out";
  int frames = 1000;
  int frame_size = 9000;
  double fps = 30.0;
  int mtu = 1500;
  double ratio = 0.4;
  double transcode_delay_ms = 0.2;
  std::string backend = "controller";
  bool full = false;
  bool parallel = false;
  bool seedless = false;
};

int run_compare(const std::vector<std::string>& docs, const std::string& json_out) {
  json array = json::array();
  for (const auto& d : docs) array.push_back(json::parse(d));
  LibString cmp, table;
  const hs_status st =
      hs_compare_reports(array.dump().c_str(), &cmp.ptr, &table.ptr);
  if (st != HS_OK) return report_failure("compare", st);
  std::cout << table.str();
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) {
      std::fprintf(stderr, "holoslice: cannot write %s\n", json_out.c_str());
      return 1;
    }
    out << json::parse(cmp.str()).dump(2) << '\n';
  }
  return 0;
}

int cmd_run(RunOptions opts) {
  std::vector<std::string> names;
  for (const auto& s : opts.scenarios) {
    if (s == "all") {
      names.assign(std::begin(kScenarios), std::end(kScenarios));
      break;
    }
    names.push_back(s);
  }
  if (opts.full) opts.frames = kFullFrames;
  const json options{{"frames", opts.frames},
                     {"frame_size", opts.frame_size},
                     {"fps", opts.fps},
                     {"mtu", opts.mtu},
                     {"ratio", opts.ratio},
                     {"transcode_delay_ms", opts.transcode_delay_ms},
                     {"backend", opts.backend},
                     {"record_hops", !opts.full}};
  const std::string options_text = options.dump();

  hs_topology* topo = nullptr;
  hs_status st = hs_topology_load_file(opts.topology.c_str(), &topo);
  if (st != HS_OK) return report_failure(opts.topology.c_str(), st);

  std::vector<std::string> reports(names.size());
  std::vector<hs_status> status(names.size(), HS_OK);
  std::vector<std::string> errors(names.size());
  auto one = [&](std::size_t i) {
    LibString doc;
    status[i] = hs_scenario_run(topo, names[i].c_str(), options_text.c_str(),
                                opts.out.c_str(), &doc.ptr);
    if (status[i] == HS_OK) {
      reports[i] = doc.str();
    } else {
      errors[i] = hs_last_error();
    }
  };
  if (opts.parallel) {
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < names.size(); ++i) workers.emplace_back(one, i);
    for (auto& t : workers) t.join();
  } else {
    for (std::size_t i = 0; i < names.size(); ++i) one(i);
  }
  hs_topology_free(topo);

  int rc = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (status[i] != HS_OK) {
      std::fprintf(stderr, "holoslice: %s: %s: %s\n", names[i].c_str(),
                   hs_status_name(status[i]), errors[i].c_str());
      rc = 1;
      continue;
    }
    const json r = json::parse(reports[i]);
    std::printf("%-14s load %.4f  delivered %llu/%llu  -> %s/%s.json\n",
                names[i].c_str(), r.at("network_load").get<double>(),
                r.at("delivered").get<unsigned long long>(),
                r.at("injected").get<unsigned long long>(), opts.out.c_str(),
                names[i].c_str());
  }
  if (rc == 0 && names.size() >= 2) {
    rc = run_compare(reports, opts.out + "/comparison.json");
  }
  return rc;
}

int cmd_compare(const std::vector<std::string>& files, const std::string& json_out) {
  std::vector<std::string> docs;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) {
      std::fprintf(stderr, "holoslice: cannot read %s\n", f.c_str());
      return 1;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    json doc;
    try {
      doc = json::parse(ss.str());
    } catch (const json::exception& e) {
      std::fprintf(stderr, "holoslice: %s: %s\n", f.c_str(), e.what());
      return 1;
    }
    // Directories written by `run` also hold the comparison document.
    if (doc.value("schema", "") != "holoslice.metrics/v1") continue;
    docs.push_back(doc.dump());
  }
  try {
    return run_compare(docs, json_out);
  } catch (const json::exception& e) {
    std::fprintf(stderr, "holoslice: %s\n", e.what());
    return 1;
  }
}

int cmd_serve(const std::string& addr_flag, const std::string& topology,
              const std::string& catalog_file, const std::string& backend) {
  std::string addr = addr_flag;
  if (addr.empty()) {
    const char* env = std::getenv("HOLOSLICE_ADDR");
    addr = env && *env ? env : "127.0.0.1:8080";
  }
  std::string catalog;
  if (!catalog_file.empty()) {
    std::ifstream in(catalog_file);
    if (!in) {
      std::fprintf(stderr, "holoslice: cannot read %s\n", catalog_file.c_str());
      return 1;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    catalog = ss.str();
  }
  hs_topology* topo = nullptr;
  hs_status st = hs_topology_load_file(topology.c_str(), &topo);
  if (st != HS_OK) return report_failure(topology.c_str(), st);
  hs_engine* engine = nullptr;
  st = hs_engine_create(topo, catalog.empty() ? nullptr : catalog.c_str(),
                        backend.c_str(), &engine);
  hs_topology_free(topo);
  if (st != HS_OK) return report_failure("engine", st);
  hs_server* server = nullptr;
  st = hs_server_start(engine, addr.c_str(), &server);
  if (st != HS_OK) {
    hs_engine_free(engine);
    return report_failure(addr.c_str(), st);
  }
  std::printf("holoslice: serving on port %d\n", hs_server_port(server));
  std::fflush(stdout);
  hs_server_wait(server);
  hs_server_stop(server);
  hs_engine_free(engine);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holoslice: slices with in-network transcoding"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "run scenarios and write reports");
  run_cmd->add_option("--scenario", run.scenarios,
                      "ec1, ec2, hosts, inc_audience, inc_source or all")
      ->required();
  run_cmd->add_option("--topology", run.topology, "topology file")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "output directory");
  run_cmd->add_option("--frames", run.frames)->check(CLI::PositiveNumber);
  run_cmd->add_option("--frame-size", run.frame_size, "bytes")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--fps", run.fps)->check(CLI::PositiveNumber);
  run_cmd->add_option("--mtu", run.mtu, "bytes")->check(CLI::Range(64, 65535));
  run_cmd->add_option("--ratio", run.ratio, "transcoder size ratio")
      ->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--transcode-delay-ms", run.transcode_delay_ms)
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--backend", run.backend, "controller or direct")
      ->check(CLI::IsMember({"controller", "direct"}));
  run_cmd->add_flag("--full", run.full, "36000 frames, no per-hop records");
  run_cmd->add_flag("--parallel", run.parallel, "one thread per scenario");
  run_cmd->add_flag("--seedless", run.seedless,
                    "accepted for compatibility; runs are deterministic");

  std::vector<std::string> files;
  std::string compare_json;
  auto* cmp_cmd = app.add_subcommand("compare", "compare metrics reports");
  cmp_cmd->add_option("files", files, "holoslice.metrics/v1 files")
      ->required()
      ->check(CLI::ExistingFile);
  cmp_cmd->add_option("--json", compare_json, "write the comparison here");

  std::string addr, serve_topology, catalog, serve_backend = "controller";
  auto* serve_cmd = app.add_subcommand("serve", "serve the slice API");
  serve_cmd->add_option("--addr", addr, "host:port (default $HOLOSLICE_ADDR)");
  serve_cmd->add_option("--topology", serve_topology, "topology file")
      ->required()
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--catalog", catalog, "INC catalog file")
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--backend", serve_backend, "controller or direct")
      ->check(CLI::IsMember({"controller", "direct"}));

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) return cmd_run(run);
  if (*cmp_cmd) return cmd_compare(files, compare_json);
  return cmd_serve(addr, serve_topology, catalog, serve_backend);
}
