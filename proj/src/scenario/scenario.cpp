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

#include "scenario/scenario.hpp"

#include <cmath>
#include <fstream>

#include "control/slice_json.hpp"

namespace holoslice::scenario {

using control::SliceRequest;
using nlohmann::json;

const std::vector<NodeId>& audience() {
  static const std::vector<NodeId> hosts{"host1", "host2", "host3", "host4",
                                         "host5"};
  return hosts;
}

const char* to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::kEc1: return "ec1";
    case ScenarioName::kEc2: return "ec2";
    case ScenarioName::kHosts: return "hosts";
    case ScenarioName::kIncAudience: return "inc_audience";
    case ScenarioName::kIncSource: return "inc_source";
  }
  return "unknown";
}

const std::vector<ScenarioName>& all_scenarios() {
  static const std::vector<ScenarioName> all{
      ScenarioName::kEc1, ScenarioName::kEc2, ScenarioName::kHosts,
      ScenarioName::kIncAudience, ScenarioName::kIncSource};
  return all;
}

ScenarioName parse_scenario(const std::string& name) {
  for (auto s : all_scenarios()) {
    if (name == to_string(s)) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scenario '" + name + "'");
}

const char* transcode_point(ScenarioName name) {
  switch (name) {
    case ScenarioName::kEc1: return "edge1";
    case ScenarioName::kEc2: return "edge2";
    case ScenarioName::kHosts: return "hosts (after delivery)";
    case ScenarioName::kIncAudience: return "S11,S1,S2";
    case ScenarioName::kIncSource: return "S10";
  }
  return "unknown";
}

const CanonicalRoutes& canonical_routes(ScenarioName name) {
  static const CanonicalRoutes shortest{
      std::nullopt,
      {{"host1", {"S10", "S8", "S11"}},
       {"host2", {"S10", "S8", "S11"}},
       {"host3", {"S10", "S7", "S4", "S2"}},
       {"host4", {"S10", "S7", "S4", "S2"}},
       {"host5", {"S10", "S8", "S5", "S1"}}}};
  static const CanonicalRoutes ec1{
      std::vector<NodeId>{"S10", "S8", "S5", "S6", "S3"},
      {{"host1", {"S3", "S6", "S9", "S11"}},
       {"host2", {"S3", "S6", "S9", "S11"}},
       {"host3", {"S3", "S1", "S2"}},
       {"host4", {"S3", "S1", "S2"}},
       {"host5", {"S3", "S1"}}}};
  static const CanonicalRoutes ec2{std::vector<NodeId>{"S10"},
                                   shortest.delivery};
  switch (name) {
    case ScenarioName::kEc1: return ec1;
    case ScenarioName::kEc2: return ec2;
    default: return shortest;
  }
}

SliceRequest scenario_request(ScenarioName name, const sim::Workload& w) {
  SliceRequest r;
  r.bandwidth = static_cast<Bandwidth>(
      std::llround(static_cast<double>(w.frame_size) * 8.0 * w.fps));
  r.latency_bound = std::chrono::milliseconds(50);
  r.attendees = audience();
  r.max_attendees = static_cast<std::uint32_t>(r.attendees.size());
  r.source = kStreamingServer;
  switch (name) {
    case ScenarioName::kEc1:
      r.relay = kEdgeServer1;
      // Two minimum-hop routes reach S3 from S5 (via S1 and via S6); pin the
      // one the experiment uses.
      r.route_hints[kEdgeServer1] = net::PathSpec{
          {kStreamingServer, "S10", "S8", "S5", "S6", "S3", kEdgeServer1}};
      break;
    case ScenarioName::kEc2:
      r.relay = kEdgeServer2;
      break;
    case ScenarioName::kHosts:
      break;
    case ScenarioName::kIncAudience:
      r.inc_enabled = true;
      r.inc_function = "transcoder";
      r.placement.kind = control::PlacementKind::kNearAudience;
      break;
    case ScenarioName::kIncSource:
      r.inc_enabled = true;
      r.inc_function = "transcoder";
      r.placement.kind = control::PlacementKind::kNearSource;
      break;
  }
  return r;
}

sim::FlowSpec scenario_flow(ScenarioName name, const sim::Workload& w,
                            SliceTag tag) {
  if (!(w.fps > 0.0)) {
    throw Error(ErrorCode::kConfig, "fps must be positive");
  }
  sim::FlowSpec flow;
  flow.stream_id = "hologram";
  flow.source = kStreamingServer;
  flow.destinations = audience();
  flow.frame_count = w.frames;
  flow.frame_size = w.frame_size;
  flow.frame_interval = Duration(std::llround(1e9 / w.fps));
  flow.mtu = w.mtu;
  flow.tag = tag;
  if (name == ScenarioName::kEc1) flow.relay = kEdgeServer1;
  if (name == ScenarioName::kEc2) flow.relay = kEdgeServer2;
  return flow;
}

namespace {

std::vector<NodeId> switch_hops(const net::PathSpec& path,
                                const net::Topology& topo) {
  std::vector<NodeId> out;
  for (const auto& h : path.hops) {
    if (topo.is_switch(h)) out.push_back(h);
  }
  return out;
}

std::string join(const std::vector<NodeId>& hops) {
  std::string out;
  for (const auto& h : hops) out += (out.empty() ? "" : "-") + h;
  return out;
}

}  // namespace

void check_routes(ScenarioName name, const control::SliceRecord& record,
                  const net::Topology& topo) {
  const CanonicalRoutes& want = canonical_routes(name);
  auto mismatch = [&](const std::string& segment, const std::vector<NodeId>& w,
                      const std::vector<NodeId>& got) {
    throw Error(ErrorCode::kRouteMismatch,
                std::string(to_string(name)) + ": route to " + segment +
                    " embedded as (" + join(got) + "), expected (" + join(w) +
                    ")");
  };
  const auto& emb = record.embedding;
  if (want.relay.has_value() != emb.relay_path.has_value()) {
    throw Error(ErrorCode::kRouteMismatch,
                std::string(to_string(name)) + ": relay segment mismatch");
  }
  if (want.relay) {
    auto got = switch_hops(*emb.relay_path, topo);
    if (got != *want.relay) mismatch(*record.request.relay, *want.relay, got);
  }
  for (const auto& [host, hops] : want.delivery) {
    auto it = emb.paths.find(host);
    if (it == emb.paths.end()) mismatch(host, hops, {});
    auto got = switch_hops(it->second, topo);
    if (got != hops) mismatch(host, hops, got);
  }
}

ScenarioOutcome run_scenario(const ScenarioSpec& spec,
                             std::shared_ptr<const net::Topology> topology) {
  const sim::Workload& w = spec.workload;
  control::Network network(topology);
  auto adapter = control::make_adapter(spec.backend, network);

  dataplane::ExternSpec transcoder{"transcoder", w.ratio, w.transcode_delay,
                                   control::kTranscoderCpuCost};
  control::IncCatalog catalog;
  catalog.add(control::IncCatalogEntry{"transcoder", transcoder});
  control::EngineConfig config;
  config.costs = spec.step_costs;
  config.mtu = w.mtu;
  control::SliceEngine engine(network, *adapter, std::move(catalog), config);

  ScenarioOutcome out;
  out.slice = engine.create_slice(scenario_request(spec.name, w));
  check_routes(spec.name, out.slice, *topology);

  sim::SimInput input;
  input.topology = topology.get();
  input.switches = &network.switches();
  input.flows.push_back(scenario_flow(spec.name, w, out.slice.tag));
  if (input.flows.front().relay) {
    input.relay_functions[*input.flows.front().relay] = transcoder;
  }
  // Stream span plus generous drain time.
  input.duration_limit =
      input.flows.front().frame_interval * w.frames + std::chrono::seconds(60);
  input.record_hops = spec.record_hops;
  out.result = sim::run(input);
  network.record_usage(out.result.channel_bytes, out.result.span());
  out.snapshot = engine.collect_stats();

  out.report = sim::summarize(out.result, *topology, audience());
  out.report.label = to_string(spec.name);
  out.report.workload = w;
  out.report.context = json{
      {"scenario", to_string(spec.name)},
      {"transcode_point", transcode_point(spec.name)},
      {"backend", control::to_string(spec.backend)},
      {"slice", control::to_json(out.slice)},
  };
  return out;
}

void write_outputs(const ScenarioOutcome& outcome,
                   const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create '" + dir.string() + "': " +
                                    ec.message());
  }
  const std::string base = outcome.report.label;
  {
    std::ofstream out(dir / (base + ".json"));
    if (!out) throw Error(ErrorCode::kIo, "cannot write report in " + dir.string());
    out << sim::to_json(outcome.report).dump(2) << '\n';
  }
  {
    std::ofstream out(dir / (base + ".trace.csv"));
    if (!out) throw Error(ErrorCode::kIo, "cannot write trace in " + dir.string());
    sim::write_trace_csv(out, outcome.result.trace);
  }
}

}  // namespace holoslice::scenario
