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

#ifndef HOLOSLICE_SCENARIO_SCENARIO_HPP_
#define HOLOSLICE_SCENARIO_SCENARIO_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "control/slice_engine.hpp"
#include "sim/metrics.hpp"
#include "sim/simulator.hpp"

namespace holoslice::scenario {

// Node names used by the canonical topology file.
inline constexpr const char* kStreamingServer = "streamsrv";
inline constexpr const char* kEdgeServer1 = "edge1";
inline constexpr const char* kEdgeServer2 = "edge2";
const std::vector<NodeId>& audience();  // host1 .. host5

enum class ScenarioName { kEc1, kEc2, kHosts, kIncAudience, kIncSource };

const char* to_string(ScenarioName name);
ScenarioName parse_scenario(const std::string& name);
const std::vector<ScenarioName>& all_scenarios();

// Expected switch sequences for each segment of a scenario.
struct CanonicalRoutes {
  std::optional<std::vector<NodeId>> relay;      // source -> edge server
  std::map<NodeId, std::vector<NodeId>> delivery;  // per host
};

const CanonicalRoutes& canonical_routes(ScenarioName name);

// Where the stream gets transcoded, for reports.
const char* transcode_point(ScenarioName name);

struct ScenarioSpec {
  ScenarioName name = ScenarioName::kEc1;
  sim::Workload workload;
  control::StepCosts step_costs;
  control::BackendKind backend = control::BackendKind::kController;
  bool record_hops = true;
};

// Full-fidelity frame count; the default workload is scaled down to 1000.
inline constexpr std::uint32_t kFullFrames = 36000;

control::SliceRequest scenario_request(ScenarioName name,
                                       const sim::Workload& workload);
sim::FlowSpec scenario_flow(ScenarioName name, const sim::Workload& workload,
                            SliceTag tag);

// Throws kRouteMismatch when the embedded paths differ from the canonical
// routes.
void check_routes(ScenarioName name, const control::SliceRecord& record,
                  const net::Topology& topo);

struct ScenarioOutcome {
  sim::MetricsReport report;
  control::SliceRecord slice;
  sim::SimResult result;
  control::StatsSnapshot snapshot;  // collected after the run
};

// Provisions the slice through the engine, simulates the stream, and builds
// the metrics report.
ScenarioOutcome run_scenario(const ScenarioSpec& spec,
                             std::shared_ptr<const net::Topology> topology);

// Writes <dir>/<name>.json (metrics) and <dir>/<name>.trace.csv.
void write_outputs(const ScenarioOutcome& outcome,
                   const std::filesystem::path& dir);

struct RankedLatency {
  std::size_t report = 0;  // index into the compared reports
  double avg_latency_s = 0.0;
  std::size_t rank = 0;    // equal latencies share a rank
};

struct ComparisonReport {
  std::vector<std::string> labels;
  std::vector<NodeId> destinations;
  std::vector<double> network_load;
  std::vector<double> load_ratio;  // vs. the first report
  std::vector<std::map<NodeId, double>> latency_ratio;
  std::map<NodeId, std::vector<RankedLatency>> latency_order;  // ascending
  std::vector<bool> jitter_within_bound;
  // Qualitative checks evaluated when the five canonical scenarios are
  // present: name -> passed.
  std::map<std::string, bool> checks;
};

inline constexpr double kJitterBoundS = 0.015;

// Requires >= 2 reports produced under the same workload.
ComparisonReport compare(std::span<const sim::MetricsReport> reports);
nlohmann::json to_json(const ComparisonReport& report);
std::string render_table(const ComparisonReport& report,
                         std::span<const sim::MetricsReport> reports);

}  // namespace holoslice::scenario

#endif  // HOLOSLICE_SCENARIO_SCENARIO_HPP_
