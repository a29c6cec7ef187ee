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

#ifndef HOLOSLICE_CONTROL_SLICE_ENGINE_HPP_
#define HOLOSLICE_CONTROL_SLICE_ENGINE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "control/adapter.hpp"
#include "control/catalog.hpp"
#include "control/network.hpp"

namespace holoslice::control {

enum class PlacementKind { kNearSource, kNearAudience, kExplicit, kGreedyMinLoad };

const char* to_string(PlacementKind kind);
PlacementKind parse_placement(const std::string& name);

struct PlacementStrategy {
  PlacementKind kind = PlacementKind::kGreedyMinLoad;
  std::vector<NodeId> nodes;  // kExplicit only

  bool operator==(const PlacementStrategy&) const = default;
};

struct SliceRequest {
  Bandwidth bandwidth = 0;
  Duration latency_bound{0};  // zero: unconstrained
  std::uint32_t max_attendees = 0;
  std::vector<NodeId> attendees;
  NodeId source;
  bool inc_enabled = false;
  std::optional<std::string> inc_function;
  PlacementStrategy placement;
  // Edge-computing baseline: the stream is carried to this edge server,
  // processed there, and delivered onward. Not combinable with INC.
  std::optional<NodeId> relay;
  // Pinned routes, keyed by the node a segment ends at (the relay or an
  // attendee). Checked against residual capacity like computed routes.
  std::map<NodeId, net::PathSpec> route_hints;

  // Throws kInvalidArgument / kUnknownNode.
  void validate(const net::Topology& topo) const;
  bool operator==(const SliceRequest&) const = default;
};

struct Embedding {
  std::optional<net::PathSpec> relay_path;      // source -> relay
  std::map<NodeId, net::PathSpec> paths;        // delivery leg per attendee
  std::vector<net::Reservation> reservations;   // one per channel used

  bool operator==(const Embedding&) const = default;
};

// Greedy residual-capacity embedding. Each segment takes the shortest path
// over channels with residual >= bandwidth, where channels the slice already
// uses are free (a shared prefix is reserved once). Throws kInfeasible.
Embedding embed(const SliceRequest& request, const net::Topology& topo,
                const StatsSnapshot& stats);

// Transcoding point per attendee: the placement node closest to the
// attendee on its delivery path. Attendees whose path holds no placement
// node are absent.
std::map<NodeId, NodeId> transcode_points(
    const std::vector<NodeId>& placements,
    const std::map<NodeId, net::PathSpec>& paths);

// Static byte accounting: sum over delivery paths and channels of 1 before
// the transcoding point and `ratio` after it.
double static_link_load(const std::map<NodeId, net::PathSpec>& paths,
                        const std::map<NodeId, NodeId>& transcode_at,
                        double ratio);

// Chooses the switches that host the INC program. Each chosen switch must
// have CPU headroom for cpu_cost * pps_per_stream * (streams it serves).
// Throws kNoFeasiblePlacement, or kInvalidArgument for a bad explicit list.
std::vector<NodeId> place_inc(const PlacementStrategy& strategy,
                              const std::map<NodeId, net::PathSpec>& paths,
                              const std::map<NodeId, SwitchStats>& switches,
                              const dataplane::ExternSpec& spec,
                              double pps_per_stream,
                              const net::Topology& topo);

enum class SliceState { kDesigned, kActive, kDecommissioned };
const char* to_string(SliceState state);

using SliceId = std::uint32_t;

struct CreationStep {
  std::string name;
  Duration cost{0};

  bool operator==(const CreationStep&) const = default;
};

struct Placement {
  NodeId node;
  dataplane::ExternRef ext;
  std::vector<NodeId> serves;  // attendees transcoded here
  double cpu_charge = 0.0;

  bool operator==(const Placement&) const = default;
};

struct InstalledRule {
  NodeId node;
  dataplane::MatchKey match;

  bool operator==(const InstalledRule&) const = default;
};

struct SliceRecord {
  SliceId id = 0;
  SliceTag tag;
  SliceRequest request;
  Embedding embedding;
  std::optional<std::string> program;
  std::vector<Placement> placements;
  std::vector<InstalledRule> rules;
  SliceState state = SliceState::kDesigned;
  std::vector<CreationStep> creation_steps;
  std::uint32_t revision = 0;

  Duration creation_time() const;
  bool operator==(const SliceRecord&) const = default;
};

// Simulated cost of each provisioning step. Adapter command latency is
// added on top: table installs to "embed", extern installs to "place_inc".
struct StepCosts {
  Duration validate = std::chrono::milliseconds(20);
  Duration collect_stats = std::chrono::milliseconds(60);
  Duration embed = std::chrono::milliseconds(100);
  Duration select_program = std::chrono::milliseconds(20);
  Duration place = std::chrono::milliseconds(45);
};

struct EngineConfig {
  StepCosts costs;
  std::uint32_t mtu = 1500;  // converts slice bandwidth into packet rate
};

struct SliceUpdate {
  std::optional<Bandwidth> bandwidth;
  std::optional<std::vector<NodeId>> attendees;
};

// Provisioning front end. Mutations are serialised through one writer lock;
// reads take a shared lock and return copies.
class SliceEngine {
 public:
  SliceEngine(Network& network, Adapter& adapter, IncCatalog catalog,
              EngineConfig config = {});

  SliceRecord create_slice(const SliceRequest& request);
  // Re-embeds and re-places atomically; on failure the slice is untouched.
  SliceRecord update_slice(SliceId id, const SliceUpdate& update);
  // Releases everything the slice holds; returns the decommissioned record.
  SliceRecord delete_slice(SliceId id);

  std::optional<SliceRecord> get_slice(SliceId id) const;
  std::vector<SliceRecord> list_slices() const;
  StatsSnapshot collect_stats();

  // Per-channel sum of reservations held by active slices.
  net::ChannelBandwidth ledger() const;

  const IncCatalog& catalog() const { return catalog_; }
  const EngineConfig& config() const { return config_; }
  Adapter& adapter() { return adapter_; }
  Network& network() { return network_; }

 private:
  struct Plan {
    Embedding embedding;
    std::optional<IncCatalogEntry> program;
    std::vector<NodeId> placement_nodes;
    std::map<NodeId, NodeId> transcode_at;
  };

  Plan plan(const SliceRequest& request, const StatsSnapshot& stats,
            std::vector<CreationStep>* steps) const;
  // Programs the dataplane for `plan`. Returns adapter cost split into
  // (entry installs, extern installs). Rolls back on failure.
  std::pair<Duration, Duration> install(const Plan& plan, SliceRecord& rec);
  void uninstall(SliceRecord& rec);
  SliceTag allocate_tag() const;
  double pps_per_stream(Bandwidth bandwidth) const;

  Network& network_;
  Adapter& adapter_;
  IncCatalog catalog_;
  EngineConfig config_;
  mutable std::shared_mutex mu_;
  std::map<SliceId, SliceRecord> slices_;
  SliceId next_id_ = 1;
};

}  // namespace holoslice::control

#endif  // HOLOSLICE_CONTROL_SLICE_ENGINE_HPP_
