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

#ifndef HOLOSLICE_NET_TOPOLOGY_HPP_
#define HOLOSLICE_NET_TOPOLOGY_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "common/errors.hpp"
#include "common/types.hpp"

namespace holoslice::net {

enum class NodeType {
  kProgrammableSwitch,
  kHost,
  kEdgeServer,
  kStreamingServer,
};

const char* to_string(NodeType type);

struct NodeKind {
  NodeType type = NodeType::kHost;
  // Compute units; only meaningful for programmable switches.
  double cpu_capacity = 0.0;
  // Match/action pipeline latency per packet (switches).
  Duration pipeline_delay{0};
  // Per-packet processing latency (edge servers).
  Duration proc_delay{0};
};

struct Node {
  NodeId id;
  NodeKind kind;
};

struct Link {
  NodeId a;
  NodeId b;
  Bandwidth capacity = 0;
  Duration prop_delay{0};
};

struct PathSpec {
  std::vector<NodeId> hops;

  bool operator==(const PathSpec&) const = default;
  std::size_t link_count() const { return hops.empty() ? 0 : hops.size() - 1; }
  bool contains(const NodeId& node) const;
  std::vector<Channel> channels() const;
};

std::string to_string(const PathSpec& path);  // "S10-S8-S11"

inline constexpr double kDefaultPropDelayMs = 0.5;
inline constexpr double kDefaultPipelineDelayMs = 0.01;
inline constexpr double kDefaultSwitchCpu = 1000.0;

// Immutable infrastructure graph. Each Link is exposed as two directed
// channels that share nothing but their configuration.
class Topology {
 public:
  // Validates every invariant; throws Error on the first violation.
  static Topology build(std::vector<Node> nodes, std::vector<Link> links);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  bool contains(const NodeId& id) const { return index_.count(id) != 0; }
  const Node& node(const NodeId& id) const;  // throws kUnknownNode
  bool is_switch(const NodeId& id) const;

  // Neighbours in lexicographic order.
  const std::vector<NodeId>& neighbors(const NodeId& id) const;

  std::optional<Link> link_between(const NodeId& a, const NodeId& b) const;

  // Directed channels, sorted. Indices are stable for the life of the object.
  const std::vector<Channel>& channels() const { return channels_; }
  std::optional<std::uint32_t> channel_index(const Channel& c) const;
  Bandwidth capacity(const Channel& c) const;
  Duration prop_delay(const Channel& c) const;

  // A fabric channel joins two programmable switches. Host and server
  // attachments are not fabric channels.
  bool is_fabric_channel(const Channel& c) const;

  // Throws unless consecutive hops are adjacent and no node repeats.
  void validate_path(const PathSpec& path) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::map<NodeId, std::size_t> index_;
  std::map<NodeId, std::vector<NodeId>> adjacency_;
  std::vector<Channel> channels_;
  std::map<Channel, std::uint32_t> channel_index_;
  std::map<Channel, std::size_t> channel_link_;
};

// Parses the JSON topology document (comments allowed).
Topology load_topology(std::string_view text);
Topology load_topology_file(const std::filesystem::path& path);

using ChannelFilter = std::function<bool(const Channel&)>;

// Minimum-hop path. Only programmable switches may appear as transit hops.
// Among equal-length paths the one whose hop list is lexicographically
// smallest wins, which is the same as picking the smallest usable next hop at
// every step. `usable` restricts which channels may be traversed.
PathSpec shortest_path(const Topology& topo, const NodeId& src,
                       const NodeId& dst, const ChannelFilter& usable = {});

using Reservation = std::pair<Channel, Bandwidth>;
using ChannelBandwidth = std::map<Channel, Bandwidth>;

// capacity minus the summed reservations for every directed channel.
// Throws kInfeasible when a channel would be over-committed.
ChannelBandwidth residual_bandwidth(const Topology& topo,
                                    std::span<const Reservation> reservations);

}  // namespace holoslice::net

#endif  // HOLOSLICE_NET_TOPOLOGY_HPP_
