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

#include "net/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace holoslice::net {

using nlohmann::json;

const char* to_string(NodeType type) {
  switch (type) {
    case NodeType::kProgrammableSwitch: return "switch";
    case NodeType::kHost: return "host";
    case NodeType::kEdgeServer: return "edge_server";
    case NodeType::kStreamingServer: return "streaming_server";
  }
  return "unknown";
}

bool PathSpec::contains(const NodeId& node) const {
  return std::find(hops.begin(), hops.end(), node) != hops.end();
}

std::vector<Channel> PathSpec::channels() const {
  std::vector<Channel> out;
  for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
    out.push_back(Channel{hops[i], hops[i + 1]});
  }
  return out;
}

std::string to_string(const PathSpec& path) {
  std::string out;
  for (const auto& hop : path.hops) {
    if (!out.empty()) out += '-';
    out += hop;
  }
  return out;
}

Topology Topology::build(std::vector<Node> nodes, std::vector<Link> links) {
  Topology t;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "node id must be non-empty");
    }
    if (!t.index_.emplace(n.id, i).second) {
      throw Error(ErrorCode::kDuplicateNode, "duplicate node id '" + n.id + "'");
    }
    if (n.kind.type == NodeType::kProgrammableSwitch &&
        !(n.kind.cpu_capacity > 0.0)) {
      throw Error(ErrorCode::kInvalidCapacity,
                  "switch '" + n.id + "' needs cpu_capacity > 0");
    }
    if (n.kind.proc_delay.count() < 0 || n.kind.pipeline_delay.count() < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "negative delay on node '" + n.id + "'");
    }
    t.adjacency_[n.id];
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const Link& l = links[i];
    for (const NodeId* end : {&l.a, &l.b}) {
      if (!t.index_.count(*end)) {
        throw Error(ErrorCode::kDanglingEndpoint,
                    "link endpoint '" + *end + "' is not a declared node");
      }
    }
    if (l.a == l.b) {
      throw Error(ErrorCode::kInvalidArgument, "self-loop on '" + l.a + "'");
    }
    if (l.capacity == 0) {
      throw Error(ErrorCode::kInvalidCapacity,
                  "link " + l.a + "-" + l.b + " needs capacity > 0");
    }
    if (l.prop_delay.count() < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "link " + l.a + "-" + l.b + " has negative prop_delay");
    }
    auto key = std::minmax(l.a, l.b);
    if (!seen.emplace(key.first, key.second).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate link " + l.a + "-" + l.b);
    }
    t.adjacency_[l.a].push_back(l.b);
    t.adjacency_[l.b].push_back(l.a);
    t.channel_link_[Channel{l.a, l.b}] = i;
    t.channel_link_[Channel{l.b, l.a}] = i;
  }
  for (auto& [id, adj] : t.adjacency_) std::sort(adj.begin(), adj.end());
  for (const auto& [c, unused] : t.channel_link_) {
    t.channel_index_[c] = static_cast<std::uint32_t>(t.channels_.size());
    t.channels_.push_back(c);
  }
  t.nodes_ = std::move(nodes);
  t.links_ = std::move(links);
  return t;
}

const Node& Topology::node(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorCode::kUnknownNode, "unknown node '" + id + "'");
  }
  return nodes_[it->second];
}

bool Topology::is_switch(const NodeId& id) const {
  auto it = index_.find(id);
  return it != index_.end() &&
         nodes_[it->second].kind.type == NodeType::kProgrammableSwitch;
}

const std::vector<NodeId>& Topology::neighbors(const NodeId& id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) {
    throw Error(ErrorCode::kUnknownNode, "unknown node '" + id + "'");
  }
  return it->second;
}

std::optional<Link> Topology::link_between(const NodeId& a,
                                           const NodeId& b) const {
  auto it = channel_link_.find(Channel{a, b});
  if (it == channel_link_.end()) return std::nullopt;
  return links_[it->second];
}

std::optional<std::uint32_t> Topology::channel_index(const Channel& c) const {
  auto it = channel_index_.find(c);
  if (it == channel_index_.end()) return std::nullopt;
  return it->second;
}

Bandwidth Topology::capacity(const Channel& c) const {
  auto it = channel_link_.find(c);
  if (it == channel_link_.end()) {
    throw Error(ErrorCode::kUnknownNode, "no channel " + to_string(c));
  }
  return links_[it->second].capacity;
}

Duration Topology::prop_delay(const Channel& c) const {
  auto it = channel_link_.find(c);
  if (it == channel_link_.end()) {
    throw Error(ErrorCode::kUnknownNode, "no channel " + to_string(c));
  }
  return links_[it->second].prop_delay;
}

bool Topology::is_fabric_channel(const Channel& c) const {
  return is_switch(c.from) && is_switch(c.to) && channel_link_.count(c);
}

void Topology::validate_path(const PathSpec& path) const {
  if (path.hops.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty path");
  }
  std::set<NodeId> visited;
  for (std::size_t i = 0; i < path.hops.size(); ++i) {
    const NodeId& hop = path.hops[i];
    if (!contains(hop)) {
      throw Error(ErrorCode::kUnknownNode, "path hop '" + hop + "' unknown");
    }
    if (!visited.insert(hop).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "path " + to_string(path) + " repeats '" + hop + "'");
    }
    if (i > 0 && !channel_link_.count(Channel{path.hops[i - 1], hop})) {
      throw Error(ErrorCode::kInvalidArgument,
                  "path " + to_string(path) + ": " + path.hops[i - 1] +
                      " and " + hop + " are not adjacent");
    }
  }
}

namespace {

NodeType parse_kind(const std::string& kind) {
  if (kind == "switch" || kind == "programmable_switch") {
    return NodeType::kProgrammableSwitch;
  }
  if (kind == "host") return NodeType::kHost;
  if (kind == "edge_server") return NodeType::kEdgeServer;
  if (kind == "streaming_server") return NodeType::kStreamingServer;
  throw Error(ErrorCode::kParse, "unknown node kind '" + kind + "'");
}

Duration millis_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return from_millis(fallback);
  return from_millis(j.at(key).get<double>());
}

}  // namespace

Topology load_topology(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true,
                      /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("topology: ") + e.what());
  }
  std::vector<Node> nodes;
  std::vector<Link> links;
  try {
    if (!doc.is_object() || !doc.contains("nodes")) {
      throw Error(ErrorCode::kParse, "topology: missing 'nodes'");
    }
    for (const auto& jn : doc.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<std::string>();
      n.kind.type = parse_kind(jn.at("kind").get<std::string>());
      if (n.kind.type == NodeType::kProgrammableSwitch) {
        n.kind.cpu_capacity = jn.value("cpu_capacity", kDefaultSwitchCpu);
        n.kind.pipeline_delay =
            millis_field(jn, "pipeline_delay_ms", kDefaultPipelineDelayMs);
      }
      n.kind.proc_delay = millis_field(jn, "proc_delay_ms", 0.0);
      nodes.push_back(std::move(n));
    }
    if (doc.contains("links")) {
      for (const auto& jl : doc.at("links")) {
        Link l;
        l.a = jl.at("a").get<std::string>();
        l.b = jl.at("b").get<std::string>();
        const double mbps = jl.at("capacity_mbps").get<double>();
        if (!(mbps > 0.0)) {
          throw Error(ErrorCode::kInvalidCapacity,
                      "link " + l.a + "-" + l.b + " needs capacity_mbps > 0");
        }
        l.capacity = static_cast<Bandwidth>(std::llround(mbps * 1e6));
        l.prop_delay = millis_field(jl, "prop_delay_ms", kDefaultPropDelayMs);
        links.push_back(std::move(l));
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("topology: ") + e.what());
  }
  return Topology::build(std::move(nodes), std::move(links));
}

Topology load_topology_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open topology '" + path.string() + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return load_topology(buf.str());
}

PathSpec shortest_path(const Topology& topo, const NodeId& src,
                       const NodeId& dst, const ChannelFilter& usable) {
  topo.node(src);
  topo.node(dst);
  if (src == dst) return PathSpec{{src}};

  auto can_use = [&](const NodeId& from, const NodeId& to) {
    return !usable || usable(Channel{from, to});
  };
  auto can_transit = [&](const NodeId& n) {
    return n == dst || topo.is_switch(n);
  };

  // Hop distance to dst, walking channels backwards from dst.
  std::map<NodeId, std::size_t> dist;
  std::deque<NodeId> frontier{dst};
  dist[dst] = 0;
  while (!frontier.empty()) {
    NodeId v = frontier.front();
    frontier.pop_front();
    if (v != dst && !topo.is_switch(v)) continue;
    for (const NodeId& u : topo.neighbors(v)) {
      if (dist.count(u) || !can_use(u, v)) continue;
      dist[u] = dist[v] + 1;
      frontier.push_back(u);
    }
  }
  if (!dist.count(src)) {
    throw Error(ErrorCode::kNoPath, "no path from " + src + " to " + dst);
  }

  PathSpec path{{src}};
  NodeId at = src;
  while (at != dst) {
    const std::size_t want = dist.at(at) - 1;
    const NodeId* next = nullptr;
    for (const NodeId& n : topo.neighbors(at)) {
      auto it = dist.find(n);
      if (it != dist.end() && it->second == want && can_transit(n) &&
          can_use(at, n)) {
        next = &n;
        break;
      }
    }
    if (next == nullptr) {
      throw Error(ErrorCode::kInternal, "shortest_path: broken distance field");
    }
    at = *next;
    path.hops.push_back(at);
  }
  return path;
}

ChannelBandwidth residual_bandwidth(const Topology& topo,
                                    std::span<const Reservation> reservations) {
  ChannelBandwidth committed;
  for (const auto& [channel, bps] : reservations) {
    if (!topo.channel_index(channel)) {
      throw Error(ErrorCode::kUnknownNode,
                  "reservation on unknown channel " + to_string(channel));
    }
    committed[channel] += bps;
  }
  ChannelBandwidth residual;
  for (const Channel& c : topo.channels()) {
    const Bandwidth cap = topo.capacity(c);
    const Bandwidth used = committed.count(c) ? committed.at(c) : 0;
    if (used > cap) {
      throw Error(ErrorCode::kInfeasible,
                  "channel " + to_string(c) + " over-reserved: " +
                      std::to_string(used) + " > " + std::to_string(cap) +
                      " bit/s");
    }
    residual[c] = cap - used;
  }
  return residual;
}

}  // namespace holoslice::net
