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

#ifndef HOLOSLICE_SIM_SIMULATOR_HPP_
#define HOLOSLICE_SIM_SIMULATOR_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common/types.hpp"
#include "dataplane/switch_state.hpp"
#include "net/topology.hpp"

namespace holoslice::sim {

using dataplane::Packet;

struct FlowSpec {
  std::string stream_id;
  NodeId source;
  // Order fixes replication order: packet k goes to destinations[0] first.
  std::vector<NodeId> destinations;
  std::uint32_t frame_count = 1;
  std::uint32_t frame_size = 1;  // bytes
  Duration frame_interval{0};
  std::uint32_t mtu = 1500;
  SliceTag tag;
  // Edge server that every copy is addressed to first. The relay processes
  // the packet and re-addresses it to its destination.
  std::optional<NodeId> relay;

  // Throws kConfig on a malformed flow or unknown endpoints.
  void validate(const net::Topology& topo) const;
};

// One frame's packets in injection order: for each fragment k, one copy per
// destination in destination order. seq numbers count per destination.
std::vector<std::vector<Packet>> packetize(const FlowSpec& flow);

inline constexpr std::uint32_t kNoChannel =
    std::numeric_limits<std::uint32_t>::max();

// Timing of one packet at one node. The last hop of a delivered packet has
// channel == kNoChannel.
struct HopRecord {
  NodeId node;
  Duration arrived{0};
  Duration ready{0};     // processing done, packet joins the output queue
  Duration tx_start{0};
  Duration tx_end{0};
  std::uint32_t channel = kNoChannel;
  std::uint32_t bytes = 0;
  std::optional<SliceTag> entry_tag;  // set when a switch table entry matched
  bool transcoded = false;

  bool operator==(const HopRecord&) const = default;
};

struct PacketRecord {
  std::string stream_id;
  NodeId dst;
  std::uint64_t seq = 0;
  SliceTag tag;
  Duration sent_at{0};
  Duration received_at{0};
  std::uint32_t bytes_delivered = 0;
  // (topology channel index, bytes) for every channel the packet crossed.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> link_bytes;
  std::vector<HopRecord> hops;  // empty unless hop recording is on

  Duration latency() const { return received_at - sent_at; }
  bool operator==(const PacketRecord&) const = default;
};

struct DropRecord {
  NodeId node;
  SliceTag tag;
  std::string stream_id;
  NodeId dst;
  std::uint64_t seq = 0;
  std::string reason;

  bool operator==(const DropRecord&) const = default;
};

struct SliceCounters {
  std::uint64_t injected = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;

  bool operator==(const SliceCounters&) const = default;
};

struct SimInput {
  const net::Topology* topology = nullptr;
  const std::map<NodeId, dataplane::SwitchState>* switches = nullptr;
  // Compute function run by each relay (edge server). The server's own
  // proc_delay is added to the function's per-packet delay.
  std::map<NodeId, dataplane::ExternSpec> relay_functions;
  std::vector<FlowSpec> flows;
  Duration duration_limit{0};
  bool record_hops = true;
};

struct SimResult {
  std::vector<PacketRecord> trace;  // delivery order
  std::vector<DropRecord> drops;
  std::vector<std::uint64_t> channel_bytes;  // by topology channel index
  std::map<SliceTag, SliceCounters> counters;
  Duration first_injection{0};
  Duration last_delivery{0};
  std::uint64_t events = 0;

  Duration span() const { return last_delivery - first_injection; }
  bool operator==(const SimResult&) const = default;
};

// Deterministic discrete-event run. Output queues are unbounded FIFOs; the
// only losses are table misses, explicit drops, and packets still in flight
// when duration_limit is reached.
SimResult run(const SimInput& input);

}  // namespace holoslice::sim

#endif  // HOLOSLICE_SIM_SIMULATOR_HPP_
