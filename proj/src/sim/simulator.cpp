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

#include "sim/simulator.hpp"

#include <deque>
#include <queue>
#include <set>

namespace holoslice::sim {

using dataplane::Emission;
using net::NodeType;
using net::Topology;

void FlowSpec::validate(const Topology& topo) const {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kConfig, "flow '" + stream_id + "': " + why);
  };
  if (destinations.empty()) fail("no destinations");
  if (frame_count < 1) fail("frame_count must be >= 1");
  if (frame_size < 1) fail("frame_size must be >= 1");
  if (mtu < 64) fail("mtu must be >= 64");
  if (frame_interval.count() < 0) fail("negative frame interval");
  if (!topo.contains(source)) fail("unknown source '" + source + "'");
  std::set<NodeId> seen;
  for (const auto& d : destinations) {
    if (!topo.contains(d)) fail("unknown destination '" + d + "'");
    if (!seen.insert(d).second) fail("destination '" + d + "' listed twice");
  }
  if (relay && !topo.contains(*relay)) fail("unknown relay '" + *relay + "'");
}

std::vector<std::vector<Packet>> packetize(const FlowSpec& flow) {
  const std::uint32_t per_frame = (flow.frame_size + flow.mtu - 1) / flow.mtu;
  const std::uint32_t last = flow.frame_size - (per_frame - 1) * flow.mtu;
  std::vector<std::vector<Packet>> frames(flow.frame_count);
  for (std::uint32_t f = 0; f < flow.frame_count; ++f) {
    auto& out = frames[f];
    out.reserve(static_cast<std::size_t>(per_frame) * flow.destinations.size());
    const Duration created = flow.frame_interval * f;
    for (std::uint32_t k = 0; k < per_frame; ++k) {
      for (const NodeId& dst : flow.destinations) {
        Packet p;
        p.tag = flow.tag;
        p.stream_id = flow.stream_id;
        p.seq = static_cast<std::uint64_t>(f) * per_frame + k;
        p.size = k + 1 == per_frame ? last : flow.mtu;
        p.created_at = created;
        if (flow.relay && *flow.relay != dst) {
          p.dst = *flow.relay;
          p.final_dst = dst;
        } else {
          p.dst = dst;
        }
        out.push_back(std::move(p));
      }
    }
  }
  return frames;
}

namespace {

enum class EventKind { kInjectFrame, kArrivalAtNode, kEnqueue, kTransmissionComplete };

struct Event {
  Duration time;
  std::uint64_t order;  // insertion sequence, FIFO among equal times
  EventKind kind;
  std::uint32_t a;  // flow index | packet slot | channel index
  std::uint32_t b;  // frame index | channel index | -
  NodeId node;      // arrival node

  bool operator>(const Event& other) const {
    if (time != other.time) return time > other.time;
    return order > other.order;
  }
};

struct InFlight {
  Packet packet;
  PacketRecord record;
  bool done = false;
};

struct ChannelState {
  std::deque<std::uint32_t> queue;
  bool busy = false;
};

class Engine {
 public:
  explicit Engine(const SimInput& in)
      : in_(in), topo_(*in.topology), channels_(topo_.channels().size()) {
    result_.channel_bytes.assign(topo_.channels().size(), 0);
  }

  SimResult run() {
    for (const auto& flow : in_.flows) flow.validate(topo_);
    std::set<std::string> ids;
    for (const auto& flow : in_.flows) {
      if (!ids.insert(flow.stream_id).second) {
        throw Error(ErrorCode::kConfig,
                    "duplicate stream id '" + flow.stream_id + "'");
      }
    }
    for (std::uint32_t i = 0; i < in_.flows.size(); ++i) {
      for (std::uint32_t f = 0; f < in_.flows[i].frame_count; ++f) {
        push(in_.flows[i].frame_interval * f, EventKind::kInjectFrame, i, f);
      }
    }
    bool first = true;
    while (!events_.empty()) {
      Event ev = events_.top();
      if (ev.time > in_.duration_limit) break;
      events_.pop();
      ++result_.events;
      switch (ev.kind) {
        case EventKind::kInjectFrame:
          if (first) {
            result_.first_injection = ev.time;
            first = false;
          }
          inject(ev);
          break;
        case EventKind::kArrivalAtNode:
          arrive(ev);
          break;
        case EventKind::kEnqueue:
          enqueue(ev.a, ev.b, ev.time);
          break;
        case EventKind::kTransmissionComplete:
          complete(ev.a, ev.time);
          break;
      }
    }
    for (auto& slot : slots_) {
      if (!slot.done) drop(slot, slot.record.hops.empty()
                                     ? slot.packet.dst
                                     : slot.record.hops.back().node,
                           "expired");
    }
    return std::move(result_);
  }

 private:
  std::uint32_t allocate(InFlight f) {
    if (!free_.empty()) {
      const std::uint32_t slot = free_.back();
      free_.pop_back();
      slots_[slot] = std::move(f);
      return slot;
    }
    slots_.push_back(std::move(f));
    return static_cast<std::uint32_t>(slots_.size() - 1);
  }

  void release(InFlight& f) {
    f = InFlight{};
    f.done = true;
    free_.push_back(static_cast<std::uint32_t>(&f - slots_.data()));
  }

  void push(Duration t, EventKind kind, std::uint32_t a, std::uint32_t b,
            NodeId node = {}) {
    events_.push(Event{t, order_++, kind, a, b, std::move(node)});
  }

  void inject(const Event& ev) {
    const FlowSpec& flow = in_.flows[ev.a];
    FlowSpec one = flow;
    one.frame_count = 1;
    auto frame = std::move(packetize(one).front());
    const std::uint64_t per_frame = frame.size() / flow.destinations.size();
    for (auto& p : frame) {
      p.seq += static_cast<std::uint64_t>(ev.b) * per_frame;
      p.created_at = ev.time;
      InFlight f;
      f.record.stream_id = p.stream_id;
      f.record.dst = p.final_dst.value_or(p.dst);
      f.record.seq = p.seq;
      f.record.tag = p.tag;
      f.record.sent_at = ev.time;
      f.packet = std::move(p);
      result_.counters[f.packet.tag].injected++;
      const std::uint32_t slot = allocate(std::move(f));
      depart(slot, flow.source, ev.time, ev.time, std::nullopt, false);
    }
  }

  // Packet at `node` is ready to leave at `ready` (after processing started
  // at `arrived`); resolve the channel and schedule the enqueue.
  void depart(std::uint32_t slot, const NodeId& node, Duration arrived,
              Duration ready, std::optional<SliceTag> entry_tag,
              bool transcoded, const NodeId* next_hop = nullptr) {
    InFlight& f = slots_[slot];
    NodeId next;
    if (next_hop != nullptr) {
      next = *next_hop;
    } else {
      auto hop = egress(node, f.packet.dst);
      if (!hop) {
        drop(f, node, "no route from end node");
        return;
      }
      next = *hop;
    }
    auto idx = topo_.channel_index(Channel{node, next});
    if (!idx) {
      drop(f, node, "next hop '" + next + "' not adjacent");
      return;
    }
    f.packet.provenance.emplace_back(node, arrived);
    if (in_.record_hops) {
      HopRecord h;
      h.node = node;
      h.arrived = arrived;
      h.ready = ready;
      h.channel = *idx;
      h.bytes = f.packet.size;
      h.entry_tag = entry_tag;
      h.transcoded = transcoded;
      f.record.hops.push_back(std::move(h));
    }
    push(ready, EventKind::kEnqueue, slot, *idx);
  }

  std::optional<NodeId> egress(const NodeId& node, const NodeId& dst) {
    const auto& adj = topo_.neighbors(node);
    if (adj.size() == 1) return adj.front();
    auto key = Channel{node, dst};
    auto it = egress_cache_.find(key);
    if (it != egress_cache_.end()) return it->second;
    std::optional<NodeId> hop;
    try {
      auto path = net::shortest_path(topo_, node, dst);
      if (path.hops.size() > 1) hop = path.hops[1];
    } catch (const Error&) {
    }
    egress_cache_.emplace(key, hop);
    return hop;
  }

  void enqueue(std::uint32_t slot, std::uint32_t channel, Duration now) {
    ChannelState& ch = channels_[channel];
    ch.queue.push_back(slot);
    if (!ch.busy) start(channel, now);
  }

  void start(std::uint32_t channel, Duration now) {
    ChannelState& ch = channels_[channel];
    ch.busy = true;
    InFlight& f = slots_[ch.queue.front()];
    const Channel& c = topo_.channels()[channel];
    if (in_.record_hops) f.record.hops.back().tx_start = now;
    push(now + serialization_delay(f.packet.size, topo_.capacity(c)),
         EventKind::kTransmissionComplete, channel, 0);
  }

  void complete(std::uint32_t channel, Duration now) {
    ChannelState& ch = channels_[channel];
    const std::uint32_t slot = ch.queue.front();
    ch.queue.pop_front();
    ch.busy = false;
    InFlight& f = slots_[slot];
    const Channel& c = topo_.channels()[channel];
    if (in_.record_hops) f.record.hops.back().tx_end = now;
    f.record.link_bytes.emplace_back(channel, f.packet.size);
    result_.channel_bytes[channel] += f.packet.size;
    push(now + topo_.prop_delay(c), EventKind::kArrivalAtNode, slot, 0, c.to);
    if (!ch.queue.empty()) start(channel, now);
  }

  void arrive(const Event& ev) {
    const std::uint32_t slot = ev.a;
    InFlight& f = slots_[slot];
    const NodeId& node = ev.node;
    const net::Node& info = topo_.node(node);

    if (info.kind.type == NodeType::kProgrammableSwitch) {
      auto sw = in_.switches ? in_.switches->find(node)
                             : std::map<NodeId, dataplane::SwitchState>::const_iterator{};
      if (in_.switches == nullptr || sw == in_.switches->end()) {
        drop(f, node, "switch has no state");
        return;
      }
      std::vector<Emission> out = sw->second.process(f.packet);
      if (out.empty()) {
        drop(f, node, "no matching entry");
        return;
      }
      // One emission per packet: actions neither replicate nor fan out.
      Emission& e = out.front();
      f.packet.size = e.packet.size;
      depart(slot, node, ev.time, ev.time + e.extra_delay, e.entry_tag,
             e.transcoded, &e.next_hop);
      return;
    }

    if (f.packet.dst != node) {
      drop(f, node, "end node is not the destination");
      return;
    }
    if (f.packet.final_dst && *f.packet.final_dst != node) {
      auto fn = in_.relay_functions.find(node);
      if (fn == in_.relay_functions.end()) {
        drop(f, node, "relay has no function");
        return;
      }
      const Duration delay = fn->second.per_packet_delay + info.kind.proc_delay;
      f.packet.size = dataplane::scaled_size(f.packet.size, fn->second.ratio);
      f.packet.dst = *f.packet.final_dst;
      f.packet.final_dst.reset();
      depart(slot, node, ev.time, ev.time + delay, std::nullopt,
             fn->second.ratio < 1.0);
      return;
    }

    f.packet.provenance.emplace_back(node, ev.time);
    if (in_.record_hops) {
      HopRecord h;
      h.node = node;
      h.arrived = ev.time;
      h.ready = ev.time;
      h.tx_start = ev.time;
      h.tx_end = ev.time;
      f.record.hops.push_back(std::move(h));
    }
    f.record.received_at = ev.time;
    f.record.bytes_delivered = f.packet.size;
    f.done = true;
    result_.counters[f.packet.tag].delivered++;
    result_.last_delivery = std::max(result_.last_delivery, ev.time);
    result_.trace.push_back(std::move(f.record));
    release(f);
  }

  void drop(InFlight& f, const NodeId& node, std::string reason) {
    f.done = true;
    result_.counters[f.packet.tag].dropped++;
    result_.drops.push_back(DropRecord{node, f.packet.tag, f.record.stream_id,
                                       f.record.dst, f.record.seq,
                                       std::move(reason)});
    release(f);
  }

  const SimInput& in_;
  const Topology& topo_;
  std::vector<ChannelState> channels_;
  std::vector<InFlight> slots_;
  std::vector<std::uint32_t> free_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
  std::uint64_t order_ = 0;
  std::map<Channel, std::optional<NodeId>> egress_cache_;
  SimResult result_;
};

}  // namespace

SimResult run(const SimInput& input) {
  if (input.topology == nullptr) {
    throw Error(ErrorCode::kConfig, "simulation needs a topology");
  }
  if (input.duration_limit.count() <= 0) {
    throw Error(ErrorCode::kConfig, "duration limit must be positive");
  }
  Engine engine(input);
  return engine.run();
}

}  // namespace holoslice::sim
