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

#include "control/network.hpp"

#include <algorithm>

namespace holoslice::control {

Network::Network(std::shared_ptr<const net::Topology> topology)
    : topology_(std::move(topology)) {
  if (!topology_) {
    throw Error(ErrorCode::kConfig, "network needs a topology");
  }
  for (const auto& n : topology_->nodes()) {
    if (n.kind.type != net::NodeType::kProgrammableSwitch) continue;
    switches_.emplace(n.id, dataplane::SwitchState(n.id, n.kind.cpu_capacity,
                                                   n.kind.pipeline_delay));
  }
  bytes_carried_.assign(topology_->channels().size(), 0);
  utilization_.assign(topology_->channels().size(), 0.0);
}

dataplane::SwitchState& Network::switch_state(const NodeId& node) {
  auto it = switches_.find(node);
  if (it == switches_.end()) {
    throw Error(ErrorCode::kInvalidTarget,
                "'" + node + "' is not a programmable switch");
  }
  return it->second;
}

const dataplane::SwitchState& Network::switch_state(const NodeId& node) const {
  return const_cast<Network*>(this)->switch_state(node);
}

void Network::reserve(std::span<const net::Reservation> reservations) {
  for (const auto& [channel, bps] : reservations) {
    if (!topology_->channel_index(channel)) {
      throw Error(ErrorCode::kUnknownNode,
                  "reservation on unknown channel " + to_string(channel));
    }
  }
  for (const auto& [channel, bps] : reservations) reserved_[channel] += bps;
}

void Network::release(std::span<const net::Reservation> reservations) {
  for (const auto& [channel, bps] : reservations) {
    auto it = reserved_.find(channel);
    if (it == reserved_.end() || it->second < bps) {
      throw Error(ErrorCode::kInternal,
                  "release of unreserved bandwidth on " + to_string(channel));
    }
    it->second -= bps;
    if (it->second == 0) reserved_.erase(it);
  }
}

void Network::record_usage(std::span<const std::uint64_t> channel_bytes,
                           Duration span) {
  const auto& channels = topology_->channels();
  const double seconds = to_seconds(span);
  for (std::size_t i = 0; i < channels.size() && i < channel_bytes.size();
       ++i) {
    bytes_carried_[i] += channel_bytes[i];
    double u = 0.0;
    if (seconds > 0.0) {
      u = static_cast<double>(channel_bytes[i]) * 8.0 / seconds /
          static_cast<double>(topology_->capacity(channels[i]));
    }
    utilization_[i] = std::clamp(u, 0.0, 1.0);
  }
}

}  // namespace holoslice::control
