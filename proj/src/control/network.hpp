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

#ifndef HOLOSLICE_CONTROL_NETWORK_HPP_
#define HOLOSLICE_CONTROL_NETWORK_HPP_

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "dataplane/switch_state.hpp"
#include "net/topology.hpp"

namespace holoslice::control {

// Live infrastructure state shared by the adapter backends, the slice engine
// and the simulator: per-switch dataplane state, the bandwidth reservation
// book, and traffic counters fed back from simulation runs.
class Network {
 public:
  explicit Network(std::shared_ptr<const net::Topology> topology);

  const net::Topology& topology() const { return *topology_; }
  std::shared_ptr<const net::Topology> topology_ptr() const {
    return topology_;
  }

  const std::map<NodeId, dataplane::SwitchState>& switches() const {
    return switches_;
  }
  // Throws kInvalidTarget when `node` is not a programmable switch.
  dataplane::SwitchState& switch_state(const NodeId& node);
  const dataplane::SwitchState& switch_state(const NodeId& node) const;

  // Bookkeeping only; nothing polices reserved rates in the dataplane.
  void reserve(std::span<const net::Reservation> reservations);
  void release(std::span<const net::Reservation> reservations);
  const net::ChannelBandwidth& reserved() const { return reserved_; }

  // Accumulates bytes observed by a simulation run over `span`.
  void record_usage(std::span<const std::uint64_t> channel_bytes,
                    Duration span);
  const std::vector<std::uint64_t>& bytes_carried() const {
    return bytes_carried_;
  }
  // Utilisation of the most recent run per channel, in [0, 1].
  const std::vector<double>& utilization() const { return utilization_; }

 private:
  std::shared_ptr<const net::Topology> topology_;
  std::map<NodeId, dataplane::SwitchState> switches_;
  net::ChannelBandwidth reserved_;
  std::vector<std::uint64_t> bytes_carried_;
  std::vector<double> utilization_;
};

}  // namespace holoslice::control

#endif  // HOLOSLICE_CONTROL_NETWORK_HPP_
