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

#ifndef HOLOSLICE_SIM_METRICS_HPP_
#define HOLOSLICE_SIM_METRICS_HPP_

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "net/topology.hpp"
#include "sim/simulator.hpp"

namespace holoslice::sim {

// Arithmetic mean of (received_at - sent_at) over packets delivered to dst.
// Throws kNoPackets when there are none.
double avg_latency(std::span<const PacketRecord> trace, const NodeId& dst);

// Mean |latency(i+1) - latency(i)| over dst's packets in sequence order.
// Throws kInsufficientPackets with fewer than two packets.
double jitter(std::span<const PacketRecord> trace, const NodeId& dst);

// Mean used bandwidth per fabric channel over mean fabric capacity. Host and
// server attachments are excluded. Throws kZeroSpan when span <= 0.
double network_load(std::span<const PacketRecord> trace,
                    const net::Topology& topo, Duration span);
double network_load(std::span<const std::uint64_t> channel_bytes,
                    const net::Topology& topo, Duration span);

// Workload parameters a report was produced under; compare() refuses to mix
// reports whose workloads differ.
struct Workload {
  std::uint32_t frames = 1000;
  std::uint32_t frame_size = 9000;
  double fps = 30.0;
  std::uint32_t mtu = 1500;
  double ratio = 0.4;
  Duration transcode_delay = from_millis(0.2);

  bool operator==(const Workload&) const = default;
};

struct DestinationMetrics {
  NodeId dst;
  std::uint64_t delivered = 0;
  double avg_latency_s = 0.0;
  double jitter_s = 0.0;

  bool operator==(const DestinationMetrics&) const = default;
};

struct MetricsReport {
  std::string label;
  Workload workload;
  std::vector<DestinationMetrics> per_dst;
  double network_load = 0.0;
  double span_s = 0.0;
  std::uint64_t injected = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::map<std::string, std::uint64_t> link_bytes;  // "A->B" -> bytes
  // Free-form scenario context (transcoding point, slice summary, ...).
  nlohmann::json context = nlohmann::json::object();

  const DestinationMetrics& at(const NodeId& dst) const;
  bool operator==(const MetricsReport&) const = default;
};

// Builds the report for the given destinations, in the order given.
MetricsReport summarize(const SimResult& result, const net::Topology& topo,
                        std::span<const NodeId> destinations);

inline constexpr const char* kMetricsSchema = "holoslice.metrics/v1";
inline constexpr const char* kTraceHeader =
    "stream_id,dst,seq,sent_at_us,received_at_us,bytes";

nlohmann::json to_json(const MetricsReport& report);
MetricsReport metrics_from_json(const nlohmann::json& doc);

// Trace CSV, one row per delivered packet in delivery order. Times are
// microseconds with nanosecond precision.
void write_trace_csv(std::ostream& out, std::span<const PacketRecord> trace);

}  // namespace holoslice::sim

#endif  // HOLOSLICE_SIM_METRICS_HPP_
