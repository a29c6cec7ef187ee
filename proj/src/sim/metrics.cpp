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

#include "sim/metrics.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <tuple>

namespace holoslice::sim {

using nlohmann::json;

namespace {

std::vector<const PacketRecord*> packets_for(std::span<const PacketRecord> trace,
                                             const NodeId& dst) {
  std::vector<const PacketRecord*> out;
  for (const auto& r : trace) {
    if (r.dst == dst) out.push_back(&r);
  }
  std::sort(out.begin(), out.end(), [](const auto* x, const auto* y) {
    return std::tie(x->stream_id, x->seq) < std::tie(y->stream_id, y->seq);
  });
  return out;
}

std::string format_us(Duration d) {
  const std::int64_t ns = d.count();
  char buf[48];
  const long long mag = std::llabs(static_cast<long long>(ns));
  std::snprintf(buf, sizeof(buf), "%s%lld.%03lld", ns < 0 ? "-" : "",
                mag / 1000, mag % 1000);
  return buf;
}

}  // namespace

double avg_latency(std::span<const PacketRecord> trace, const NodeId& dst) {
  std::int64_t total = 0;
  std::uint64_t n = 0;
  for (const auto& r : trace) {
    if (r.dst != dst) continue;
    total += r.latency().count();
    ++n;
  }
  if (n == 0) {
    throw Error(ErrorCode::kNoPackets, "no packets delivered to '" + dst + "'");
  }
  return static_cast<double>(total) / static_cast<double>(n) * 1e-9;
}

double jitter(std::span<const PacketRecord> trace, const NodeId& dst) {
  auto pkts = packets_for(trace, dst);
  if (pkts.size() < 2) {
    throw Error(ErrorCode::kInsufficientPackets,
                "jitter needs two packets for '" + dst + "'");
  }
  std::int64_t total = 0;
  for (std::size_t i = 1; i < pkts.size(); ++i) {
    total += std::llabs((pkts[i]->latency() - pkts[i - 1]->latency()).count());
  }
  return static_cast<double>(total) / static_cast<double>(pkts.size() - 1) *
         1e-9;
}

double network_load(std::span<const std::uint64_t> channel_bytes,
                    const net::Topology& topo, Duration span) {
  if (span.count() <= 0) {
    throw Error(ErrorCode::kZeroSpan, "network load needs a positive span");
  }
  long double used_bits = 0;
  long double capacity = 0;
  const auto& channels = topo.channels();
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (!topo.is_fabric_channel(channels[i])) continue;
    capacity += static_cast<long double>(topo.capacity(channels[i]));
    if (i < channel_bytes.size()) {
      used_bits += static_cast<long double>(channel_bytes[i]) * 8;
    }
  }
  if (capacity == 0) return 0.0;
  const long double seconds = static_cast<long double>(span.count()) * 1e-9L;
  return static_cast<double>(used_bits / seconds / capacity);
}

double network_load(std::span<const PacketRecord> trace,
                    const net::Topology& topo, Duration span) {
  std::vector<std::uint64_t> bytes(topo.channels().size(), 0);
  for (const auto& r : trace) {
    for (const auto& [channel, n] : r.link_bytes) bytes.at(channel) += n;
  }
  return network_load(bytes, topo, span);
}

const DestinationMetrics& MetricsReport::at(const NodeId& dst) const {
  for (const auto& m : per_dst) {
    if (m.dst == dst) return m;
  }
  throw Error(ErrorCode::kNoPackets, "report has no destination '" + dst + "'");
}

MetricsReport summarize(const SimResult& result, const net::Topology& topo,
                        std::span<const NodeId> destinations) {
  MetricsReport report;
  for (const NodeId& dst : destinations) {
    DestinationMetrics m;
    m.dst = dst;
    for (const auto& r : result.trace) m.delivered += r.dst == dst ? 1 : 0;
    if (m.delivered > 0) m.avg_latency_s = avg_latency(result.trace, dst);
    if (m.delivered > 1) m.jitter_s = jitter(result.trace, dst);
    report.per_dst.push_back(m);
  }
  for (const auto& [tag, c] : result.counters) {
    report.injected += c.injected;
    report.delivered += c.delivered;
    report.dropped += c.dropped;
  }
  report.span_s = to_seconds(result.span());
  report.network_load = result.span().count() > 0
                            ? network_load(result.channel_bytes, topo,
                                           result.span())
                            : 0.0;
  const auto& channels = topo.channels();
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (result.channel_bytes[i] > 0) {
      report.link_bytes[to_string(channels[i])] = result.channel_bytes[i];
    }
  }
  return report;
}

json to_json(const MetricsReport& report) {
  json per_dst = json::array();
  for (const auto& m : report.per_dst) {
    per_dst.push_back({{"dst", m.dst},
                       {"delivered", m.delivered},
                       {"avg_latency_s", m.avg_latency_s},
                       {"jitter_s", m.jitter_s}});
  }
  const Workload& w = report.workload;
  return json{
      {"schema", kMetricsSchema},
      {"label", report.label},
      {"workload",
       {{"frames", w.frames},
        {"frame_size", w.frame_size},
        {"fps", w.fps},
        {"mtu", w.mtu},
        {"ratio", w.ratio},
        {"transcode_delay_ns", w.transcode_delay.count()}}},
      {"per_dst", per_dst},
      {"network_load", report.network_load},
      {"span_s", report.span_s},
      {"injected", report.injected},
      {"delivered", report.delivered},
      {"dropped", report.dropped},
      {"link_bytes", report.link_bytes},
      {"context", report.context},
  };
}

MetricsReport metrics_from_json(const json& doc) {
  try {
    if (doc.value("schema", std::string()) != kMetricsSchema) {
      throw Error(ErrorCode::kParse, std::string("expected schema ") +
                                         kMetricsSchema);
    }
    MetricsReport r;
    r.label = doc.at("label").get<std::string>();
    const json& w = doc.at("workload");
    r.workload.frames = w.at("frames").get<std::uint32_t>();
    r.workload.frame_size = w.at("frame_size").get<std::uint32_t>();
    r.workload.fps = w.at("fps").get<double>();
    r.workload.mtu = w.at("mtu").get<std::uint32_t>();
    r.workload.ratio = w.at("ratio").get<double>();
    r.workload.transcode_delay =
        Duration(w.at("transcode_delay_ns").get<std::int64_t>());
    for (const auto& m : doc.at("per_dst")) {
      r.per_dst.push_back(DestinationMetrics{
          m.at("dst").get<std::string>(), m.at("delivered").get<std::uint64_t>(),
          m.at("avg_latency_s").get<double>(), m.at("jitter_s").get<double>()});
    }
    r.network_load = doc.at("network_load").get<double>();
    r.span_s = doc.at("span_s").get<double>();
    r.injected = doc.at("injected").get<std::uint64_t>();
    r.delivered = doc.at("delivered").get<std::uint64_t>();
    r.dropped = doc.at("dropped").get<std::uint64_t>();
    r.link_bytes =
        doc.at("link_bytes").get<std::map<std::string, std::uint64_t>>();
    r.context = doc.value("context", json::object());
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("metrics report: ") + e.what());
  }
}

void write_trace_csv(std::ostream& out, std::span<const PacketRecord> trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace) {
    out << r.stream_id << ',' << r.dst << ',' << r.seq << ','
        << format_us(r.sent_at) << ',' << format_us(r.received_at) << ','
        << r.bytes_delivered << '\n';
  }
}

}  // namespace holoslice::sim
