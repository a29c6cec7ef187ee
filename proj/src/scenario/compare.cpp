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

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "scenario/scenario.hpp"

namespace holoslice::scenario {

using nlohmann::json;

namespace {

double safe_ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : 0.0;
  return num / den;
}

const sim::MetricsReport* find(std::span<const sim::MetricsReport> reports,
                               ScenarioName name) {
  for (const auto& r : reports) {
    if (r.label == to_string(name)) return &r;
  }
  return nullptr;
}

void canonical_checks(std::span<const sim::MetricsReport> reports,
                      ComparisonReport& out) {
  const auto* ec1 = find(reports, ScenarioName::kEc1);
  const auto* ec2 = find(reports, ScenarioName::kEc2);
  const auto* hosts = find(reports, ScenarioName::kHosts);
  const auto* inc_aud = find(reports, ScenarioName::kIncAudience);
  const auto* inc_src = find(reports, ScenarioName::kIncSource);
  if (!ec1 || !ec2 || !hosts || !inc_aud || !inc_src) return;

  bool ec1_above_hosts = true;
  bool ec1_highest = true;
  bool inc_source_vs_ec2 = true;
  for (const auto& host : audience()) {
    const double l1 = ec1->at(host).avg_latency_s;
    ec1_above_hosts = ec1_above_hosts && l1 > hosts->at(host).avg_latency_s;
    for (const auto* other : {ec2, hosts, inc_aud, inc_src}) {
      ec1_highest = ec1_highest && l1 > other->at(host).avg_latency_s;
    }
    inc_source_vs_ec2 = inc_source_vs_ec2 && inc_src->at(host).avg_latency_s <=
                                                 ec2->at(host).avg_latency_s;
  }
  bool sequential = true;
  bool jitter_ok = true;
  for (const auto* r : {ec1, ec2, hosts, inc_aud, inc_src}) {
    sequential = sequential &&
                 r->at("host2").avg_latency_s >= r->at("host1").avg_latency_s &&
                 r->at("host4").avg_latency_s >= r->at("host3").avg_latency_s;
    for (const auto& d : r->per_dst) {
      jitter_ok = jitter_ok && d.jitter_s < kJitterBoundS;
    }
  }
  out.checks["ec1_latency_above_hosts"] = ec1_above_hosts;
  out.checks["ec1_latency_highest"] = ec1_highest;
  out.checks["inc_source_latency_le_ec2"] = inc_source_vs_ec2;
  out.checks["sequential_delivery_order"] = sequential;
  out.checks["jitter_below_bound"] = jitter_ok;
  out.checks["inc_source_load_below_half_ec1"] =
      safe_ratio(inc_src->network_load, ec1->network_load) < 0.5;
}

}  // namespace

ComparisonReport compare(std::span<const sim::MetricsReport> reports) {
  if (reports.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "compare needs at least two reports");
  }
  const sim::MetricsReport& base = reports.front();
  for (const auto& r : reports) {
    if (!(r.workload == base.workload)) {
      throw Error(ErrorCode::kWorkloadMismatch,
                  "report '" + r.label + "' was produced under a different "
                  "workload than '" + base.label + "'");
    }
  }

  ComparisonReport out;
  for (const auto& d : base.per_dst) out.destinations.push_back(d.dst);
  for (const auto& r : reports) {
    out.labels.push_back(r.label);
    out.network_load.push_back(r.network_load);
    out.load_ratio.push_back(safe_ratio(r.network_load, base.network_load));
    std::map<NodeId, double> ratios;
    bool jitter_ok = true;
    for (const auto& dst : out.destinations) {
      ratios[dst] =
          safe_ratio(r.at(dst).avg_latency_s, base.at(dst).avg_latency_s);
    }
    for (const auto& d : r.per_dst) jitter_ok = jitter_ok && d.jitter_s < kJitterBoundS;
    out.latency_ratio.push_back(std::move(ratios));
    out.jitter_within_bound.push_back(jitter_ok);
  }

  for (const auto& dst : out.destinations) {
    std::vector<RankedLatency> order;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      order.push_back({i, reports[i].at(dst).avg_latency_s, 0});
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const RankedLatency& a, const RankedLatency& b) {
                       return a.avg_latency_s < b.avg_latency_s;
                     });
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i].rank = (i > 0 && order[i].avg_latency_s ==
                                    order[i - 1].avg_latency_s)
                          ? order[i - 1].rank
                          : i + 1;
    }
    out.latency_order[dst] = std::move(order);
  }
  canonical_checks(reports, out);
  return out;
}

json to_json(const ComparisonReport& report) {
  json scenarios = json::array();
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    scenarios.push_back({{"label", report.labels[i]},
                         {"network_load", report.network_load[i]},
                         {"load_ratio", report.load_ratio[i]},
                         {"latency_ratio", report.latency_ratio[i]},
                         {"jitter_within_bound", report.jitter_within_bound[i]}});
  }
  json order = json::object();
  for (const auto& [dst, ranked] : report.latency_order) {
    json list = json::array();
    for (const auto& r : ranked) {
      list.push_back({{"label", report.labels[r.report]},
                      {"avg_latency_s", r.avg_latency_s},
                      {"rank", r.rank}});
    }
    order[dst] = list;
  }
  return json{{"schema", "holoslice.comparison/v1"},
              {"baseline", report.labels.front()},
              {"destinations", report.destinations},
              {"scenarios", scenarios},
              {"latency_order", order},
              {"jitter_bound_ms", kJitterBoundS * 1e3},
              {"checks", report.checks}};
}

namespace {

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

void row(std::ostringstream& os, const std::string& head,
         const std::vector<std::string>& cells) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%-22s", head.c_str());
  os << buf;
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof(buf), "%14s", c.c_str());
    os << buf;
  }
  os << '\n';
}

}  // namespace

std::string render_table(const ComparisonReport& report,
                         std::span<const sim::MetricsReport> reports) {
  std::ostringstream os;
  row(os, "", report.labels);
  os << "average latency (ms)\n";
  for (const auto& dst : report.destinations) {
    std::vector<std::string> cells;
    for (const auto& r : reports) cells.push_back(fixed(r.at(dst).avg_latency_s * 1e3, 3));
    row(os, "  " + dst, cells);
  }
  os << "jitter (ms)\n";
  for (const auto& dst : report.destinations) {
    std::vector<std::string> cells;
    for (const auto& r : reports) cells.push_back(fixed(r.at(dst).jitter_s * 1e3, 3));
    row(os, "  " + dst, cells);
  }
  std::vector<std::string> load, ratio, bound;
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    load.push_back(fixed(report.network_load[i], 4));
    ratio.push_back(fixed(report.load_ratio[i], 4));
    bound.push_back(report.jitter_within_bound[i] ? "ok" : "EXCEEDED");
  }
  row(os, "network load", load);
  row(os, "load vs " + report.labels.front(), ratio);
  row(os, "jitter < 15 ms", bound);
  if (!report.checks.empty()) {
    os << "checks\n";
    for (const auto& [name, ok] : report.checks) {
      os << "  " << (ok ? "PASS " : "FAIL ") << name << '\n';
    }
  }
  return os.str();
}

}  // namespace holoslice::scenario
