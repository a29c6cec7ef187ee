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

#include "control/slice_json.hpp"

#include <cmath>

namespace holoslice::control {

using nlohmann::json;

namespace {

Bandwidth parse_bandwidth(const json& doc) {
  double bps = 0.0;
  if (doc.contains("bandwidth_bps")) {
    bps = doc.at("bandwidth_bps").get<double>();
  } else if (doc.contains("bandwidth_mbps")) {
    bps = doc.at("bandwidth_mbps").get<double>() * 1e6;
  } else {
    throw Error(ErrorCode::kParse, "slice request: missing bandwidth_bps");
  }
  if (!(bps > 0.0) || !std::isfinite(bps)) {
    throw Error(ErrorCode::kInvalidArgument,
                "slice request: bandwidth must be > 0");
  }
  return static_cast<Bandwidth>(std::llround(bps));
}

net::PathSpec path_from(const json& j) {
  return net::PathSpec{j.get<std::vector<NodeId>>()};
}

}  // namespace

SliceRequest slice_request_from_json(const json& doc) {
  try {
    if (!doc.is_object()) {
      throw Error(ErrorCode::kParse, "slice request must be a JSON object");
    }
    SliceRequest r;
    r.bandwidth = parse_bandwidth(doc);
    r.latency_bound = from_millis(doc.value("latency_bound_ms", 0.0));
    r.attendees = doc.at("attendees").get<std::vector<NodeId>>();
    r.max_attendees = doc.value(
        "max_attendees", static_cast<std::uint32_t>(r.attendees.size()));
    r.source = doc.at("source").get<std::string>();
    r.inc_enabled = doc.value("inc_enabled", false);
    if (doc.contains("inc_function") && !doc.at("inc_function").is_null()) {
      r.inc_function = doc.at("inc_function").get<std::string>();
    }
    if (doc.contains("placement")) {
      const json& p = doc.at("placement");
      if (p.is_string()) {
        r.placement.kind = parse_placement(p.get<std::string>());
      } else {
        r.placement.kind = parse_placement(p.at("strategy").get<std::string>());
        r.placement.nodes = p.value("nodes", std::vector<NodeId>{});
      }
    }
    if (doc.contains("relay") && !doc.at("relay").is_null()) {
      r.relay = doc.at("relay").get<std::string>();
    }
    if (doc.contains("route_hints")) {
      for (const auto& [end, hops] : doc.at("route_hints").items()) {
        r.route_hints[end] = path_from(hops);
      }
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("slice request: ") + e.what());
  }
}

json to_json(const SliceRequest& r) {
  json doc{{"bandwidth_bps", r.bandwidth},
           {"latency_bound_ms", to_millis(r.latency_bound)},
           {"max_attendees", r.max_attendees},
           {"attendees", r.attendees},
           {"source", r.source},
           {"inc_enabled", r.inc_enabled},
           {"inc_function", r.inc_function ? json(*r.inc_function) : json()},
           {"placement",
            {{"strategy", to_string(r.placement.kind)},
             {"nodes", r.placement.nodes}}},
           {"relay", r.relay ? json(*r.relay) : json()}};
  json hints = json::object();
  for (const auto& [end, path] : r.route_hints) hints[end] = path.hops;
  doc["route_hints"] = hints;
  return doc;
}

SliceUpdate slice_update_from_json(const json& doc) {
  try {
    if (!doc.is_object()) {
      throw Error(ErrorCode::kParse, "slice update must be a JSON object");
    }
    SliceUpdate u;
    if (doc.contains("bandwidth_bps") || doc.contains("bandwidth_mbps")) {
      u.bandwidth = parse_bandwidth(doc);
    }
    if (doc.contains("attendees")) {
      u.attendees = doc.at("attendees").get<std::vector<NodeId>>();
    }
    if (!u.bandwidth && !u.attendees) {
      throw Error(ErrorCode::kInvalidArgument,
                  "slice update needs bandwidth or attendees");
    }
    return u;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("slice update: ") + e.what());
  }
}

json to_json(const SliceRecord& rec) {
  json paths = json::object();
  for (const auto& [dst, path] : rec.embedding.paths) paths[dst] = path.hops;
  json reservations = json::array();
  for (const auto& [c, bps] : rec.embedding.reservations) {
    reservations.push_back({{"channel", to_string(c)}, {"bps", bps}});
  }
  json placements = json::array();
  for (const auto& pl : rec.placements) {
    placements.push_back({{"node", pl.node},
                          {"extern", pl.ext.id},
                          {"serves", pl.serves},
                          {"cpu_charge", pl.cpu_charge}});
  }
  json steps = json::array();
  for (const auto& s : rec.creation_steps) {
    steps.push_back({{"name", s.name}, {"cost_ms", to_millis(s.cost)}});
  }
  return json{
      {"schema", kSliceSchema},
      {"id", rec.id},
      {"tag", to_string(rec.tag)},
      {"state", to_string(rec.state)},
      {"revision", rec.revision},
      {"request", to_json(rec.request)},
      {"relay_path",
       rec.embedding.relay_path ? json(rec.embedding.relay_path->hops) : json()},
      {"paths", paths},
      {"reservations", reservations},
      {"program", rec.program ? json(*rec.program) : json()},
      {"placements", placements},
      {"rules", rec.rules.size()},
      {"creation_steps", steps},
      {"creation_time_ms", to_millis(rec.creation_time())},
  };
}

}  // namespace holoslice::control
