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

#include "control/slice_engine.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace holoslice::control {

using dataplane::ExternSpec;
using dataplane::MatchKey;
using dataplane::TableEntry;
using net::PathSpec;
using net::Topology;

const char* to_string(PlacementKind kind) {
  switch (kind) {
    case PlacementKind::kNearSource: return "near_source";
    case PlacementKind::kNearAudience: return "near_audience";
    case PlacementKind::kExplicit: return "explicit";
    case PlacementKind::kGreedyMinLoad: return "greedy_min_load";
  }
  return "unknown";
}

PlacementKind parse_placement(const std::string& name) {
  for (auto k : {PlacementKind::kNearSource, PlacementKind::kNearAudience,
                 PlacementKind::kExplicit, PlacementKind::kGreedyMinLoad}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown placement strategy '" + name + "'");
}

const char* to_string(SliceState state) {
  switch (state) {
    case SliceState::kDesigned: return "designed";
    case SliceState::kActive: return "active";
    case SliceState::kDecommissioned: return "decommissioned";
  }
  return "unknown";
}

Duration SliceRecord::creation_time() const {
  Duration total{0};
  for (const auto& s : creation_steps) total += s.cost;
  return total;
}

void SliceRequest::validate(const Topology& topo) const {
  auto bad = [](const std::string& why) {
    throw Error(ErrorCode::kInvalidArgument, "slice request: " + why);
  };
  if (bandwidth == 0) bad("bandwidth must be > 0");
  if (latency_bound.count() < 0) bad("latency_bound must be >= 0");
  if (attendees.empty()) bad("attendee_locations must be non-empty");
  if (attendees.size() > max_attendees) {
    bad("more attendees than max_attendees");
  }
  const net::Node& src = topo.node(source);
  if (src.kind.type == net::NodeType::kProgrammableSwitch) {
    bad("source must be an end node, not switch '" + source + "'");
  }
  std::set<NodeId> seen;
  for (const auto& a : attendees) {
    if (topo.node(a).kind.type == net::NodeType::kProgrammableSwitch) {
      bad("attendee '" + a + "' is a switch");
    }
    if (a == source) bad("attendee '" + a + "' is the source");
    if (!seen.insert(a).second) bad("attendee '" + a + "' listed twice");
  }
  if (relay) {
    if (topo.node(*relay).kind.type != net::NodeType::kEdgeServer) {
      bad("relay '" + *relay + "' is not an edge server");
    }
    if (seen.count(*relay)) bad("relay is also an attendee");
    if (inc_enabled) bad("an edge relay cannot be combined with INC");
  }
  if (inc_enabled && (!inc_function || inc_function->empty())) {
    bad("inc_enabled requires inc_function");
  }
  if (placement.kind == PlacementKind::kExplicit) {
    if (placement.nodes.empty()) bad("explicit placement lists no switches");
    for (const auto& n : placement.nodes) {
      if (!topo.is_switch(n)) {
        bad("explicit placement '" + n + "' is not a programmable switch");
      }
    }
  }
  for (const auto& [end, path] : route_hints) {
    if (end != relay.value_or(NodeId{}) && !seen.count(end)) {
      bad("route hint for '" + end + "' matches no segment");
    }
    topo.validate_path(path);
  }
}

namespace {

// Estimated one-packet latency along a path: propagation, serialization of
// one MTU-sized packet, and switch pipelines.
Duration path_estimate(const Topology& topo, const PathSpec& path,
                       std::uint32_t mtu) {
  Duration total{0};
  for (const auto& c : path.channels()) {
    total += topo.prop_delay(c) + serialization_delay(mtu, topo.capacity(c));
  }
  for (const auto& hop : path.hops) {
    if (topo.is_switch(hop)) total += topo.node(hop).kind.pipeline_delay;
  }
  return total;
}

}  // namespace

Embedding embed(const SliceRequest& request, const Topology& topo,
                const StatsSnapshot& stats) {
  std::set<Channel> used;
  auto residual = [&](const Channel& c) -> Bandwidth {
    const Bandwidth cap = topo.capacity(c);
    auto it = stats.link_stats.find(c);
    const Bandwidth reserved = it == stats.link_stats.end() ? 0 : it->second.reserved;
    return reserved >= cap ? 0 : cap - reserved;
  };
  auto usable = [&](const Channel& c) {
    return used.count(c) != 0 || residual(c) >= request.bandwidth;
  };
  auto segment = [&](const NodeId& from, const NodeId& to) -> PathSpec {
    PathSpec path;
    auto hint = request.route_hints.find(to);
    if (hint != request.route_hints.end()) {
      path = hint->second;
      topo.validate_path(path);
      if (path.hops.front() != from || path.hops.back() != to) {
        throw Error(ErrorCode::kInvalidArgument,
                    "route hint " + net::to_string(path) + " does not join " +
                        from + " and " + to);
      }
      for (std::size_t i = 1; i + 1 < path.hops.size(); ++i) {
        if (!topo.is_switch(path.hops[i])) {
          throw Error(ErrorCode::kInvalidArgument,
                      "route hint transits end node '" + path.hops[i] + "'");
        }
      }
      for (const auto& c : path.channels()) {
        if (!usable(c)) {
          throw Error(ErrorCode::kInfeasible,
                      "pinned route needs " + std::to_string(request.bandwidth) +
                          " bit/s on " + to_string(c) + ", residual " +
                          std::to_string(residual(c)));
        }
      }
    } else {
      try {
        path = net::shortest_path(topo, from, to, usable);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoPath) throw;
        throw Error(ErrorCode::kInfeasible,
                    "no path from " + from + " to " + to + " with " +
                        std::to_string(request.bandwidth) +
                        " bit/s residual capacity");
      }
    }
    for (const auto& c : path.channels()) used.insert(c);
    return path;
  };

  Embedding out;
  NodeId start = request.source;
  if (request.relay) {
    out.relay_path = segment(request.source, *request.relay);
    start = *request.relay;
  }
  for (const auto& a : request.attendees) out.paths[a] = segment(start, a);
  for (const auto& c : used) out.reservations.emplace_back(c, request.bandwidth);
  return out;
}

std::map<NodeId, NodeId> transcode_points(
    const std::vector<NodeId>& placements,
    const std::map<NodeId, PathSpec>& paths) {
  std::map<NodeId, NodeId> out;
  for (const auto& [dst, path] : paths) {
    for (auto it = path.hops.rbegin(); it != path.hops.rend(); ++it) {
      if (std::find(placements.begin(), placements.end(), *it) !=
          placements.end()) {
        out[dst] = *it;
        break;
      }
    }
  }
  return out;
}

double static_link_load(const std::map<NodeId, PathSpec>& paths,
                        const std::map<NodeId, NodeId>& transcode_at,
                        double ratio) {
  double total = 0.0;
  for (const auto& [dst, path] : paths) {
    auto point = transcode_at.find(dst);
    double factor = 1.0;
    for (std::size_t i = 0; i + 1 < path.hops.size(); ++i) {
      if (point != transcode_at.end() && path.hops[i] == point->second) {
        factor = ratio;
      }
      total += factor;
    }
  }
  return total;
}

namespace {

// Streams served per placement node under the transcode_points rule.
std::map<NodeId, std::size_t> streams_per_node(
    const std::vector<NodeId>& placements,
    const std::map<NodeId, PathSpec>& paths) {
  std::map<NodeId, std::size_t> out;
  for (const auto& [dst, node] : transcode_points(placements, paths)) {
    out[node]++;
  }
  return out;
}

bool fits(const std::vector<NodeId>& placements,
          const std::map<NodeId, PathSpec>& paths,
          const std::map<NodeId, SwitchStats>& switches, const ExternSpec& spec,
          double pps_per_stream) {
  for (const auto& [node, streams] : streams_per_node(placements, paths)) {
    auto it = switches.find(node);
    if (it == switches.end()) return false;
    const double need = spec.cpu_cost * pps_per_stream * static_cast<double>(streams);
    if (it->second.cpu_used + need > it->second.cpu_capacity + 1e-9) return false;
  }
  return true;
}

std::vector<NodeId> switches_on(const PathSpec& path, const Topology& topo) {
  std::vector<NodeId> out;
  for (const auto& hop : path.hops) {
    if (topo.is_switch(hop)) out.push_back(hop);
  }
  return out;
}

[[noreturn]] void no_placement(const std::string& why) {
  throw Error(ErrorCode::kNoFeasiblePlacement, "INC placement: " + why);
}

}  // namespace

std::vector<NodeId> place_inc(const PlacementStrategy& strategy,
                              const std::map<NodeId, PathSpec>& paths,
                              const std::map<NodeId, SwitchStats>& switches,
                              const ExternSpec& spec, double pps_per_stream,
                              const Topology& topo) {
  if (paths.empty()) no_placement("slice has no paths");

  switch (strategy.kind) {
    case PlacementKind::kNearSource: {
      // Walk the first path from the source; take the first switch every
      // other path also crosses.
      const PathSpec& first = paths.begin()->second;
      for (const auto& node : switches_on(first, topo)) {
        bool common = std::all_of(paths.begin(), paths.end(), [&](const auto& p) {
          return p.second.contains(node);
        });
        if (!common) continue;
        if (fits({node}, paths, switches, spec, pps_per_stream)) return {node};
      }
      no_placement("no common switch with CPU headroom");
    }

    case PlacementKind::kNearAudience: {
      std::vector<NodeId> chosen;
      for (const auto& [dst, path] : paths) {
        auto candidates = switches_on(path, topo);
        bool placed = false;
        for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
          if (std::find(chosen.begin(), chosen.end(), *it) != chosen.end()) {
            placed = true;
            break;
          }
          std::vector<NodeId> trial = chosen;
          trial.push_back(*it);
          if (fits(trial, paths, switches, spec, pps_per_stream)) {
            chosen = std::move(trial);
            placed = true;
            break;
          }
        }
        if (!placed) no_placement("no switch near '" + dst + "' has headroom");
      }
      return chosen;
    }

    case PlacementKind::kExplicit: {
      if (strategy.nodes.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "explicit placement is empty");
      }
      for (const auto& node : strategy.nodes) {
        if (!topo.is_switch(node)) {
          throw Error(ErrorCode::kInvalidArgument,
                      "'" + node + "' is not a programmable switch");
        }
        bool on_path = std::any_of(paths.begin(), paths.end(), [&](const auto& p) {
          return p.second.contains(node);
        });
        if (!on_path) {
          throw Error(ErrorCode::kInvalidArgument,
                      "'" + node + "' is on no embedded path");
        }
      }
      for (const auto& [dst, path] : paths) {
        auto n = std::count_if(strategy.nodes.begin(), strategy.nodes.end(),
                               [&](const NodeId& x) { return path.contains(x); });
        if (n > 1) {
          throw Error(ErrorCode::kInvalidArgument,
                      "path to '" + dst + "' holds more than one placement");
        }
      }
      if (!fits(strategy.nodes, paths, switches, spec, pps_per_stream)) {
        no_placement("explicit switches lack CPU headroom");
      }
      return strategy.nodes;
    }

    case PlacementKind::kGreedyMinLoad: {
      std::set<NodeId> candidates;
      for (const auto& [dst, path] : paths) {
        for (const auto& n : switches_on(path, topo)) candidates.insert(n);
      }
      std::optional<NodeId> best;
      double best_load = 0.0;
      for (const auto& node : candidates) {  // lexicographic order
        if (!fits({node}, paths, switches, spec, pps_per_stream)) continue;
        const double load =
            static_link_load(paths, transcode_points({node}, paths), spec.ratio);
        if (!best || load < best_load) {
          best = node;
          best_load = load;
        }
      }
      if (!best) no_placement("every on-path switch lacks CPU headroom");
      return {*best};
    }
  }
  no_placement("unknown strategy");
}

SliceEngine::SliceEngine(Network& network, Adapter& adapter, IncCatalog catalog,
                         EngineConfig config)
    : network_(network),
      adapter_(adapter),
      catalog_(std::move(catalog)),
      config_(config) {
  if (&adapter_.network() != &network_) {
    throw Error(ErrorCode::kConfig, "adapter is attached to another network");
  }
  if (config_.mtu == 0) {
    throw Error(ErrorCode::kConfig, "engine mtu must be positive");
  }
}

double SliceEngine::pps_per_stream(Bandwidth bandwidth) const {
  return static_cast<double>(bandwidth) / (8.0 * config_.mtu);
}

SliceEngine::Plan SliceEngine::plan(const SliceRequest& request,
                                    const StatsSnapshot& stats,
                                    std::vector<CreationStep>* steps) const {
  const Topology& topo = network_.topology();
  Plan p;
  p.embedding = embed(request, topo, stats);
  if (request.latency_bound.count() > 0) {
    for (const auto& [dst, path] : p.embedding.paths) {
      Duration estimate = path_estimate(topo, path, config_.mtu);
      if (p.embedding.relay_path) {
        estimate += path_estimate(topo, *p.embedding.relay_path, config_.mtu);
      }
      if (estimate > request.latency_bound) {
        throw Error(ErrorCode::kInfeasible,
                    "path to '" + dst + "' cannot meet the latency bound");
      }
    }
  }
  steps->push_back({"embed", config_.costs.embed});
  if (!request.inc_enabled) return p;

  p.program = catalog_.select(*request.inc_function);
  steps->push_back({"select_program", config_.costs.select_program});

  p.placement_nodes =
      place_inc(request.placement, p.embedding.paths, stats.switch_stats,
                p.program->spec, pps_per_stream(request.bandwidth), topo);
  p.transcode_at = transcode_points(p.placement_nodes, p.embedding.paths);
  steps->push_back({"place_inc", config_.costs.place});
  return p;
}

std::pair<Duration, Duration> SliceEngine::install(const Plan& plan,
                                                   SliceRecord& rec) {
  const Topology& topo = network_.topology();
  Duration entry_cost{0};
  Duration extern_cost{0};
  rec.placements.clear();
  rec.rules.clear();
  try {
    std::map<NodeId, dataplane::ExternRef> refs;
    for (const auto& node : plan.placement_nodes) {
      Placement pl;
      pl.node = node;
      for (const auto& [dst, at] : plan.transcode_at) {
        if (at == node) pl.serves.push_back(dst);
      }
      const double pps = pps_per_stream(rec.request.bandwidth) *
                         static_cast<double>(pl.serves.size());
      Ack ack = adapter_.apply(InstallExtern{node, plan.program->spec, pps});
      extern_cost += ack.cost;
      pl.ext = *ack.ext;
      pl.cpu_charge = plan.program->spec.cpu_cost * pps;
      refs[node] = pl.ext;
      rec.placements.push_back(std::move(pl));
    }

    auto program_path = [&](const PathSpec& path, const NodeId& key,
                            const std::optional<NodeId>& transcode_at) {
      for (std::size_t i = 0; i + 1 < path.hops.size(); ++i) {
        const NodeId& hop = path.hops[i];
        if (!topo.is_switch(hop)) continue;
        TableEntry entry;
        entry.match = MatchKey{rec.tag, key};
        if (transcode_at && *transcode_at == hop) {
          entry.action = dataplane::TranscodeThenForward{refs.at(hop),
                                                         path.hops[i + 1]};
        } else {
          entry.action = dataplane::Forward{path.hops[i + 1]};
        }
        Ack ack = adapter_.apply(InstallEntry{hop, entry});
        entry_cost += ack.cost;
        rec.rules.push_back(InstalledRule{hop, entry.match});
      }
    };
    if (plan.embedding.relay_path) {
      program_path(*plan.embedding.relay_path, *rec.request.relay, std::nullopt);
    }
    for (const auto& [dst, path] : plan.embedding.paths) {
      auto at = plan.transcode_at.find(dst);
      program_path(path, dst,
                   at == plan.transcode_at.end() ? std::nullopt
                                                 : std::optional<NodeId>(at->second));
    }
  } catch (...) {
    uninstall(rec);
    throw;
  }
  return {entry_cost, extern_cost};
}

void SliceEngine::uninstall(SliceRecord& rec) {
  for (auto it = rec.rules.rbegin(); it != rec.rules.rend(); ++it) {
    adapter_.apply(RemoveEntry{it->node, it->match});
  }
  rec.rules.clear();
  for (const auto& pl : rec.placements) {
    adapter_.apply(RemoveExtern{pl.node, pl.ext});
  }
  rec.placements.clear();
}

SliceTag SliceEngine::allocate_tag() const {
  std::set<std::uint16_t> taken;
  for (const auto& [id, rec] : slices_) {
    if (rec.state == SliceState::kActive) taken.insert(rec.tag.ethertype);
  }
  for (std::uint32_t v = kFirstSliceTag.ethertype; v <= 0xFFFF; ++v) {
    if (!taken.count(static_cast<std::uint16_t>(v))) {
      return SliceTag{static_cast<std::uint16_t>(v)};
    }
  }
  throw Error(ErrorCode::kInfeasible, "slice tag space exhausted");
}

SliceRecord SliceEngine::create_slice(const SliceRequest& request) {
  std::unique_lock lock(mu_);
  std::vector<CreationStep> steps;

  request.validate(network_.topology());
  steps.push_back({"validate_request", config_.costs.validate});

  StatsSnapshot stats = adapter_.collect();
  steps.push_back({"collect_stats", config_.costs.collect_stats});

  Plan p = plan(request, stats, &steps);

  SliceRecord rec;
  rec.request = request;
  rec.tag = allocate_tag();
  rec.embedding = p.embedding;
  rec.program = p.program ? std::optional<std::string>(p.program->name)
                          : std::nullopt;
  auto [entry_cost, extern_cost] = install(p, rec);
  network_.reserve(rec.embedding.reservations);

  for (auto& s : steps) {
    if (s.name == "embed") s.cost += entry_cost;
    if (s.name == "place_inc") s.cost += extern_cost;
  }
  rec.creation_steps = std::move(steps);
  rec.id = next_id_++;
  rec.state = SliceState::kActive;
  slices_[rec.id] = rec;
  return rec;
}

SliceRecord SliceEngine::update_slice(SliceId id, const SliceUpdate& update) {
  std::unique_lock lock(mu_);
  auto it = slices_.find(id);
  if (it == slices_.end()) {
    throw Error(ErrorCode::kUnknownSlice, "no slice " + std::to_string(id));
  }
  SliceRecord& current = it->second;
  if (current.state != SliceState::kActive) {
    throw Error(ErrorCode::kSliceNotActive,
                "slice " + std::to_string(id) + " is not active");
  }

  SliceRequest request = current.request;
  if (update.bandwidth) request.bandwidth = *update.bandwidth;
  if (update.attendees) {
    request.attendees = *update.attendees;
    request.max_attendees = std::max<std::uint32_t>(
        request.max_attendees,
        static_cast<std::uint32_t>(request.attendees.size()));
    for (auto h = request.route_hints.begin(); h != request.route_hints.end();) {
      const bool keep = h->first == request.relay.value_or(NodeId{}) ||
                        std::find(request.attendees.begin(),
                                  request.attendees.end(),
                                  h->first) != request.attendees.end();
      h = keep ? std::next(h) : request.route_hints.erase(h);
    }
  }
  request.validate(network_.topology());

  // Plan against the network as if this slice were absent.
  StatsSnapshot stats = adapter_.collect();
  for (const auto& [c, bps] : current.embedding.reservations) {
    stats.link_stats[c].reserved -= bps;
  }
  for (const auto& pl : current.placements) {
    stats.switch_stats[pl.node].cpu_used -= pl.cpu_charge;
  }
  std::vector<CreationStep> steps;
  Plan p = plan(request, stats, &steps);

  SliceRecord next = current;
  next.request = request;
  next.embedding = p.embedding;
  next.program = p.program ? std::optional<std::string>(p.program->name)
                           : std::nullopt;
  uninstall(current);
  network_.release(current.embedding.reservations);
  try {
    install(p, next);
  } catch (...) {
    // Restore the previous configuration; the plan for it was feasible
    // before, and nothing else changed in between.
    Plan old;
    old.embedding = current.embedding;
    if (current.program) old.program = catalog_.select(*current.program);
    std::vector<NodeId> nodes;
    for (const auto& pl : current.placements) nodes.push_back(pl.node);
    old.placement_nodes = nodes;
    old.transcode_at = transcode_points(nodes, current.embedding.paths);
    install(old, current);
    network_.reserve(current.embedding.reservations);
    throw;
  }
  network_.reserve(next.embedding.reservations);
  next.revision++;
  current = next;
  return current;
}

SliceRecord SliceEngine::delete_slice(SliceId id) {
  std::unique_lock lock(mu_);
  auto it = slices_.find(id);
  if (it == slices_.end()) {
    throw Error(ErrorCode::kUnknownSlice, "no slice " + std::to_string(id));
  }
  SliceRecord& rec = it->second;
  if (rec.state != SliceState::kActive) {
    throw Error(ErrorCode::kSliceNotActive,
                "slice " + std::to_string(id) + " is not active");
  }
  if (!adapter_.available()) {
    throw Error(ErrorCode::kBackendUnavailable, "adapter backend unavailable");
  }
  SliceRecord released = rec;
  uninstall(rec);
  network_.release(rec.embedding.reservations);
  rec.state = SliceState::kDecommissioned;
  released.state = SliceState::kDecommissioned;
  return released;
}

std::optional<SliceRecord> SliceEngine::get_slice(SliceId id) const {
  std::shared_lock lock(mu_);
  auto it = slices_.find(id);
  if (it == slices_.end()) return std::nullopt;
  return it->second;
}

std::vector<SliceRecord> SliceEngine::list_slices() const {
  std::shared_lock lock(mu_);
  std::vector<SliceRecord> out;
  for (const auto& [id, rec] : slices_) out.push_back(rec);
  return out;
}

StatsSnapshot SliceEngine::collect_stats() {
  std::unique_lock lock(mu_);
  return adapter_.collect();
}

net::ChannelBandwidth SliceEngine::ledger() const {
  std::shared_lock lock(mu_);
  net::ChannelBandwidth out;
  for (const auto& [id, rec] : slices_) {
    if (rec.state != SliceState::kActive) continue;
    for (const auto& [c, bps] : rec.embedding.reservations) out[c] += bps;
  }
  return out;
}

}  // namespace holoslice::control
